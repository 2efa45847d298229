#ifndef GKDIM_GKDIM_HPP
#define GKDIM_GKDIM_HPP

// Library umbrella. The JSON front end lives in <gkdim/cli.hpp> and pulls in
// the vendored CLI11 and nlohmann/json headers.

#include <gkdim/exactnum.hpp>
#include <gkdim/presentations.hpp>
#include <gkdim/rational_series.hpp>
#include <gkdim/hilbert.hpp>
#include <gkdim/samuel.hpp>
#include <gkdim/poincare.hpp>
#include <gkdim/growth.hpp>
#include <gkdim/axioms.hpp>

#endif
