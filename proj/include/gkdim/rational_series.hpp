#ifndef GKDIM_RATIONAL_SERIES_HPP
#define GKDIM_RATIONAL_SERIES_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gkdim/exactnum.hpp>

namespace gkdim
{

/// Generating function p(t)/q(t), q(0) != 0.
///
/// Values produced by series_from_recurrence() are reduced (gcd(p, q) = 1,
/// q(0) = 1). Hilbert series of monomial quotients keep the canonical
/// denominator prod(1 - t^w_i) and may share factors with the numerator;
/// call reduced() for the coprime form.
struct RationalSeries {
    Polynomial numerator;
    Polynomial denominator;

    // First `count` power-series coefficients.
    std::vector<BigRational> expand(std::size_t count) const
    {
        const BigRational q0 = denominator.coefficient(0);
        if (q0 == 0) {
            throw std::domain_error("RationalSeries: denominator vanishes at t = 0");
        }
        const auto &q = denominator.coefficients();
        std::vector<BigRational> f(count);
        for (std::size_t n = 0; n < count; ++n) {
            BigRational acc = numerator.coefficient(n);
            for (std::size_t k = 1; k < q.size() && k <= n; ++k) {
                if (q[k] != 0) acc -= q[k] * f[n - k];
            }
            f[n] = acc / q0;
        }
        return f;
    }

    RationalSeries reduced() const
    {
        const Polynomial g = gcd(numerator, denominator);
        Polynomial p = numerator, q = denominator;
        if (g.degree() > 0) {
            p = divmod(numerator, g).quotient;
            q = divmod(denominator, g).quotient;
        }
        const BigRational q0 = q.coefficient(0);
        if (q0 == 0) {
            throw std::domain_error("RationalSeries: denominator vanishes at t = 0");
        }
        const BigRational s = BigRational(1) / q0;
        return {p * s, q * s};
    }

    // Same power series (cross-multiplication).
    bool equivalent(const RationalSeries &o) const
    {
        return numerator * o.denominator == o.numerator * denominator;
    }

    std::string to_string() const
    {
        return "(" + numerator.to_string() + ")/(" + denominator.to_string() + ")";
    }
};

} // namespace gkdim

#endif
