#ifndef GKDIM_SAMUEL_HPP
#define GKDIM_SAMUEL_HPP

// Eventual polynomiality of dimension sequences. A cumulative sequence that
// agrees with a polynomial for large n is written in the binomial basis;
// its degree is the GK dimension and its top coefficient the multiplicity
// (Bernstein number). Agreement is only ever certified on the supplied
// samples.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gkdim/exactnum.hpp>
#include <gkdim/hilbert.hpp>

namespace gkdim
{

inline constexpr std::size_t default_window = 6;

/// H(n) = form(n) for every sampled n >= stabilization_index. The form is
/// zero only for the zero module; otherwise its top coefficient is > 0 for
/// nondecreasing integer data.
struct HilbertSamuelPolynomial {
    BinomialForm form;
    std::size_t stabilization_index = 0;
    std::size_t samples = 0;

    bool is_zero() const
    {
        return form.is_zero();
    }
};

/// Finds the least k whose k-th difference is constant on the final
/// `window` entries, rebuilds the polynomial through the tail and verifies
/// it against every trailing sample. Fitting is done in the original index,
/// so leading zeros of shifted modules need no special handling.
inline std::optional<HilbertSamuelPolynomial> detect_polynomial(const DimensionSequence &s,
                                                                std::size_t window = default_window)
{
    if (window < 2) {
        throw std::invalid_argument("detect_polynomial: window must be >= 2");
    }
    const std::size_t len = s.size();
    if (len < 2 * window + 4) {
        throw std::invalid_argument("detect_polynomial: need at least " + std::to_string(2 * window + 4) +
                                    " entries for window " + std::to_string(window) + ", got " + std::to_string(len));
    }
    const DimensionSequence cum = s.cumulative();
    std::vector<BigInt> row = cum.values;
    std::optional<std::size_t> degree;
    for (std::size_t k = 0; k + window + 1 <= len; ++k) {
        if (k > 0) row = finite_difference(row);
        bool constant = true;
        for (std::size_t i = row.size() - window; i + 1 < row.size(); ++i) {
            if (row[i] != row[i + 1]) {
                constant = false;
                break;
            }
        }
        if (constant) {
            degree = k;
            break;
        }
    }
    if (!degree) {
        return std::nullopt;
    }
    const std::size_t d = *degree;

    // Newton interpolation through the last d+1 samples, anchored at n0.
    const std::size_t n0 = len - 1 - d;
    std::vector<BigRational> tail;
    for (std::size_t i = n0; i < len; ++i) tail.emplace_back(cum.values[i]);
    Polynomial p;
    std::vector<BigRational> diffs = tail;
    for (std::size_t i = 0; i <= d; ++i) {
        if (i > 0) diffs = finite_difference(diffs);
        p += binomial_polynomial(i).compose_linear(1, -BigRational(n0)) * diffs.front();
    }

    HilbertSamuelPolynomial h;
    h.form = to_binomial_basis(p);
    h.samples = len;
    std::size_t m = len;
    while (m > 0 && p(m - 1) == BigRational(cum.values[m - 1])) --m;
    h.stabilization_index = m;
    if (len - m < window + d) {
        // The constant-difference window guarantees window + d agreeing entries.
        throw std::logic_error("detect_polynomial: reconstruction disagrees with the confirmation window");
    }
    return h;
}

inline std::size_t gk_dimension(const HilbertSamuelPolynomial &h)
{
    return h.form.is_zero() ? 0 : static_cast<std::size_t>(h.form.degree());
}

inline BigRational multiplicity(const HilbertSamuelPolynomial &h)
{
    return h.form.leading();
}

enum class GammaTrend { converging, diverging, oscillating };

inline const char *to_string(GammaTrend t)
{
    switch (t) {
    case GammaTrend::converging: return "converging";
    case GammaTrend::diverging: return "diverging";
    case GammaTrend::oscillating: return "oscillating";
    }
    return "?";
}

struct GammaEstimate {
    double value = 0.0; // log_N f(N) at the last index; diagnostic only
    GammaTrend trend = GammaTrend::converging;
};

namespace detail
{

inline double log_big(const BigInt &x)
{
    const std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 60) return std::log(x.convert_to<double>());
    const std::size_t shift = bits - 60;
    const BigInt top = x >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

} // namespace detail

/// log_n f(n) at the last index, with a trend flag from the last five
/// estimates.
inline GammaEstimate gamma_estimate(const DimensionSequence &s)
{
    if (s.size() < 8) {
        throw std::invalid_argument("gamma_estimate: need at least 8 entries");
    }
    const std::size_t len = s.size();
    if (s.values[len - 1] < 1) {
        bool any = false;
        for (const auto &v : s.values) any = any || v != 0;
        if (!any) throw std::invalid_argument("gamma_estimate: sequence is identically zero");
        throw std::invalid_argument("gamma_estimate: sequence is not eventually >= 1");
    }
    std::vector<double> est;
    for (std::size_t n = len - 5; n < len; ++n) {
        if (n < 2 || s.values[n] < 1) {
            throw std::invalid_argument("gamma_estimate: sequence is not eventually >= 1");
        }
        est.push_back(detail::log_big(s.values[n]) / std::log(static_cast<double>(n)));
    }
    GammaEstimate g;
    g.value = est.back();
    std::vector<double> deltas;
    for (std::size_t i = 0; i + 1 < est.size(); ++i) deltas.push_back(est[i + 1] - est[i]);
    constexpr double tiny = 1e-9;
    bool pos = false, neg = false;
    for (double dlt : deltas) {
        pos = pos || dlt > tiny;
        neg = neg || dlt < -tiny;
    }
    if (pos && neg) {
        g.trend = GammaTrend::oscillating;
    } else if (!pos && !neg) {
        g.trend = GammaTrend::converging;
    } else {
        // Monotone: converging iff the last step, carried over another n
        // steps, moves the estimate by less than 1.
        const double last = std::abs(deltas.back());
        g.trend = last * static_cast<double>(len - 1) < 1.0 ? GammaTrend::converging : GammaTrend::diverging;
    }
    return g;
}

} // namespace gkdim

#endif
