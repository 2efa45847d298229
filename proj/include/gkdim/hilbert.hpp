#ifndef GKDIM_HILBERT_HPP
#define GKDIM_HILBERT_HPP

// Hilbert functions of monomial quotients (gr A)/I and of the modules and
// algebras built from them.
//
// Two numerator routes are kept: inclusion-exclusion over subsets of the
// ideal generators, and pivot recursion on the exact sequence
//   0 -> S/(I : p)(-deg p) -> S/I -> S/(I + p) -> 0.
// graded_piece_dims() always uses the pivot route; the closed-form series
// uses inclusion-exclusion (up to 20 minimal generators) and is checked
// against graded_piece_dims() before it is returned.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gkdim/exactnum.hpp>
#include <gkdim/presentations.hpp>
#include <gkdim/rational_series.hpp>

namespace gkdim
{

enum class SequenceMeaning { graded_piece, cumulative };

/// f(0..N). A cumulative sequence is the running sum of the graded-piece
/// sequence of the same object.
struct DimensionSequence {
    std::vector<BigInt> values;
    SequenceMeaning meaning = SequenceMeaning::cumulative;

    std::size_t size() const
    {
        return values.size();
    }
    const BigInt &operator[](std::size_t i) const
    {
        return values[i];
    }

    DimensionSequence cumulative() const
    {
        if (meaning == SequenceMeaning::cumulative) return *this;
        DimensionSequence out{{}, SequenceMeaning::cumulative};
        BigInt run = 0;
        for (const auto &v : values) {
            run += v;
            out.values.push_back(run);
        }
        return out;
    }

    DimensionSequence graded() const
    {
        if (meaning == SequenceMeaning::graded_piece) return *this;
        DimensionSequence out{{}, SequenceMeaning::graded_piece};
        for (std::size_t i = 0; i < values.size(); ++i) {
            out.values.push_back(i == 0 ? values[0] : BigInt(values[i] - values[i - 1]));
        }
        return out;
    }

    std::vector<BigRational> as_rationals() const
    {
        return {values.begin(), values.end()};
    }
};

namespace detail
{

using IntCoeffs = std::vector<BigInt>;

inline void add_shifted(IntCoeffs &acc, const IntCoeffs &p, std::uint64_t shift, int sign)
{
    if (acc.size() < p.size() + shift) acc.resize(p.size() + shift);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (sign > 0) {
            acc[i + shift] += p[i];
        } else {
            acc[i + shift] -= p[i];
        }
    }
}

inline IntCoeffs multiply(const IntCoeffs &a, const IntCoeffs &b)
{
    if (a.empty() || b.empty()) return {};
    IntCoeffs r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

inline void trim(IntCoeffs &p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

} // namespace detail

/// Drops generators divisible by another generator (and duplicates).
inline std::vector<NormalMonomial> minimalize(std::vector<NormalMonomial> gens)
{
    std::sort(gens.begin(), gens.end(), [](const NormalMonomial &a, const NormalMonomial &b) {
        const auto da = a.total_degree(), db = b.total_degree();
        return da != db ? da < db : a < b;
    });
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    std::vector<NormalMonomial> out;
    for (const auto &g : gens) {
        const bool redundant = std::any_of(out.begin(), out.end(), [&](const NormalMonomial &h) { return h.divides(g); });
        if (!redundant) out.push_back(g);
    }
    return out;
}

/// Numerator K(t) of H(S/I) = K(t) / prod(1 - t^w_i), by inclusion-exclusion:
/// K = sum over subsets T of the generators of (-1)^|T| t^deg(lcm T).
inline std::vector<BigInt> hilbert_numerator_inclusion_exclusion(std::span<const NormalMonomial> gens,
                                                                 std::span<const std::uint64_t> weights)
{
    detail::IntCoeffs k;
    const std::size_t nv = weights.size();
    std::function<void(std::size_t, const NormalMonomial &, int)> rec = [&](std::size_t i, const NormalMonomial &l,
                                                                            int sign) {
        if (i == gens.size()) {
            const auto d = l.degree(weights);
            if (k.size() <= d) k.resize(d + 1);
            if (sign > 0) {
                k[d] += 1;
            } else {
                k[d] -= 1;
            }
            return;
        }
        rec(i + 1, l, sign);
        rec(i + 1, lcm(l, gens[i]), -sign);
    };
    rec(0, NormalMonomial::one(nv), 1);
    detail::trim(k);
    return k;
}

/// Same numerator by pivot recursion on a shared variable.
inline std::vector<BigInt> hilbert_numerator_pivot(std::vector<NormalMonomial> gens,
                                                   std::span<const std::uint64_t> weights)
{
    const std::size_t nv = weights.size();
    gens = minimalize(std::move(gens));
    if (gens.empty()) return {1};
    if (std::any_of(gens.begin(), gens.end(), [](const NormalMonomial &g) { return g.is_one(); })) return {};

    // Variable shared by the most generators.
    std::size_t best = nv, best_count = 0;
    for (std::size_t v = 0; v < nv; ++v) {
        std::size_t c = 0;
        for (const auto &g : gens) c += g.exponents[v] > 0 ? 1 : 0;
        if (c > best_count) {
            best_count = c;
            best = v;
        }
    }
    if (best_count <= 1) {
        // Pairwise coprime: a complete intersection.
        detail::IntCoeffs k{1};
        for (const auto &g : gens) {
            detail::IntCoeffs f(g.degree(weights) + 1);
            f[0] = 1;
            f.back() -= 1;
            k = detail::multiply(k, f);
        }
        detail::trim(k);
        return k;
    }
    std::uint32_t e = UINT32_MAX;
    for (const auto &g : gens) {
        if (g.exponents[best] > 0) e = std::min(e, g.exponents[best]);
    }
    const NormalMonomial pivot = NormalMonomial::variable(nv, best, e);

    std::vector<NormalMonomial> sum_gens = gens;
    sum_gens.push_back(pivot);
    std::vector<NormalMonomial> colon_gens;
    colon_gens.reserve(gens.size());
    for (auto g : gens) {
        g.exponents[best] = g.exponents[best] > e ? g.exponents[best] - e : 0;
        colon_gens.push_back(std::move(g));
    }
    detail::IntCoeffs k = hilbert_numerator_pivot(std::move(sum_gens), weights);
    detail::add_shifted(k, hilbert_numerator_pivot(std::move(colon_gens), weights), pivot.degree(weights), +1);
    detail::trim(k);
    return k;
}

/// Coefficients 0..N of K(t) / prod(1 - t^w), one knapsack pass per weight.
inline std::vector<BigInt> expand_over_weights(std::span<const BigInt> numerator, std::span<const std::uint64_t> weights,
                                               std::size_t N)
{
    std::vector<BigInt> c(N + 1);
    for (std::size_t i = 0; i < numerator.size() && i <= N; ++i) c[i] = numerator[i];
    for (const auto w : weights) {
        for (std::size_t n = w; n <= N; ++n) c[n] += c[n - w];
    }
    return c;
}

namespace detail
{

inline void require_monomial_basis(const AlgebraSpec &a, const char *who)
{
    if (a.kind == AlgebraKind::catalog) {
        throw std::invalid_argument(std::string(who) + ": catalog algebras have no monomial presentation");
    }
}

inline void check_ideal(const AlgebraSpec &a, std::span<const NormalMonomial> ideal)
{
    for (const auto &g : ideal) {
        if (g.size() != a.num_generators()) {
            throw std::invalid_argument("ideal generator has " + std::to_string(g.size()) + " exponents, algebra has " +
                                        std::to_string(a.num_generators()) + " generators");
        }
    }
}

} // namespace detail

/// dim (gr A / I)_n for n = 0..N: standard monomials of weighted degree
/// exactly n. q-commutation scalars do not affect these counts.
inline std::vector<BigInt> graded_piece_dims(const AlgebraSpec &a, std::span<const NormalMonomial> ideal, std::size_t N)
{
    if (a.kind == AlgebraKind::catalog) {
        if (!ideal.empty()) throw std::invalid_argument("graded_piece_dims: catalog algebras take no ideal");
        return catalog_graded_dims(a.catalog_id, N);
    }
    detail::check_ideal(a, ideal);
    const auto w = a.weights();
    const auto k = hilbert_numerator_pivot({ideal.begin(), ideal.end()}, w);
    return expand_over_weights(k, w, N);
}

inline BigInt graded_piece_dim(const AlgebraSpec &a, std::span<const NormalMonomial> ideal, std::size_t n)
{
    return graded_piece_dims(a, ideal, n).back();
}

/// Cumulative dims of a module: each summand contributes the running count of
/// its standard monomials of degree <= n - shift; the two-sided summand
/// contributes 2n + 1.
inline DimensionSequence module_dim_sequence(const AlgebraSpec &a, const ModuleSpec &m, std::size_t N)
{
    validate(a, m);
    DimensionSequence out{std::vector<BigInt>(N + 1), SequenceMeaning::cumulative};
    for (const auto &s : m.summands) {
        if (s.shift > N) continue;
        const auto g = graded_piece_dims(a, s.ideal, N - s.shift);
        BigInt run = 0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            run += g[i];
            out.values[i + s.shift] += run;
        }
        for (std::size_t n = g.size() + s.shift; n <= N; ++n) out.values[n] += run;
    }
    if (m.negative_shift) {
        for (std::size_t n = 0; n <= N; ++n) out.values[n] += 2 * n + 1;
    }
    return out;
}

inline DimensionSequence algebra_dim_sequence(const AlgebraSpec &a, std::size_t N)
{
    return module_dim_sequence(a, ModuleSpec::regular(), N);
}

/// Closed-form Hilbert series K(t) / prod(1 - t^w_i) of (gr A)/I.
inline RationalSeries hilbert_series_monomial_quotient(const AlgebraSpec &a, std::span<const NormalMonomial> ideal)
{
    detail::require_monomial_basis(a, "hilbert_series_monomial_quotient");
    detail::check_ideal(a, ideal);
    const auto w = a.weights();
    const auto gens = minimalize({ideal.begin(), ideal.end()});
    const auto k = gens.size() <= 20 ? hilbert_numerator_inclusion_exclusion(gens, w) : hilbert_numerator_pivot(gens, w);

    Polynomial den = Polynomial::constant(1);
    for (const auto wi : w) den *= Polynomial::constant(1) - Polynomial::monomial(1, wi);
    RationalSeries series{Polynomial::from_integers(k), den};

    std::uint64_t bound = 10;
    for (const auto &g : ideal) bound += 2 * g.degree(w);
    const auto expected = graded_piece_dims(a, ideal, bound);
    const auto got = expand_over_weights(k, w, bound);
    if (got != expected) {
        throw std::logic_error("hilbert_series_monomial_quotient: numerator routes disagree");
    }
    return series;
}

} // namespace gkdim

#endif
