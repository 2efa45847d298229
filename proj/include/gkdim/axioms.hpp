#ifndef GKDIM_AXIOMS_HPP
#define GKDIM_AXIOMS_HPP

// Instance checks of the multiplicity axioms on monomial modules.
//
// A submodule M' of M = (+)_k (gr A / I_k)(-shift_k) is given summandwise by
// monomial ideals J_k containing I_k, so that M' = (+)_k J_k / I_k and
// M'' = M / M' = (+)_k (gr A / J_k)(-shift_k). Every check below works on
// dimension sequences only.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gkdim/exactnum.hpp>
#include <gkdim/hilbert.hpp>
#include <gkdim/presentations.hpp>
#include <gkdim/samuel.hpp>

namespace gkdim
{

/// J_k for every summand of the ambient module; "1" (the unit ideal) takes
/// the whole summand, J_k = I_k takes none of it.
using SubmoduleIdeals = std::vector<std::vector<NormalMonomial>>;

struct SESSpec {
    AlgebraSpec ambient;
    ModuleSpec big;
    SubmoduleIdeals sub;
};

/// GK dimension and multiplicity read off a cumulative sequence. A module
/// whose sampled sequence is identically zero is the zero module.
struct ModuleFit {
    bool detected = false;
    bool zero = false;
    std::size_t gk = 0;
    BigRational e = 0;
};

inline ModuleFit fit_module(const DimensionSequence &s, std::size_t window = default_window)
{
    ModuleFit f;
    const auto h = detect_polynomial(s, window);
    if (!h) return f;
    f.detected = true;
    f.zero = h->is_zero();
    if (!f.zero) {
        f.gk = gk_dimension(*h);
        f.e = multiplicity(*h);
    }
    return f;
}

enum class AxiomCase { a, b, c, degenerate, none, inconclusive };

inline const char *to_string(AxiomCase c)
{
    switch (c) {
    case AxiomCase::a: return "a";
    case AxiomCase::b: return "b";
    case AxiomCase::c: return "c";
    case AxiomCase::degenerate: return "degenerate";
    case AxiomCase::none: return "none";
    case AxiomCase::inconclusive: return "inconclusive";
    }
    return "?";
}

struct AxiomReport {
    // (M', M, M''); nullopt GK means the zero module.
    std::array<std::optional<std::size_t>, 3> gk_triple;
    std::optional<std::array<BigRational, 3>> e_values;
    AxiomCase axiom_case = AxiomCase::inconclusive;
    bool exactness_ok = false;
    bool additivity_ok = false;
    bool clause_d_ok = false;
    std::string notes;

    DimensionSequence sub, big, quotient;
};

namespace detail
{

// dim (gr A / I)_n by inclusion-exclusion, independent of the pivot route.
inline std::vector<BigInt> standard_counts_ie(const AlgebraSpec &a, const std::vector<NormalMonomial> &ideal,
                                              std::size_t N)
{
    const auto w = a.weights();
    const auto gens = minimalize(ideal);
    const auto k =
        gens.size() <= 20 ? hilbert_numerator_inclusion_exclusion(gens, w) : hilbert_numerator_pivot(gens, w);
    return expand_over_weights(k, w, N);
}

// Every generator of `inner` lies in the ideal generated by `outer`.
inline bool ideal_contains(const std::vector<NormalMonomial> &outer, const std::vector<NormalMonomial> &inner)
{
    return std::all_of(inner.begin(), inner.end(), [&](const NormalMonomial &g) {
        return std::any_of(outer.begin(), outer.end(), [&](const NormalMonomial &h) { return h.divides(g); });
    });
}

inline void check_submodule(const AlgebraSpec &a, const ModuleSpec &m, const SubmoduleIdeals &sub,
                            const std::string &path)
{
    if (m.negative_shift) {
        throw SpecError("module.negative_shift", "submodules of the two-sided summand are not supported");
    }
    if (a.kind == AlgebraKind::catalog) {
        throw SpecError(path, "catalog algebras have no monomial submodules");
    }
    if (sub.size() != m.summands.size()) {
        throw SpecError(path, "expected one ideal per summand (" + std::to_string(m.summands.size()) + "), got " +
                                  std::to_string(sub.size()));
    }
    for (std::size_t k = 0; k < sub.size(); ++k) {
        for (std::size_t g = 0; g < sub[k].size(); ++g) {
            if (sub[k][g].size() != a.num_generators()) {
                throw SpecError(path + "[" + std::to_string(k) + "][" + std::to_string(g) + "]",
                                "monomial has wrong number of exponents");
            }
        }
        if (!ideal_contains(sub[k], m.summands[k].ideal)) {
            throw SpecError(path + "[" + std::to_string(k) + "]", "ideal does not contain the summand's ideal");
        }
    }
}

inline void add_cumulative(std::vector<BigInt> &out, const std::vector<BigInt> &graded, std::uint64_t shift, int sign)
{
    BigInt run = 0;
    for (std::size_t n = shift; n < out.size(); ++n) {
        const std::size_t i = n - shift;
        if (i < graded.size()) run += graded[i];
        if (sign > 0) {
            out[n] += run;
        } else {
            out[n] -= run;
        }
    }
}

// Cumulative dims of (+)_k J_k / I_k, counted as std(I_k) - std(J_k).
inline DimensionSequence submodule_sequence(const AlgebraSpec &a, const ModuleSpec &m, const SubmoduleIdeals &sub,
                                            std::size_t N)
{
    DimensionSequence out{std::vector<BigInt>(N + 1), SequenceMeaning::cumulative};
    for (std::size_t k = 0; k < m.summands.size(); ++k) {
        const auto &s = m.summands[k];
        if (s.shift > N) continue;
        add_cumulative(out.values, standard_counts_ie(a, s.ideal, N - s.shift), s.shift, +1);
        add_cumulative(out.values, standard_counts_ie(a, sub[k], N - s.shift), s.shift, -1);
    }
    return out;
}

inline DimensionSequence quotient_by_ideals(const AlgebraSpec &a, const ModuleSpec &m, const SubmoduleIdeals &sub,
                                            std::size_t N)
{
    ModuleSpec q;
    for (std::size_t k = 0; k < m.summands.size(); ++k) q.summands.push_back(Summand{m.summands[k].shift, sub[k]});
    DimensionSequence out{std::vector<BigInt>(N + 1), SequenceMeaning::cumulative};
    for (const auto &s : q.summands) {
        if (s.shift > N) continue;
        add_cumulative(out.values, graded_piece_dims(a, s.ideal, N - s.shift), s.shift, +1);
    }
    return out;
}

inline DimensionSequence difference(const DimensionSequence &x, const DimensionSequence &y)
{
    DimensionSequence out{std::vector<BigInt>(x.size()), SequenceMeaning::cumulative};
    for (std::size_t i = 0; i < x.size(); ++i) out.values[i] = x.values[i] - y.values[i];
    return out;
}

inline std::optional<std::size_t> gk_or_zero(const ModuleFit &f)
{
    return f.zero ? std::nullopt : std::optional<std::size_t>(f.gk);
}

inline bool gk_less(const std::optional<std::size_t> &x, const std::optional<std::size_t> &y)
{
    if (!y) return false;
    return !x || *x < *y;
}

} // namespace detail

/// GK triple and the identity GK(M) = max(GK M', GK M''). M'' comes from
/// exact subtraction and is cross-checked against a direct count of
/// (+)_k (gr A / J_k).
inline AxiomReport check_exactness(const SESSpec &s, std::size_t N, std::size_t window = default_window)
{
    validate(s.ambient);
    validate(s.ambient, s.big);
    detail::check_submodule(s.ambient, s.big, s.sub, "ses.sub_ideal");

    AxiomReport r;
    r.big = module_dim_sequence(s.ambient, s.big, N);
    r.sub = detail::submodule_sequence(s.ambient, s.big, s.sub, N);
    r.quotient = detail::difference(r.big, r.sub);
    const auto direct = detail::quotient_by_ideals(s.ambient, s.big, s.sub, N);
    for (std::size_t n = 0; n <= N; ++n) {
        if (r.sub.values[n] + r.quotient.values[n] != r.big.values[n] || r.quotient.values[n] != direct.values[n]) {
            throw std::logic_error("check_exactness: dimension balance fails at n = " + std::to_string(n));
        }
    }

    const ModuleFit f1 = fit_module(r.sub, window), f = fit_module(r.big, window), f2 = fit_module(r.quotient, window);
    if (!f1.detected || !f.detected || !f2.detected) {
        r.axiom_case = AxiomCase::inconclusive;
        r.notes = "polynomial detection failed on";
        if (!f1.detected) r.notes += " M'";
        if (!f.detected) r.notes += " M";
        if (!f2.detected) r.notes += " M''";
        return r;
    }
    r.gk_triple = {detail::gk_or_zero(f1), detail::gk_or_zero(f), detail::gk_or_zero(f2)};
    r.e_values = std::array<BigRational, 3>{f1.e, f.e, f2.e};
    const auto mx = detail::gk_less(r.gk_triple[0], r.gk_triple[2]) ? r.gk_triple[2] : r.gk_triple[0];
    r.exactness_ok = mx == r.gk_triple[1];
    return r;
}

/// Classifies the sequence by its GK pattern and checks the clause that
/// applies: (a) e(M) = e(M''), (b) e(M') = e(M), (c) e(M) = e(M') + e(M'');
/// clause (d) (e = 0 exactly for the zero module) is checked on all three.
inline AxiomReport check_multiplicity_axioms(const SESSpec &s, std::size_t N, std::size_t window = default_window)
{
    AxiomReport r = check_exactness(s, N, window);
    if (r.axiom_case == AxiomCase::inconclusive && !r.e_values) return r;
    const auto &[g1, g, g2] = r.gk_triple;
    const auto &[e1, e, e2] = *r.e_values;

    r.clause_d_ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
        const bool zero = !r.gk_triple[i];
        const bool e_zero = (*r.e_values)[i] == 0;
        r.clause_d_ok = r.clause_d_ok && zero == e_zero;
    }

    if (!g1 || !g2) {
        r.axiom_case = AxiomCase::degenerate;
        r.additivity_ok = e == e1 + e2;
        r.notes = !g ? "zero module" : (!g1 ? "M' = 0" : "M'' = 0");
    } else if (*g1 < *g && *g == *g2) {
        r.axiom_case = AxiomCase::a;
        r.additivity_ok = e == e2;
    } else if (*g2 < *g && *g == *g1) {
        r.axiom_case = AxiomCase::b;
        r.additivity_ok = e1 == e;
    } else if (*g1 == *g && *g == *g2) {
        r.axiom_case = AxiomCase::c;
        r.additivity_ok = e == e1 + e2;
    } else {
        r.axiom_case = AxiomCase::none;
        r.additivity_ok = false;
        r.notes = "GK pattern matches no clause";
    }
    return r;
}

// ---------------------------------------------------------------------------
// Chains
// ---------------------------------------------------------------------------

struct ChainReport {
    std::size_t n = 0;
    BigRational e_M = 0;
    std::optional<std::size_t> gk_M;
    bool bound_ok = false;
    bool nested_ok = true;
    bool precondition_ok = true;
    std::vector<std::string> notes;
};

/// M = M_0 > M_1 > ... > M_n with M_i = (+)_k J^(i)_k / I_k for the listed
/// levels i = 1..n (M_0 = M is implicit). Strictness is checked degreewise on
/// 0..N; a quotient of smaller GK violates the precondition of the bound and
/// is reported in notes, not failed.
inline ChainReport chain_bound_check(const AlgebraSpec &a, const ModuleSpec &m, const std::vector<SubmoduleIdeals> &chain,
                                     std::size_t N, std::size_t window = default_window)
{
    validate(a);
    validate(a, m);
    ChainReport r;
    r.n = chain.size();

    SubmoduleIdeals prev(m.summands.size(), {NormalMonomial::one(a.num_generators())});
    for (std::size_t i = 0; i < chain.size(); ++i) {
        detail::check_submodule(a, m, chain[i], "chain[" + std::to_string(i) + "]");
    }

    DimensionSequence prev_dims = module_dim_sequence(a, m, N);
    const ModuleFit fm = fit_module(prev_dims, window);
    if (!fm.detected) {
        r.notes.push_back("polynomial detection failed on M");
        r.precondition_ok = false;
    } else {
        r.e_M = fm.e;
        r.gk_M = detail::gk_or_zero(fm);
    }

    for (std::size_t i = 0; i < chain.size(); ++i) {
        const auto label = "M_" + std::to_string(i) + "/M_" + std::to_string(i + 1);
        for (std::size_t k = 0; k < m.summands.size(); ++k) {
            if (!detail::ideal_contains(prev[k], chain[i][k])) {
                r.nested_ok = false;
                r.notes.push_back("M_" + std::to_string(i + 1) + " is not contained in M_" + std::to_string(i));
                break;
            }
        }
        const auto cur = detail::submodule_sequence(a, m, chain[i], N);
        const auto q = detail::difference(prev_dims, cur);
        if (q.values.back() == 0) {
            r.nested_ok = false;
            r.notes.push_back(label + " vanishes on degrees 0.." + std::to_string(N));
        }
        const ModuleFit fq = fit_module(q, window);
        if (!fq.detected) {
            r.precondition_ok = false;
            r.notes.push_back(label + ": polynomial detection failed");
        } else if (fm.detected && !fq.zero && detail::gk_or_zero(fq) != r.gk_M) {
            r.precondition_ok = false;
            r.notes.push_back(label + " has GK " + std::to_string(fq.gk) + " below GK(M)");
        }
        prev = chain[i];
        prev_dims = cur;
    }
    r.bound_ok = BigRational(static_cast<std::uint64_t>(r.n)) <= r.e_M;
    return r;
}

// ---------------------------------------------------------------------------
// Holonomy
// ---------------------------------------------------------------------------

/// Holonomic numbers h_A by algebra kind. Weyl algebras of rank n have
/// h = n (Bernstein's inequality); polynomial rings and quantum affine
/// spaces have finite-dimensional modules, so h = 0.
struct HolonomyCatalog {
    std::optional<std::uint64_t> override_h;

    std::optional<std::uint64_t> lookup(const AlgebraSpec &a) const
    {
        if (override_h) return override_h;
        switch (a.kind) {
        case AlgebraKind::weyl: return a.weyl_rank;
        case AlgebraKind::polynomial:
        case AlgebraKind::quantum_affine: return 0;
        default: return std::nullopt;
        }
    }
};

struct HolonomicDefect {
    std::size_t gk = 0;
    std::uint64_t h = 0;
    std::int64_t defect = 0;
    bool min_holonomic = false;
};

inline HolonomicDefect holonomic_defect(const AlgebraSpec &a, const ModuleSpec &m, const HolonomyCatalog &catalog,
                                        std::size_t N, std::size_t window = default_window)
{
    const auto h = catalog.lookup(a);
    if (!h) {
        throw std::invalid_argument(std::string("holonomic_defect: no holonomic number for kind ") + to_string(a.kind));
    }
    const ModuleFit f = fit_module(module_dim_sequence(a, m, N), window);
    if (!f.detected || f.zero) {
        throw std::domain_error("holonomic_defect: GK of the module is not detectable on the samples");
    }
    HolonomicDefect d;
    d.gk = f.gk;
    d.h = *h;
    d.defect = static_cast<std::int64_t>(f.gk) - static_cast<std::int64_t>(*h);
    d.min_holonomic = d.defect == 0;
    return d;
}

struct TorsionVerdict {
    bool applicable = false;
    bool torsion = false;
    std::string note;
};

/// For a cyclic A/I over a prime ring with GK(A) > h > 0: A/I is torsion
/// iff I != 0. Outside that range the criterion does not apply.
inline TorsionVerdict torsion_check_cyclic(const AlgebraSpec &a, bool ideal_nonzero, std::size_t gk_A, std::uint64_t h)
{
    (void)a; // every shipped kind is a domain
    TorsionVerdict v;
    if (gk_A == 0) {
        v.note = "finite-dimensional ambient algebra";
        return v;
    }
    if (h == 0 || gk_A <= h) {
        v.note = "criterion needs GK(A) > h > 0";
        return v;
    }
    v.applicable = true;
    v.torsion = ideal_nonzero;
    v.note = ideal_nonzero ? "nonzero I: GK(A/I) < GK(A)" : "regular module has no torsion";
    return v;
}

struct GkQuotientCheck {
    std::size_t gk_A = 0;
    std::optional<std::size_t> gk_quotient; // nullopt: zero module
    bool ok = false;
};

/// GK(A/I) <= GK(A) - 1 for a nonzero monomial I, on the sampled data.
inline GkQuotientCheck check_gk_quotient(const AlgebraSpec &a, const std::vector<NormalMonomial> &ideal, std::size_t N,
                                         std::size_t window = default_window)
{
    if (ideal.empty()) throw std::invalid_argument("check_gk_quotient: ideal must be nonzero");
    const ModuleFit fa = fit_module(algebra_dim_sequence(a, N), window);
    const ModuleFit fq = fit_module(module_dim_sequence(a, ModuleSpec::cyclic(ideal), N), window);
    if (!fa.detected || !fq.detected) throw std::domain_error("check_gk_quotient: GK not detectable on the samples");
    GkQuotientCheck c;
    c.gk_A = fa.gk;
    c.gk_quotient = detail::gk_or_zero(fq);
    c.ok = !c.gk_quotient || *c.gk_quotient + 1 <= c.gk_A;
    return c;
}

/// Least c <= c_max with s1(i) <= s2(i + c) and s2(i) <= s1(i + c) wherever
/// both sides are sampled. A dimension-level necessary condition for the
/// filtrations to be equivalent, not a proof of it.
inline std::optional<std::size_t> filtration_equivalent(const DimensionSequence &s1, const DimensionSequence &s2,
                                                        std::size_t c_max)
{
    const auto a = s1.cumulative(), b = s2.cumulative();
    const std::size_t len = std::min(a.size(), b.size());
    for (std::size_t c = 0; c <= c_max && c < len; ++c) {
        bool ok = true;
        for (std::size_t i = 0; i + c < len && ok; ++i) {
            ok = a.values[i] <= b.values[i + c] && b.values[i] <= a.values[i + c];
        }
        if (ok) return c;
    }
    return std::nullopt;
}

} // namespace gkdim

#endif
