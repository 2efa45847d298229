#ifndef GKDIM_GROWTH_HPP
#define GKDIM_GROWTH_HPP

// Growth classification of a dimension sequence. Every verdict rests on
// exact evidence (a verified polynomial or quasi-polynomial fit, or an exact
// recurrence with a pole inside the unit disk); the floating-point gamma
// estimate is attached for display only.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gkdim/exactnum.hpp>
#include <gkdim/hilbert.hpp>
#include <gkdim/poincare.hpp>
#include <gkdim/samuel.hpp>

namespace gkdim
{

namespace warning
{
inline constexpr const char *sampled_agreement = "sampled agreement only";
inline constexpr const char *mixed_cyclotomic = "mixed cyclotomic denominator";
inline constexpr const char *uncertified_roots = "uncertified root location";
inline constexpr const char *roots_outside = "roots off the unit circle but none inside";
inline constexpr const char *incomplete_factorization = "incomplete factorization";
inline constexpr const char *quasi_polynomial_fit = "quasi-polynomial fit";
inline constexpr const char *no_recurrence = "no recurrence on sampled tail";
inline constexpr const char *dimension_level_only = "dimension-level check only";
} // namespace warning

/// Every warning string the library or CLI can emit.
inline const std::vector<std::string> &warning_catalog()
{
    static const std::vector<std::string> all{
        warning::sampled_agreement,   warning::mixed_cyclotomic, warning::uncertified_roots,
        warning::roots_outside,       warning::incomplete_factorization, warning::quasi_polynomial_fit, warning::no_recurrence,
        warning::dimension_level_only,
    };
    return all;
}

enum class GrowthClass { finite_dimensional, polynomial, exponential, inconclusive };

inline const char *to_string(GrowthClass g)
{
    switch (g) {
    case GrowthClass::finite_dimensional: return "finite_dimensional";
    case GrowthClass::polynomial: return "polynomial";
    case GrowthClass::exponential: return "exponential";
    case GrowthClass::inconclusive: return "inconclusive";
    }
    return "?";
}

struct GrowthOptions {
    std::size_t window = default_window;
    std::size_t confirm = default_confirm;
};

struct GrowthReport {
    GrowthClass classification = GrowthClass::inconclusive;
    std::optional<std::size_t> gk;
    std::optional<BigRational> multiplicity;
    std::optional<GammaEstimate> gamma;
    std::string evidence;
    std::vector<std::string> warnings;

    std::optional<HilbertSamuelPolynomial> hilbert_samuel;
    std::optional<Recurrence> recurrence;
    std::optional<RationalSeries> series;
    std::optional<DenominatorAnalysis> denominator;
    std::optional<QuasiPolynomial> quasi;
};

namespace detail
{

inline void add_warning(GrowthReport &r, const std::string &w)
{
    for (const auto &x : r.warnings) {
        if (x == w) return;
    }
    r.warnings.push_back(w);
}

// GK and multiplicity of a cumulative quasi-polynomial when all top-degree
// branches share one leading coefficient.
inline bool read_quasi(const QuasiPolynomial &qp, GrowthReport &rep)
{
    if (qp.max_branch_degree < 0) return false;
    const int d = qp.max_branch_degree;
    std::optional<BigRational> lead;
    for (const auto &b : qp.branches) {
        if (b.degree() != d) return false;
        if (lead && *lead != b.leading()) return false;
        lead = b.leading();
    }
    rep.gk = static_cast<std::size_t>(d);
    rep.multiplicity = *lead * BigRational(factorial(static_cast<std::uint64_t>(d)));
    return true;
}

} // namespace detail

inline GrowthReport classify_growth(const DimensionSequence &s, const GrowthOptions &opt = {})
{
    if (s.size() < 12) {
        throw std::invalid_argument("classify_growth: need at least 12 entries");
    }
    const DimensionSequence cum = s.cumulative();
    GrowthReport rep;
    try {
        rep.gamma = gamma_estimate(cum);
    } catch (const std::invalid_argument &) {
        // Not eventually >= 1; gamma is diagnostic only.
    }

    if (cum.size() >= 2 * opt.window + 4) {
        if (auto h = detect_polynomial(cum, opt.window)) {
            rep.hilbert_samuel = h;
            detail::add_warning(rep, warning::sampled_agreement);
            const std::size_t d = gk_dimension(*h);
            rep.gk = d;
            if (h->is_zero()) {
                rep.classification = GrowthClass::finite_dimensional;
                rep.evidence = "sequence is eventually 0 from n = " + std::to_string(h->stabilization_index);
                return rep;
            }
            rep.multiplicity = multiplicity(*h);
            rep.classification = d == 0 ? GrowthClass::finite_dimensional : GrowthClass::polynomial;
            rep.evidence = "degree-" + std::to_string(d) + " polynomial from n = " +
                           std::to_string(h->stabilization_index) + " on " + std::to_string(h->samples) + " samples";
            return rep;
        }
    }

    if (cum.size() >= opt.confirm + 2) {
        if (auto r = minimal_recurrence(cum, opt.confirm)) {
            rep.recurrence = r;
            rep.series = series_from_recurrence(cum, *r);
            rep.denominator = denominator_analysis(rep.series->denominator);
            for (const auto &c : rep.denominator->caveats) detail::add_warning(rep, c);
            if (!rep.denominator->factorization.complete) detail::add_warning(rep, warning::incomplete_factorization);
            switch (rep.denominator->radius_class) {
            case RadiusClass::inside_unit_disk:
                rep.classification = GrowthClass::exponential;
                rep.evidence = "order-" + std::to_string(r->order) + " recurrence; denominator " +
                               rep.series->denominator.to_string() + " has a root inside the unit disk";
                return rep;
            case RadiusClass::all_roots_on_unit_circle: {
                const auto pure = to_pure_form(*rep.series);
                rep.quasi = quasi_polynomial(*pure, cum, opt.window);
                detail::add_warning(rep, warning::sampled_agreement);
                detail::add_warning(rep, warning::quasi_polynomial_fit);
                GrowthReport tmp;
                if (detail::read_quasi(*rep.quasi, tmp)) {
                    rep.gk = tmp.gk;
                    rep.multiplicity = tmp.multiplicity;
                    rep.classification = *rep.gk == 0 ? GrowthClass::finite_dimensional : GrowthClass::polynomial;
                    rep.evidence = "quasi-polynomial of period " + std::to_string(rep.quasi->period) + " and degree " +
                                   std::to_string(*rep.gk) + " from n = " + std::to_string(rep.quasi->onset);
                    return rep;
                }
                rep.evidence = "quasi-polynomial branches of period " + std::to_string(rep.quasi->period) +
                               " disagree in leading term";
                return rep;
            }
            case RadiusClass::mixed:
                rep.evidence = "recurrence found but root location could not be certified";
                return rep;
            }
        }
    }
    detail::add_warning(rep, warning::no_recurrence);
    rep.evidence = "no polynomial fit and no recurrence confirmed on " + std::to_string(cum.size()) + " samples";
    if (rep.gamma) {
        rep.evidence += "; log_n f(n) at the last index is " + std::to_string(rep.gamma->value) + " (" +
                        to_string(rep.gamma->trend) + ")";
    }
    return rep;
}

} // namespace gkdim

#endif
