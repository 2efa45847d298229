#ifndef GKDIM_POINCARE_HPP
#define GKDIM_POINCARE_HPP

// Poincare series as rational functions: exact minimal linear recurrences,
// the generating function they determine, where the poles of that function
// lie relative to the unit circle, and quasi-polynomial branches for
// denominators of the form (1 - t^s)^d.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gkdim/exactnum.hpp>
#include <gkdim/hilbert.hpp>
#include <gkdim/rational_series.hpp>
#include <gkdim/samuel.hpp>

namespace gkdim
{

inline constexpr std::size_t default_confirm = 8;

/// f(n + s) = a_1 f(n + s - 1) + ... + a_s f(n) for every sampled n >= onset.
struct Recurrence {
    std::size_t order = 0;
    std::vector<BigRational> coefficients; // a_1..a_s
    std::size_t onset = 0;

    // 1 - a_1 t - ... - a_s t^s
    Polynomial characteristic_denominator() const
    {
        std::vector<BigRational> q(order + 1);
        q[0] = 1;
        for (std::size_t k = 0; k < order; ++k) q[k + 1] = -coefficients[k];
        return Polynomial(std::move(q));
    }

    bool holds_at(const std::vector<BigRational> &f, std::size_t n) const
    {
        BigRational acc = 0;
        for (std::size_t k = 1; k <= order; ++k) acc += coefficients[k - 1] * f[n + order - k];
        return acc == f[n + order];
    }
};

namespace detail
{

// Solves the (possibly overdetermined) system rows * x = rhs exactly.
// Free variables are set to 0; nullopt when inconsistent.
inline std::optional<std::vector<BigRational>> solve_exact(std::vector<std::vector<BigRational>> rows,
                                                           std::vector<BigRational> rhs, std::size_t unknowns)
{
    const std::size_t m = rows.size();
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < unknowns && r < m; ++c) {
        std::size_t p = r;
        while (p < m && rows[p][c] == 0) ++p;
        if (p == m) continue;
        std::swap(rows[p], rows[r]);
        std::swap(rhs[p], rhs[r]);
        const BigRational inv = BigRational(1) / rows[r][c];
        for (std::size_t j = c; j < unknowns; ++j) rows[r][j] *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const BigRational f = rows[i][c];
            for (std::size_t j = c; j < unknowns; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < m; ++i) {
        if (rhs[i] != 0) return std::nullopt;
    }
    std::vector<BigRational> x(unknowns);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = rhs[i];
    return x;
}

} // namespace detail

/// Least-order recurrence with constant rational coefficients satisfied by
/// the tail. For order s the coefficients are solved from the last s +
/// `confirm` equations, so at least `confirm` equations beyond those needed
/// to determine them are checked; onset is then pushed back as far as the
/// recurrence keeps holding.
inline std::optional<Recurrence> minimal_recurrence(const DimensionSequence &s, std::size_t confirm = default_confirm)
{
    const std::size_t len = s.size();
    if (len < confirm + 2) {
        throw std::invalid_argument("minimal_recurrence: need at least " + std::to_string(confirm + 2) +
                                    " entries, got " + std::to_string(len));
    }
    const auto f = s.as_rationals();
    const std::size_t max_order = (len - confirm) / 2;
    for (std::size_t order = 1; order <= max_order; ++order) {
        const std::size_t eqs = order + confirm;
        const std::size_t first = len - order - eqs; // first n used
        std::vector<std::vector<BigRational>> rows;
        std::vector<BigRational> rhs;
        for (std::size_t n = first; n + order < len; ++n) {
            std::vector<BigRational> row(order);
            for (std::size_t k = 1; k <= order; ++k) row[k - 1] = f[n + order - k];
            rows.push_back(std::move(row));
            rhs.push_back(f[n + order]);
        }
        auto sol = detail::solve_exact(std::move(rows), std::move(rhs), order);
        if (!sol) continue;
        Recurrence r{order, std::move(*sol), first};
        while (r.onset > 0 && r.holds_at(f, r.onset - 1)) --r.onset;
        return r;
    }
    return std::nullopt;
}

/// P(t) = p(t)/q(t) with q = 1 - a_1 t - ... - a_s t^s; the numerator absorbs
/// the prefix before the onset. Returned in reduced form.
inline RationalSeries series_from_recurrence(const DimensionSequence &s, const Recurrence &r)
{
    const auto f = s.as_rationals();
    if (r.coefficients.size() != r.order || r.onset + r.order > f.size()) {
        throw std::invalid_argument("series_from_recurrence: recurrence does not fit the sample");
    }
    for (std::size_t n = r.onset; n + r.order < f.size(); ++n) {
        if (!r.holds_at(f, n)) {
            throw std::invalid_argument("series_from_recurrence: recurrence fails at n = " + std::to_string(n));
        }
    }
    const Polynomial q = r.characteristic_denominator();
    const Polynomial p = (q * Polynomial(f)).truncated(r.onset + r.order);
    RationalSeries out = RationalSeries{p, q}.reduced();
    if (out.expand(f.size()) != f) {
        throw std::logic_error("series_from_recurrence: expansion does not reproduce the sample");
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cyclotomic polynomials and root location
// ---------------------------------------------------------------------------

/// Phi_k(t), k >= 1.
inline Polynomial cyclotomic(std::size_t k)
{
    static std::map<std::size_t, Polynomial> cache;
    static std::mutex mutex;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(k); it != cache.end()) return it->second;
    }
    Polynomial p = Polynomial::monomial(1, k) - Polynomial::constant(1);
    for (std::size_t d = 1; d < k; ++d) {
        if (k % d == 0) p = divmod(p, cyclotomic(d)).quotient;
    }
    std::lock_guard lock(mutex);
    cache.emplace(k, p);
    return p;
}

inline std::uint64_t euler_phi(std::uint64_t n)
{
    std::uint64_t r = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

/// Number of zeros of f in |z| < rho by the Schur-Cohn recursion on
/// f(rho z); nullopt in the singular case (some delta vanishes), which
/// includes zeros on |z| = rho but also happens without them.
inline std::optional<std::size_t> roots_inside_disk(const Polynomial &f, const BigRational &rho)
{
    if (f.is_zero()) throw std::invalid_argument("roots_inside_disk: zero polynomial");
    if (rho <= 0) throw std::invalid_argument("roots_inside_disk: radius must be positive");
    std::vector<BigRational> a = f.coefficients();
    BigRational scale = 1;
    for (auto &c : a) {
        c *= scale;
        scale *= rho;
    }
    std::size_t negatives = 0;
    int sign = 1;
    while (a.size() > 1) {
        const std::size_t n = a.size() - 1;
        std::vector<BigRational> next(n);
        const BigRational a0 = a.front(), an = a.back();
        for (std::size_t k = 0; k < n; ++k) next[k] = a0 * a[k] - an * a[n - k];
        const BigRational delta = next[0];
        if (delta == 0) return std::nullopt;
        sign *= delta < 0 ? -1 : 1;
        if (sign < 0) ++negatives;
        a = std::move(next);
    }
    return negatives;
}

inline std::optional<std::size_t> roots_inside_unit_disk(const Polynomial &f)
{
    return roots_inside_disk(f, 1);
}

enum class RadiusClass { inside_unit_disk, all_roots_on_unit_circle, mixed };

inline const char *to_string(RadiusClass r)
{
    switch (r) {
    case RadiusClass::inside_unit_disk: return "inside_unit_disk";
    case RadiusClass::all_roots_on_unit_circle: return "all_roots_on_unit_circle";
    case RadiusClass::mixed: return "mixed";
    }
    return "?";
}

struct Factor {
    Polynomial polynomial; // primitive, integer coefficients, positive leading coefficient
    std::size_t multiplicity = 1;
};

struct Factorization {
    BigRational unit = 1;
    std::vector<Factor> factors;
    bool complete = true; // false if some factor could not be certified irreducible
};

namespace detail
{

// Positive divisors of |n|, n != 0; nullopt if |n| is too large to factor by trial division.
inline std::optional<std::vector<BigInt>> divisors(BigInt n)
{
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    if (n > BigInt(1000000000000LL)) return std::nullopt;
    std::vector<std::pair<BigInt, unsigned>> pf;
    for (BigInt p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) pf.emplace_back(p, e);
    }
    if (n > 1) pf.emplace_back(n, 1);
    std::vector<BigInt> ds{1};
    for (const auto &[p, e] : pf) {
        const std::size_t sz = ds.size();
        BigInt pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

// Yun's square-free decomposition of a nonconstant polynomial.
inline std::vector<std::pair<Polynomial, std::size_t>> squarefree(const Polynomial &f)
{
    std::vector<std::pair<Polynomial, std::size_t>> out;
    const Polynomial fm = f.monic();
    const Polynomial a0 = gcd(fm, fm.derivative());
    Polynomial b = divmod(fm, a0).quotient;
    Polynomial c = divmod(fm.derivative(), a0).quotient;
    Polynomial d = c - b.derivative();
    std::size_t i = 1;
    while (b.degree() > 0) {
        const Polynomial a = gcd(b, d);
        if (a.degree() > 0) out.emplace_back(a, i);
        b = divmod(b, a).quotient;
        c = divmod(d, a).quotient;
        d = c - b.derivative();
        ++i;
    }
    return out;
}

inline std::optional<Polynomial> lagrange(const std::vector<BigInt> &xs, const std::vector<BigInt> &ys)
{
    Polynomial acc;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Polynomial term = Polynomial::constant(BigRational(ys[i]));
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            term *= Polynomial{BigRational(-xs[j]), BigRational(1)} *
                    (BigRational(1) / BigRational(xs[i] - xs[j]));
        }
        acc += term;
    }
    return acc;
}

// Splits a primitive square-free polynomial without rational roots into
// irreducible factors (Kronecker). Returns false if the search budget ran out.
inline bool kronecker_split(const Polynomial &h, std::vector<Polynomial> &out)
{
    const int n = h.degree();
    if (n <= 3) {
        out.push_back(h.primitive());
        return true;
    }
    constexpr std::size_t budget = 200000;
    for (int k = 2; k <= n / 2; ++k) {
        std::vector<BigInt> xs, vals;
        std::vector<std::vector<BigInt>> choices;
        for (long long x = 0; static_cast<int>(xs.size()) <= k; x = x > 0 ? -x : -x + 1) {
            const BigRational v = h(BigRational(x));
            if (v == 0) continue;
            xs.emplace_back(x);
            vals.push_back(numerator_of(v));
        }
        std::size_t combos = 1;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            auto ds = divisors(vals[i]);
            if (!ds) return false;
            std::vector<BigInt> opts;
            for (const auto &d : *ds) {
                opts.push_back(d);
                if (i > 0) opts.push_back(-d);
            }
            combos *= opts.size();
            if (combos > budget) return false;
            choices.push_back(std::move(opts));
        }
        std::vector<std::size_t> idx(choices.size(), 0);
        while (true) {
            std::vector<BigInt> ys;
            for (std::size_t i = 0; i < idx.size(); ++i) ys.push_back(choices[i][idx[i]]);
            auto g = lagrange(xs, ys);
            if (g && g->degree() == k && g->has_integer_coefficients()) {
                const auto dm = divmod(h, *g);
                if (dm.remainder.is_zero()) {
                    return kronecker_split(g->primitive(), out) && kronecker_split(dm.quotient.primitive(), out);
                }
            }
            std::size_t i = 0;
            while (i < idx.size() && ++idx[i] == choices[i].size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    out.push_back(h.primitive());
    return true;
}

} // namespace detail

/// Factorization of f over Q into primitive integer irreducibles: square-free
/// decomposition, rational roots, then Kronecker's method on what remains.
inline Factorization factor_over_rationals(const Polynomial &f)
{
    if (f.is_zero()) throw std::invalid_argument("factor_over_rationals: zero polynomial");
    Factorization out;
    const Polynomial prim = f.primitive();
    out.unit = f.leading() / prim.leading();
    if (f.degree() <= 0) {
        out.unit = f.leading();
        return out;
    }
    std::map<std::vector<BigRational>, std::size_t> acc;
    auto record = [&](const Polynomial &p, std::size_t mult) { acc[p.primitive().coefficients()] += mult; };
    for (const auto &[part, mult] : detail::squarefree(prim)) {
        Polynomial rest = part.primitive();
        // Rational roots p/q: p | a0, q | lead.
        while (rest.degree() >= 1 && rest.coefficient(0) == 0) {
            record(Polynomial{0, 1}, mult);
            rest = divmod(rest, Polynomial{0, 1}).quotient.primitive();
        }
        if (rest.degree() >= 1) {
            const auto ps = detail::divisors(numerator_of(rest.coefficient(0)));
            const auto qs = detail::divisors(numerator_of(rest.leading()));
            if (ps && qs) {
                for (const auto &p : *ps) {
                    for (const auto &q : *qs) {
                        for (int sgn : {1, -1}) {
                            const BigRational root = BigRational(p * sgn) / BigRational(q);
                            const Polynomial lin{-root, BigRational(1)};
                            while (rest.degree() >= 1 && rest(root) == 0) {
                                record(lin, mult);
                                rest = divmod(rest, lin).quotient.primitive();
                            }
                        }
                    }
                }
            } else {
                out.complete = false;
            }
        }
        if (rest.degree() >= 1) {
            std::vector<Polynomial> parts;
            if (!detail::kronecker_split(rest, parts)) {
                out.complete = false;
                parts = {rest};
            }
            for (const auto &p : parts) record(p, mult);
        }
    }
    for (const auto &[coeffs, mult] : acc) out.factors.push_back({Polynomial(coeffs), mult});
    std::sort(out.factors.begin(), out.factors.end(), [](const Factor &a, const Factor &b) {
        return a.polynomial.degree() != b.polynomial.degree() ? a.polynomial.degree() < b.polynomial.degree()
                                                              : a.polynomial.coefficients() < b.polynomial.coefficients();
    });
    Polynomial check = Polynomial::constant(1);
    for (const auto &fa : out.factors) check *= fa.polynomial.pow(fa.multiplicity);
    out.unit = f.leading() / check.leading();
    if (check * out.unit != f) throw std::logic_error("factor_over_rationals: product does not reproduce input");
    return out;
}

struct DenominatorAnalysis {
    RadiusClass radius_class = RadiusClass::all_roots_on_unit_circle;
    std::optional<std::size_t> s; // q = (1 - t^s)^d exactly
    std::optional<std::size_t> d;
    std::vector<std::pair<std::size_t, std::size_t>> cyclotomic_orders; // (k, multiplicity of Phi_k)
    std::size_t period = 1;                                              // lcm of the cyclotomic orders
    Polynomial non_cyclotomic;                                           // q with cyclotomic factors removed
    std::optional<std::size_t> roots_inside;   // exact count in |z| < 1
    std::size_t roots_inside_at_least = 0;     // certified by a smaller radius when the count above is singular
    Factorization factorization;
    std::vector<std::string> caveats;
};

/// Locates the roots of q (q(0) = 1) relative to the unit circle.
///
/// Cyclotomic factors are removed by trial division with Phi_k,
/// k <= 2 deg(q)^2 + 16. If nothing else is left, every root lies on the
/// unit circle (confirmed by q | (1 - t^L)^deg q). Otherwise the Schur-Cohn
/// count on the remaining factor decides whether some root is strictly
/// inside the disk. When that count is singular, disks of radius 1 - 2^-k
/// are tried instead; a zero found there is certainly inside. If neither
/// settles it, the class is "mixed".
inline DenominatorAnalysis denominator_analysis(const Polynomial &q)
{
    if (q.coefficient(0) != 1) {
        throw std::invalid_argument("denominator_analysis: q(0) must be 1");
    }
    DenominatorAnalysis out;
    out.factorization = factor_over_rationals(q);
    const std::size_t deg = static_cast<std::size_t>(q.degree());
    if (deg == 0) {
        out.s = 1;
        out.d = 0;
        return out;
    }
    Polynomial rest = q;
    const std::size_t bound = 2 * deg * deg + 16;
    for (std::size_t k = 1; k <= bound && rest.degree() > 0; ++k) {
        if (euler_phi(k) > static_cast<std::uint64_t>(rest.degree())) continue;
        const Polynomial phi = cyclotomic(k);
        std::size_t mult = 0;
        while (rest.degree() >= phi.degree()) {
            auto dm = divmod(rest, phi);
            if (!dm.remainder.is_zero()) break;
            rest = dm.quotient;
            ++mult;
        }
        if (mult) {
            out.cyclotomic_orders.emplace_back(k, mult);
            out.period = std::lcm(out.period, k);
        }
    }
    out.non_cyclotomic = rest;
    if (rest.degree() <= 0) {
        out.radius_class = RadiusClass::all_roots_on_unit_circle;
        const Polynomial one_minus = Polynomial::constant(1) - Polynomial::monomial(1, out.period);
        if (!divides(q, one_minus.pow(deg))) {
            throw std::logic_error("denominator_analysis: cyclotomic product does not divide (1 - t^L)^deg");
        }
        std::size_t d1 = 0;
        for (const auto &[k, m] : out.cyclotomic_orders) {
            if (k == 1) d1 = m;
        }
        if (one_minus.pow(d1) == q) {
            out.s = out.period;
            out.d = d1;
        } else {
            out.caveats.push_back("mixed cyclotomic denominator");
        }
        return out;
    }
    out.roots_inside = roots_inside_unit_disk(rest);
    if (out.roots_inside) {
        out.roots_inside_at_least = *out.roots_inside;
    } else {
        // singular at radius 1: any zero found in |z| < 1 - 2^-k is strictly inside
        BigRational gap = make_rational(1, 2);
        for (int k = 1; k <= 64; ++k, gap /= 2) {
            const auto c = roots_inside_disk(rest, BigRational(1) - gap);
            if (c) out.roots_inside_at_least = std::max(out.roots_inside_at_least, *c);
        }
    }
    if (out.roots_inside_at_least > 0) {
        out.radius_class = RadiusClass::inside_unit_disk;
    } else {
        out.radius_class = RadiusClass::mixed;
        out.caveats.push_back(out.roots_inside ? "roots off the unit circle but none inside"
                                               : "uncertified root location");
    }
    return out;
}

/// f(n) = branches[n mod period](n) for every n >= onset.
struct QuasiPolynomial {
    std::size_t period = 1;
    std::vector<Polynomial> branches;
    std::size_t onset = 0;
    std::size_t gk = 0;         // d of the denominator (1 - t^s)^d
    int max_branch_degree = -1; // -1 when every branch is zero

    BigRational operator()(std::size_t n) const
    {
        return branches[n % period](n);
    }
};

/// Rewrites a series whose poles all lie on the unit circle over the
/// denominator (1 - t^L)^D, L the lcm of the cyclotomic orders and D the
/// largest multiplicity. The result is generally not reduced.
inline std::optional<RationalSeries> to_pure_form(const RationalSeries &series)
{
    const RationalSeries red = series.reduced();
    const auto an = denominator_analysis(red.denominator);
    if (an.radius_class != RadiusClass::all_roots_on_unit_circle) return std::nullopt;
    std::size_t dmax = 0;
    for (const auto &[k, m] : an.cyclotomic_orders) dmax = std::max(dmax, m);
    const Polynomial pure = (Polynomial::constant(1) - Polynomial::monomial(1, an.period)).pow(dmax);
    const auto dm = divmod(pure, red.denominator);
    return RationalSeries{red.numerator * dm.quotient, pure};
}

/// Splits f into `period` polynomial branches by residue class. The
/// denominator must be exactly (1 - t^s)^d. `samples` must be the leading
/// coefficients of the series and are re-checked against the branches.
inline QuasiPolynomial quasi_polynomial(const RationalSeries &series, const DimensionSequence &samples,
                                        std::size_t window = default_window)
{
    const Polynomial &q = series.denominator;
    if (q.coefficient(0) != 1) throw std::invalid_argument("quasi_polynomial: denominator must satisfy q(0) = 1");
    const auto an = denominator_analysis(q);
    if (!an.s || !an.d) throw std::invalid_argument("quasi_polynomial: denominator is not of the form (1 - t^s)^d");
    const std::size_t s = *an.s, d = *an.d;

    const auto given = samples.as_rationals();
    if (series.expand(given.size()) != given) {
        throw std::invalid_argument("quasi_polynomial: samples are not the coefficients of the series");
    }
    const int pdeg = series.numerator.degree();
    const std::size_t onset_bound =
        pdeg < 0 || static_cast<std::size_t>(pdeg) < s * d ? 0 : static_cast<std::size_t>(pdeg) - s * d + 1;
    for (std::size_t i = 0; i < s; ++i) {
        std::size_t have = 0;
        for (std::size_t n = std::max(onset_bound, i); n < given.size(); ++n) {
            if (n % s == i) ++have;
        }
        if (have < std::max<std::size_t>(d, 1)) {
            throw std::invalid_argument("quasi_polynomial: residue class " + std::to_string(i) + " has " +
                                        std::to_string(have) + " samples past the onset, need " +
                                        std::to_string(std::max<std::size_t>(d, 1)));
        }
    }

    QuasiPolynomial qp;
    qp.period = s;
    qp.gk = d;
    const std::size_t per_branch = (onset_bound + s - 1) / s + 2 * window + 4 + d;
    const auto f = series.expand(s * per_branch);
    for (std::size_t i = 0; i < s; ++i) {
        DimensionSequence sub{{}, SequenceMeaning::cumulative};
        for (std::size_t k = 0; k < per_branch; ++k) {
            if (!is_integer(f[i + s * k])) throw std::invalid_argument("quasi_polynomial: series has non-integer coefficients");
            sub.values.push_back(numerator_of(f[i + s * k]));
        }
        const auto h = detect_polynomial(sub, window);
        if (!h) throw std::logic_error("quasi_polynomial: branch " + std::to_string(i) + " is not polynomial");
        const Polynomial in_k = from_binomial_basis(h->form);
        const Polynomial in_n = in_k.compose_linear(BigRational(1) / s, -BigRational(i) / s);
        qp.branches.push_back(in_n);
        qp.max_branch_degree = std::max(qp.max_branch_degree, in_n.degree());
    }
    std::size_t onset = f.size();
    while (onset > 0 && qp(onset - 1) == f[onset - 1]) --onset;
    qp.onset = onset;
    for (std::size_t n = qp.onset; n < given.size(); ++n) {
        if (qp(n) != given[n]) throw std::logic_error("quasi_polynomial: branch disagrees with sample");
    }
    if (d > 0 && series.numerator(1) != 0 && qp.max_branch_degree != static_cast<int>(d) - 1) {
        throw std::logic_error("quasi_polynomial: max branch degree differs from d - 1");
    }
    return qp;
}

} // namespace gkdim

#endif
