#ifndef GKDIM_PRESENTATIONS_HPP
#define GKDIM_PRESENTATIONS_HPP

// Presentations of filtered algebras and graded modules: generators with
// (multi-)degrees, q-commutation data, the Weyl algebra with its Bernstein
// filtration, weighted PBW-type algebras given by leading-term rules, and
// a small catalog of algebras known only through their dimension data.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gkdim/exactnum.hpp>

namespace gkdim
{

/// Input that violates the presentation schema. path() names the offending
/// field, e.g. "algebra.lambda[2][1]" (matrix indices are 1-based).
class SpecError : public std::invalid_argument
{
public:
    SpecError(std::string path, const std::string &what)
        : std::invalid_argument(path + ": " + what), m_path(std::move(path))
    {
    }
    const std::string &path() const noexcept
    {
        return m_path;
    }

private:
    std::string m_path;
};

// ---------------------------------------------------------------------------
// Multidegrees and admissible orders on N^m
// ---------------------------------------------------------------------------

struct MultiDegree {
    std::vector<std::uint64_t> components;

    MultiDegree() = default;
    explicit MultiDegree(std::vector<std::uint64_t> c) : components(std::move(c)) {}
    MultiDegree(std::initializer_list<std::uint64_t> c) : components(c) {}

    static MultiDegree zero(std::size_t m)
    {
        return MultiDegree(std::vector<std::uint64_t>(m, 0));
    }

    std::size_t size() const
    {
        return components.size();
    }
    std::uint64_t total() const
    {
        return std::accumulate(components.begin(), components.end(), std::uint64_t{0});
    }
    bool is_zero() const
    {
        return std::all_of(components.begin(), components.end(), [](auto c) { return c == 0; });
    }

    friend MultiDegree operator+(const MultiDegree &a, const MultiDegree &b)
    {
        if (a.size() != b.size()) {
            throw std::invalid_argument("MultiDegree: dimension mismatch");
        }
        MultiDegree r = a;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r.components[i] += b.components[i];
        }
        return r;
    }

    friend bool operator==(const MultiDegree &, const MultiDegree &) = default;
    friend auto operator<=>(const MultiDegree &, const MultiDegree &) = default;
};

inline std::uint64_t pair_weight(const MultiDegree &d, std::span<const std::uint64_t> w)
{
    if (d.size() != w.size()) {
        throw std::invalid_argument("weight vector length does not match degree length");
    }
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        s += d.components[i] * w[i];
    }
    return s;
}

enum class OrderKind { lexicographic, degree_lex, weight_lex };

struct AdmissibleOrder {
    OrderKind kind = OrderKind::lexicographic;
    std::vector<std::uint64_t> weight; // weight_lex only; strictly positive

    static AdmissibleOrder lex()
    {
        return {OrderKind::lexicographic, {}};
    }
    static AdmissibleOrder degree_lex()
    {
        return {OrderKind::degree_lex, {}};
    }
    static AdmissibleOrder weighted(std::vector<std::uint64_t> w)
    {
        if (w.empty() || std::any_of(w.begin(), w.end(), [](auto x) { return x == 0; })) {
            throw std::invalid_argument("weight order needs a nonempty strictly positive weight");
        }
        return {OrderKind::weight_lex, std::move(w)};
    }
};

inline std::strong_ordering compare(const AdmissibleOrder &o, const MultiDegree &a, const MultiDegree &b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("compare: dimension mismatch");
    }
    switch (o.kind) {
    case OrderKind::lexicographic:
        break;
    case OrderKind::degree_lex:
        if (auto c = a.total() <=> b.total(); c != 0) return c;
        break;
    case OrderKind::weight_lex:
        if (o.weight.size() != a.size()) {
            throw std::invalid_argument("compare: weight length does not match dimension");
        }
        if (auto c = pair_weight(a, o.weight) <=> pair_weight(b, o.weight); c != 0) return c;
        break;
    }
    return a.components <=> b.components;
}

struct AdmissibilityViolation {
    MultiDegree alpha;
    MultiDegree beta;
    MultiDegree gamma;
    std::string reason;
};

struct AdmissibilityReport {
    bool passed = true;
    std::optional<AdmissibilityViolation> counterexample;
};

namespace detail
{

// Every vector in {0..bound}^dim, in lexicographic order.
inline std::vector<MultiDegree> box(std::size_t dim, std::uint64_t bound)
{
    std::vector<MultiDegree> out;
    MultiDegree cur = MultiDegree::zero(dim);
    for (;;) {
        out.push_back(cur);
        std::size_t i = dim;
        while (i > 0 && cur.components[i - 1] == bound) {
            cur.components[i - 1] = 0;
            --i;
        }
        if (i == 0) return out;
        ++cur.components[i - 1];
    }
}

} // namespace detail

/// Exhaustive check of the admissibility axioms on {0..samples}^dim:
/// antisymmetry/totality, minimality of 0 and translation invariance.
/// `cmp(a, b)` must return a std::strong_ordering.
template <typename Compare>
    requires std::invocable<Compare &, const MultiDegree &, const MultiDegree &>
AdmissibilityReport check_admissibility(Compare &&cmp, std::size_t dim, std::uint64_t samples)
{
    if (samples < 1) {
        throw std::invalid_argument("check_admissibility: samples must be >= 1");
    }
    const auto pts = detail::box(dim, samples);
    const MultiDegree zero = MultiDegree::zero(dim);
    AdmissibilityReport rep;
    for (const auto &b : pts) {
        if (b != zero && cmp(zero, b) != std::strong_ordering::less) {
            rep.passed = false;
            rep.counterexample = AdmissibilityViolation{b, zero, zero, "zero vector is not minimal"};
            return rep;
        }
    }
    for (const auto &a : pts) {
        for (const auto &b : pts) {
            const auto ab = cmp(a, b);
            const auto ba = cmp(b, a);
            const bool consistent = (a == b) ? (ab == 0 && ba == 0) : (ab != 0 && ab == (0 <=> ba));
            if (!consistent) {
                rep.passed = false;
                rep.counterexample = AdmissibilityViolation{a, b, zero, "not a strict total order"};
                return rep;
            }
        }
    }
    for (const auto &a : pts) {
        for (const auto &b : pts) {
            if (cmp(a, b) != std::strong_ordering::less) continue;
            for (const auto &g : pts) {
                if (cmp(a + g, b + g) == std::strong_ordering::greater) {
                    rep.passed = false;
                    rep.counterexample = AdmissibilityViolation{a, b, g, "translation reverses the order"};
                    return rep;
                }
            }
        }
    }
    return rep;
}

inline AdmissibilityReport check_admissibility(const AdmissibleOrder &o, std::uint64_t samples, std::size_t dim = 2)
{
    if (o.kind == OrderKind::weight_lex) {
        dim = o.weight.size();
    }
    return check_admissibility([&o](const MultiDegree &a, const MultiDegree &b) { return compare(o, a, b); }, dim,
                               samples);
}

// ---------------------------------------------------------------------------
// Monomials and linear combinations
// ---------------------------------------------------------------------------

/// Exponent vector over the generators in their fixed normal order. For the
/// Weyl algebra of rank n this is x_1..x_n followed by y_1..y_n.
struct NormalMonomial {
    std::vector<std::uint32_t> exponents;

    NormalMonomial() = default;
    explicit NormalMonomial(std::vector<std::uint32_t> e) : exponents(std::move(e)) {}
    NormalMonomial(std::initializer_list<std::uint32_t> e) : exponents(e) {}

    static NormalMonomial one(std::size_t nvars)
    {
        return NormalMonomial(std::vector<std::uint32_t>(nvars, 0));
    }
    static NormalMonomial variable(std::size_t nvars, std::size_t i, std::uint32_t e = 1)
    {
        NormalMonomial m = one(nvars);
        m.exponents.at(i) = e;
        return m;
    }

    std::size_t size() const
    {
        return exponents.size();
    }
    bool is_one() const
    {
        return std::all_of(exponents.begin(), exponents.end(), [](auto e) { return e == 0; });
    }
    std::uint64_t degree(std::span<const std::uint64_t> weights) const
    {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            s += std::uint64_t{exponents[i]} * weights[i];
        }
        return s;
    }
    std::uint64_t total_degree() const
    {
        return std::accumulate(exponents.begin(), exponents.end(), std::uint64_t{0});
    }
    // this | other
    bool divides(const NormalMonomial &other) const
    {
        for (std::size_t i = 0; i < exponents.size(); ++i) {
            if (exponents[i] > other.exponents[i]) return false;
        }
        return true;
    }

    friend NormalMonomial lcm(const NormalMonomial &a, const NormalMonomial &b)
    {
        NormalMonomial r = a;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r.exponents[i] = std::max(a.exponents[i], b.exponents[i]);
        }
        return r;
    }
    friend NormalMonomial operator*(const NormalMonomial &a, const NormalMonomial &b)
    {
        NormalMonomial r = a;
        for (std::size_t i = 0; i < r.size(); ++i) {
            r.exponents[i] += b.exponents[i];
        }
        return r;
    }

    friend bool operator==(const NormalMonomial &, const NormalMonomial &) = default;
    friend auto operator<=>(const NormalMonomial &, const NormalMonomial &) = default;
};

/// Finite Q-linear combination of normal monomials; zero coefficients are
/// never stored.
class LinearCombo
{
public:
    using map_type = std::map<NormalMonomial, BigRational>;

    LinearCombo() = default;
    LinearCombo(const NormalMonomial &m, const BigRational &c)
    {
        add(m, c);
    }

    void add(const NormalMonomial &m, const BigRational &c)
    {
        if (c == 0) return;
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) m_terms.erase(it);
        }
    }

    const map_type &terms() const
    {
        return m_terms;
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    std::size_t size() const
    {
        return m_terms.size();
    }
    BigRational coefficient(const NormalMonomial &m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? BigRational(0) : it->second;
    }

    friend LinearCombo operator+(LinearCombo a, const LinearCombo &b)
    {
        for (const auto &[m, c] : b.m_terms) a.add(m, c);
        return a;
    }
    friend LinearCombo operator*(LinearCombo a, const BigRational &s)
    {
        if (s == 0) return {};
        for (auto &[m, c] : a.m_terms) c *= s;
        return a;
    }
    friend bool operator==(const LinearCombo &, const LinearCombo &) = default;

private:
    map_type m_terms;
};

// ---------------------------------------------------------------------------
// Algebra and module specifications
// ---------------------------------------------------------------------------

enum class AlgebraKind { polynomial, quantum_affine, weyl, pbw_weighted, catalog };

inline const char *to_string(AlgebraKind k)
{
    switch (k) {
    case AlgebraKind::polynomial: return "polynomial";
    case AlgebraKind::quantum_affine: return "quantum_affine";
    case AlgebraKind::weyl: return "weyl";
    case AlgebraKind::pbw_weighted: return "pbw_weighted";
    case AlgebraKind::catalog: return "catalog";
    }
    return "?";
}

struct Generator {
    std::string name;
    MultiDegree degree;
};

/// Leading-term rule x_upper * x_lower -> leading * x_lower * x_upper + tail,
/// with upper > lower in the generator order.
struct PbwRelation {
    std::size_t upper = 0;
    std::size_t lower = 0;
    BigRational leading = 1;
    LinearCombo tail;
};

using LambdaMatrix = std::vector<std::vector<BigRational>>;

struct AlgebraSpec {
    AlgebraKind kind = AlgebraKind::polynomial;
    std::vector<Generator> generators;
    // quantum_affine: x_j x_i = lambda[i][j] x_i x_j for i < j (0-based here).
    std::optional<LambdaMatrix> lambda;
    std::size_t weyl_rank = 0;
    std::vector<PbwRelation> relations;
    std::string catalog_id;

    std::size_t num_generators() const
    {
        return generators.size();
    }
    std::size_t degree_length() const
    {
        return generators.empty() ? 1 : generators.front().degree.size();
    }
    // N-degree of each generator: the sum of its degree components.
    std::vector<std::uint64_t> weights() const
    {
        std::vector<std::uint64_t> w;
        w.reserve(generators.size());
        for (const auto &g : generators) w.push_back(g.degree.total());
        return w;
    }
    std::optional<std::size_t> generator_index(const std::string &name) const
    {
        for (std::size_t i = 0; i < generators.size(); ++i) {
            if (generators[i].name == name) return i;
        }
        return std::nullopt;
    }
};

inline AlgebraSpec polynomial_algebra(std::size_t d, std::vector<std::uint64_t> weights = {})
{
    AlgebraSpec a;
    a.kind = AlgebraKind::polynomial;
    for (std::size_t i = 0; i < d; ++i) {
        const std::uint64_t w = weights.empty() ? 1 : weights.at(i);
        a.generators.push_back({"x" + std::to_string(i + 1), MultiDegree{w}});
    }
    return a;
}

inline AlgebraSpec base_field()
{
    return polynomial_algebra(0);
}

/// W_n with the Bernstein filtration: x_1..x_n, y_1..y_n all of degree 1.
inline AlgebraSpec weyl_algebra(std::size_t n)
{
    AlgebraSpec a;
    a.kind = AlgebraKind::weyl;
    a.weyl_rank = n;
    for (std::size_t i = 0; i < n; ++i) a.generators.push_back({"x" + std::to_string(i + 1), MultiDegree{1}});
    for (std::size_t i = 0; i < n; ++i) a.generators.push_back({"y" + std::to_string(i + 1), MultiDegree{1}});
    return a;
}

inline AlgebraSpec quantum_affine_space(LambdaMatrix lambda)
{
    AlgebraSpec a;
    a.kind = AlgebraKind::quantum_affine;
    for (std::size_t i = 0; i < lambda.size(); ++i) a.generators.push_back({"x" + std::to_string(i + 1), MultiDegree{1}});
    a.lambda = std::move(lambda);
    return a;
}

// Quantum plane x2 x1 = q x1 x2.
inline AlgebraSpec quantum_plane(const BigRational &q)
{
    return quantum_affine_space({{BigRational(1), q}, {BigRational(1) / q, BigRational(1)}});
}

inline const std::vector<std::string> &catalog_ids()
{
    static const std::vector<std::string> ids{"free_algebra_2", "smith_lie"};
    return ids;
}

inline AlgebraSpec catalog_algebra(const std::string &id)
{
    AlgebraSpec a;
    a.kind = AlgebraKind::catalog;
    a.catalog_id = id;
    if (id == "free_algebra_2") {
        a.generators = {{"x", MultiDegree{1}}, {"y", MultiDegree{1}}};
    } else if (id == "smith_lie") {
        // U(L), L spanned by x, y1, y2, ... with [x, y_i] = y_{i+1}; generated by x, y1.
        a.generators = {{"x", MultiDegree{1}}, {"y1", MultiDegree{1}}};
    } else {
        throw SpecError("algebra.catalog_id", "unknown catalog entry '" + id + "'");
    }
    return a;
}

struct Summand {
    std::uint64_t shift = 0;
    std::vector<NormalMonomial> ideal; // monomial ideal of gr A; empty = free summand
};

/// Finite direct sum of shifted cyclic monomial quotients (gr A)/I. The
/// optional negative_shift summand is the Weyl-module k[x, x^-1] filtered by
/// B_j x^{-negative_shift}, whose layers have dimension 2j + 1.
struct ModuleSpec {
    std::vector<Summand> summands;
    std::optional<std::uint64_t> negative_shift;

    static ModuleSpec regular()
    {
        return ModuleSpec{{Summand{}}, std::nullopt};
    }
    static ModuleSpec cyclic(std::vector<NormalMonomial> ideal, std::uint64_t shift = 0)
    {
        return ModuleSpec{{Summand{shift, std::move(ideal)}}, std::nullopt};
    }
    static ModuleSpec laurent()
    {
        return ModuleSpec{{}, 1};
    }
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

inline std::string lambda_path(std::size_t i, std::size_t j)
{
    return "algebra.lambda[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
}

inline void validate(const AlgebraSpec &a)
{
    const std::size_t n = a.num_generators();
    const std::size_t m = a.degree_length();
    for (std::size_t i = 0; i < n; ++i) {
        const auto path = "algebra.generators[" + std::to_string(i) + "]";
        const auto &g = a.generators[i];
        if (g.name.empty()) throw SpecError(path + ".name", "generator name is empty");
        if (g.degree.size() != m || m == 0) throw SpecError(path + ".degree", "degree vectors must share one length >= 1");
        if (g.degree.is_zero()) throw SpecError(path + ".degree", "generator degree must be nonzero");
        for (std::size_t k = 0; k < i; ++k) {
            if (a.generators[k].name == g.name) throw SpecError(path + ".name", "duplicate generator name '" + g.name + "'");
        }
    }
    switch (a.kind) {
    case AlgebraKind::polynomial:
        break;
    case AlgebraKind::quantum_affine: {
        if (!a.lambda) throw SpecError("algebra.lambda", "quantum_affine requires a lambda matrix");
        const auto &L = *a.lambda;
        if (L.size() != n) throw SpecError("algebra.lambda", "lambda must be " + std::to_string(n) + "x" + std::to_string(n));
        for (std::size_t i = 0; i < n; ++i) {
            if (L[i].size() != n) {
                throw SpecError("algebra.lambda[" + std::to_string(i + 1) + "]", "row has wrong length");
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (L[i][j] == 0) throw SpecError(lambda_path(i, j), "lambda entries must be nonzero");
            }
            if (L[i][i] != 1) throw SpecError(lambda_path(i, i), "diagonal lambda entries must be 1");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (L[i][j] * L[j][i] != 1) {
                    throw SpecError(lambda_path(j, i), "lambda[i][j] * lambda[j][i] must equal 1");
                }
            }
        }
        break;
    }
    case AlgebraKind::weyl:
        if (n != 2 * a.weyl_rank) {
            throw SpecError("algebra.generators", "weyl algebra of rank " + std::to_string(a.weyl_rank) + " needs " +
                                                      std::to_string(2 * a.weyl_rank) + " generators");
        }
        break;
    case AlgebraKind::pbw_weighted:
        for (std::size_t r = 0; r < a.relations.size(); ++r) {
            const auto path = "algebra.relations[" + std::to_string(r) + "]";
            const auto &rel = a.relations[r];
            if (rel.upper >= n || rel.lower >= n || rel.upper <= rel.lower) {
                throw SpecError(path + ".lhs", "left side must be x_j x_i with j after i in generator order");
            }
            if (rel.leading == 0) throw SpecError(path + ".leading", "leading coefficient must be nonzero");
            for (const auto &[mono, c] : rel.tail.terms()) {
                if (mono.size() != n) throw SpecError(path + ".lower", "monomial has wrong number of exponents");
            }
        }
        break;
    case AlgebraKind::catalog: {
        const auto &ids = catalog_ids();
        if (std::find(ids.begin(), ids.end(), a.catalog_id) == ids.end()) {
            throw SpecError("algebra.catalog_id", "unknown catalog entry '" + a.catalog_id + "'");
        }
        break;
    }
    }
}

inline void validate(const AlgebraSpec &a, const ModuleSpec &mod)
{
    if (mod.summands.empty() && !mod.negative_shift) {
        throw SpecError("module.summands", "module needs at least one summand");
    }
    for (std::size_t s = 0; s < mod.summands.size(); ++s) {
        const auto &sm = mod.summands[s];
        if (a.kind == AlgebraKind::catalog && !sm.ideal.empty()) {
            throw SpecError("module.summands[" + std::to_string(s) + "].ideal",
                            "catalog algebras only support free summands");
        }
        for (std::size_t g = 0; g < sm.ideal.size(); ++g) {
            if (sm.ideal[g].size() != a.num_generators()) {
                throw SpecError("module.summands[" + std::to_string(s) + "].ideal[" + std::to_string(g) + "]",
                                "monomial has wrong number of exponents");
            }
        }
    }
    if (mod.negative_shift) {
        if (a.kind != AlgebraKind::weyl || a.weyl_rank == 0) {
            throw SpecError("module.negative_shift", "two-sided summand requires a weyl algebra");
        }
        if (*mod.negative_shift == 0) {
            throw SpecError("module.negative_shift", "negative_shift must be >= 1");
        }
    }
}

/// Parses `name^exp` factors joined by `*`; "1" is the empty monomial.
inline NormalMonomial parse_monomial(const std::string &text, const AlgebraSpec &a, const std::string &path)
{
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    NormalMonomial m = NormalMonomial::one(a.num_generators());
    const std::string body = trim(text);
    if (body.empty()) throw SpecError(path, "empty monomial");
    if (body == "1") return m;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const auto star = body.find('*', pos);
        const std::string factor = trim(body.substr(pos, star == std::string::npos ? std::string::npos : star - pos));
        const auto caret = factor.find('^');
        const std::string name = trim(factor.substr(0, caret));
        std::uint64_t e = 1;
        if (caret != std::string::npos) {
            const std::string es = trim(factor.substr(caret + 1));
            if (es.empty() || !std::all_of(es.begin(), es.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
                es.size() > 9) {
                throw SpecError(path, "bad exponent in '" + factor + "'");
            }
            e = std::stoull(es);
        }
        const auto idx = a.generator_index(name);
        if (!idx) throw SpecError(path, "unknown generator '" + name + "'");
        m.exponents[*idx] += static_cast<std::uint32_t>(e);
        if (star == std::string::npos) break;
        pos = star + 1;
    }
    return m;
}

inline std::string format_monomial(const NormalMonomial &m, const AlgebraSpec &a)
{
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.exponents[i] == 0) continue;
        if (!out.empty()) out += "*";
        out += i < a.generators.size() ? a.generators[i].name : "g" + std::to_string(i + 1);
        if (m.exponents[i] > 1) out += "^" + std::to_string(m.exponents[i]);
    }
    return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Normal ordering
// ---------------------------------------------------------------------------

namespace detail
{

// (x^a y^b)(x^c y^d) in W_1: y^b x^c = sum_k C(b,k) c!/(c-k)! x^(c-k) y^(b-k).
inline void weyl_multiply_into(LinearCombo &out, const NormalMonomial &u, const NormalMonomial &v, std::size_t rank,
                               const BigRational &coeff)
{
    std::vector<std::uint32_t> acc(2 * rank);
    std::function<void(std::size_t, BigRational)> rec = [&](std::size_t i, BigRational c) {
        if (i == rank) {
            out.add(NormalMonomial(acc), c);
            return;
        }
        const std::uint32_t a = u.exponents[i], b = u.exponents[rank + i];
        const std::uint32_t cx = v.exponents[i], d = v.exponents[rank + i];
        for (std::uint32_t k = 0; k <= std::min(b, cx); ++k) {
            // C(b,k) * c!/(c-k)!
            BigInt f = binom(b, k);
            for (std::uint32_t t = 0; t < k; ++t) f *= (cx - t);
            acc[i] = a + cx - k;
            acc[rank + i] = b - k + d;
            rec(i + 1, c * BigRational(f));
        }
    };
    rec(0, coeff);
}

} // namespace detail

inline LinearCombo weyl_multiply(const LinearCombo &p, const LinearCombo &q, std::size_t rank)
{
    LinearCombo out;
    for (const auto &[u, cu] : p.terms()) {
        for (const auto &[v, cv] : q.terms()) {
            detail::weyl_multiply_into(out, u, v, rank, cu * cv);
        }
    }
    return out;
}

/// Rewrites a word in the generators of W_rank (indices 0..rank-1 are x_i,
/// rank..2rank-1 are y_i) into the basis x^alpha y^beta using [y_i, x_i] = 1.
inline LinearCombo normal_order_weyl(std::span<const std::size_t> word, std::size_t rank)
{
    LinearCombo acc(NormalMonomial::one(2 * rank), 1);
    for (const std::size_t g : word) {
        if (g >= 2 * rank) {
            throw std::out_of_range("normal_order_weyl: generator index " + std::to_string(g) + " out of range");
        }
        acc = weyl_multiply(acc, LinearCombo(NormalMonomial::variable(2 * rank, g), 1), rank);
    }
    return acc;
}

/// Sorts a word in a quantum affine space; each inversion (x_j before x_i,
/// i < j) contributes lambda[i][j].
inline LinearCombo normal_order_quantum(std::span<const std::size_t> word, const LambdaMatrix &lambda)
{
    const std::size_t n = lambda.size();
    BigRational scalar = 1;
    NormalMonomial m = NormalMonomial::one(n);
    std::vector<std::uint32_t> seen(n, 0);
    for (const std::size_t g : word) {
        if (g >= n) {
            throw std::out_of_range("normal_order_quantum: generator index " + std::to_string(g) + " out of range");
        }
        // g moves left past every earlier j > g.
        for (std::size_t j = g + 1; j < n; ++j) {
            if (seen[j] != 0) scalar *= pow(lambda[g][j], seen[j]);
        }
        ++seen[g];
        ++m.exponents[g];
    }
    return LinearCombo(m, scalar);
}

// ---------------------------------------------------------------------------
// Leading-term checks and re-filtering
// ---------------------------------------------------------------------------

namespace detail
{

inline std::vector<PbwRelation> implicit_relations(const AlgebraSpec &a)
{
    std::vector<PbwRelation> rels;
    const std::size_t n = a.num_generators();
    switch (a.kind) {
    case AlgebraKind::quantum_affine:
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) rels.push_back({j, i, (*a.lambda)[i][j], {}});
        }
        break;
    case AlgebraKind::weyl:
        for (std::size_t i = 0; i < a.weyl_rank; ++i) {
            rels.push_back({a.weyl_rank + i, i, 1, LinearCombo(NormalMonomial::one(n), 1)});
        }
        break;
    case AlgebraKind::pbw_weighted:
        rels = a.relations;
        break;
    default:
        break;
    }
    return rels;
}

} // namespace detail

/// True iff, after collapsing generator degrees with `collapse`, every
/// relation's lower terms have strictly smaller weight than its leading
/// q-commutator, so the associated graded algebra is semi-commutative.
inline bool check_semicommutative_leading(const AlgebraSpec &a, std::span<const std::uint64_t> collapse)
{
    std::vector<std::uint64_t> gw;
    for (const auto &g : a.generators) gw.push_back(pair_weight(g.degree, collapse));
    for (const auto &rel : detail::implicit_relations(a)) {
        const std::uint64_t lead = gw[rel.upper] + gw[rel.lower];
        for (const auto &[mono, c] : rel.tail.terms()) {
            if (mono.degree(gw) >= lead) return false;
        }
    }
    return true;
}

/// Collapses N^m generator degrees to N via d -> <w, d>.
inline AlgebraSpec refilter(const AlgebraSpec &a, std::span<const std::uint64_t> w)
{
    if (w.size() != a.degree_length()) {
        throw std::invalid_argument("refilter: weight vector has length " + std::to_string(w.size()) + ", expected " +
                                    std::to_string(a.degree_length()));
    }
    if (std::any_of(w.begin(), w.end(), [](auto x) { return x == 0; })) {
        throw std::invalid_argument("refilter: weights must be strictly positive");
    }
    if ((a.kind == AlgebraKind::quantum_affine || a.kind == AlgebraKind::pbw_weighted || a.kind == AlgebraKind::weyl) &&
        !check_semicommutative_leading(a, w)) {
        throw std::domain_error("refilter: leading terms are not q-commuting under this weight vector");
    }
    AlgebraSpec out = a;
    for (auto &g : out.generators) g.degree = MultiDegree{pair_weight(g.degree, w)};
    return out;
}

// ---------------------------------------------------------------------------
// Monomial counting and layer dimensions
// ---------------------------------------------------------------------------

/// counts[n] = number of monomials of weighted degree exactly n, n = 0..N,
/// by a knapsack over generator weights.
inline std::vector<BigInt> monomial_counts(std::span<const std::uint64_t> weights, std::size_t N)
{
    std::vector<BigInt> c(N + 1);
    c[0] = 1;
    for (const auto w : weights) {
        if (w == 0) throw std::invalid_argument("monomial_counts: zero weight");
        for (std::size_t n = w; n <= N; ++n) c[n] += c[n - w];
    }
    return c;
}

namespace detail
{

inline std::vector<BigInt> partition_numbers(std::size_t N)
{
    std::vector<BigInt> p(N + 1);
    p[0] = 1;
    for (std::size_t part = 1; part <= N; ++part) {
        for (std::size_t n = part; n <= N; ++n) p[n] += p[n - part];
    }
    return p;
}

} // namespace detail

/// Graded dimensions 0..N of a catalog algebra.
inline std::vector<BigInt> catalog_graded_dims(const std::string &id, std::size_t N)
{
    std::vector<BigInt> g(N + 1);
    if (id == "free_algebra_2") {
        BigInt p = 1;
        for (std::size_t n = 0; n <= N; ++n, p *= 2) g[n] = p;
    } else if (id == "smith_lie") {
        // PBW monomials in x (deg 1) and y_i (deg i): sum_{k<=n} p(k).
        const auto p = detail::partition_numbers(N);
        BigInt run = 0;
        for (std::size_t n = 0; n <= N; ++n) {
            run += p[n];
            g[n] = run;
        }
    } else {
        throw SpecError("algebra.catalog_id", "unknown catalog entry '" + id + "'");
    }
    return g;
}

/// dim F_i: number of normal monomials of weighted degree <= i.
inline BigInt filtration_layer_dim(const AlgebraSpec &a, std::size_t i)
{
    std::vector<BigInt> g = a.kind == AlgebraKind::catalog ? catalog_graded_dims(a.catalog_id, i)
                                                           : monomial_counts(a.weights(), i);
    BigInt s = 0;
    for (const auto &x : g) s += x;
    return s;
}

} // namespace gkdim

#endif
