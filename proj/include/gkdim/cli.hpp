#ifndef GKDIM_CLI_HPP
#define GKDIM_CLI_HPP

// JSON front end for the gkdim tool. Everything here is reachable from tests
// through run() / run_text() / main_entry(); tools/gkdim.cpp is a thin
// wrapper around main_entry().
//
// Exit codes: 0 success, 1 inconclusive (report still written), 2 unreadable
// or malformed input / bad options, 3 schema violation.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gkdim/axioms.hpp>
#include <gkdim/exactnum.hpp>
#include <gkdim/growth.hpp>
#include <gkdim/hilbert.hpp>
#include <gkdim/poincare.hpp>
#include <gkdim/presentations.hpp>
#include <gkdim/samuel.hpp>

namespace gkdim::cli
{

using json = nlohmann::json;

inline constexpr int spec_version = 1;
inline constexpr const char *tool_version = "0.1.0";

enum ExitCode : int { ok = 0, inconclusive = 1, malformed = 2, schema = 3 };

/// Unreadable file or invalid JSON text.
class InputError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, text };

struct RunConfig {
    std::string command;
    std::string input_path;
    std::size_t max_degree = 30;
    std::size_t window = default_window;
    std::size_t confirm = default_confirm;
    std::string output; // empty: standard output
    Format format = Format::json;
    std::optional<std::uint64_t> h_override;
};

inline const std::vector<std::string> &commands()
{
    static const std::vector<std::string> c{"analyze", "hilbert", "poincare", "check-ses", "chain", "refilter", "classify"};
    return c;
}

struct ParsedSpec {
    std::optional<AlgebraSpec> algebra;
    std::optional<ModuleSpec> module;
    std::optional<SubmoduleIdeals> ses;
    std::optional<std::vector<SubmoduleIdeals>> chain;
    std::optional<DimensionSequence> sequence;
    std::optional<std::vector<std::uint64_t>> weights;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail
{

inline const json &require(const json &obj, const char *key, const std::string &path)
{
    if (!obj.is_object()) throw SpecError(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SpecError(path + "." + key, "missing field");
    return *it;
}

inline std::uint64_t get_natural(const json &j, const std::string &path)
{
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    throw SpecError(path, "expected a nonnegative integer");
}

inline BigInt get_bigint(const json &j, const std::string &path)
{
    if (j.is_number_unsigned()) return BigInt(j.get<std::uint64_t>());
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() > start && s.find_first_not_of("0123456789", start) == std::string::npos) return BigInt(s);
    }
    throw SpecError(path, "expected an integer");
}

// An integer, a [num, den] pair, or a "num/den" string.
inline BigRational get_rational(const json &j, const std::string &path)
{
    BigInt num, den = 1;
    if (j.is_array()) {
        if (j.size() != 2) throw SpecError(path, "rational must be a [numerator, denominator] pair");
        num = get_bigint(j[0], path + "[0]");
        den = get_bigint(j[1], path + "[1]");
    } else if (j.is_string() && j.get<std::string>().find('/') != std::string::npos) {
        const auto s = j.get<std::string>();
        const auto slash = s.find('/');
        num = get_bigint(json(s.substr(0, slash)), path);
        den = get_bigint(json(s.substr(slash + 1)), path);
    } else {
        num = get_bigint(j, path);
    }
    if (den == 0) throw SpecError(path, "zero denominator");
    return make_rational(num, den);
}

inline std::string get_string(const json &j, const std::string &path)
{
    if (!j.is_string()) throw SpecError(path, "expected a string");
    return j.get<std::string>();
}

inline const json &get_array(const json &j, const std::string &path)
{
    if (!j.is_array()) throw SpecError(path, "expected an array");
    return j;
}

inline std::vector<NormalMonomial> parse_ideal(const json &j, const AlgebraSpec &a, const std::string &path)
{
    std::vector<NormalMonomial> out;
    const auto &arr = get_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        out.push_back(parse_monomial(get_string(arr[i], p), a, p));
    }
    return out;
}

// One ideal per summand; a flat list of monomials is accepted for modules
// with a single summand.
inline SubmoduleIdeals parse_per_summand(const json &j, const AlgebraSpec &a, std::size_t summands, const std::string &path)
{
    const auto &arr = get_array(j, path);
    const bool flat = arr.empty() || arr.front().is_string();
    if (flat) {
        if (summands != 1) throw SpecError(path, "give one ideal per summand as a list of lists");
        return {parse_ideal(arr, a, path)};
    }
    SubmoduleIdeals out;
    for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(parse_ideal(arr[k], a, path + "[" + std::to_string(k) + "]"));
    return out;
}

inline MultiDegree parse_degree(const json &j, const std::string &path)
{
    MultiDegree d;
    if (j.is_number()) {
        d.components.push_back(get_natural(j, path));
        return d;
    }
    const auto &arr = get_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) d.components.push_back(get_natural(arr[i], path + "[" + std::to_string(i) + "]"));
    return d;
}

inline std::vector<Generator> parse_generators(const json &j, const std::string &path)
{
    std::vector<Generator> out;
    const auto &arr = get_array(j, path);
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto p = path + "[" + std::to_string(i) + "]";
        Generator g;
        g.name = get_string(require(arr[i], "name", p), p + ".name");
        const auto it = arr[i].find("degree");
        g.degree = it == arr[i].end() ? MultiDegree{1} : parse_degree(*it, p + ".degree");
        out.push_back(std::move(g));
    }
    return out;
}

inline AlgebraKind parse_kind(const json &j)
{
    const auto s = get_string(j, "algebra.kind");
    for (auto k : {AlgebraKind::polynomial, AlgebraKind::quantum_affine, AlgebraKind::weyl, AlgebraKind::pbw_weighted,
                   AlgebraKind::catalog}) {
        if (s == to_string(k)) return k;
    }
    throw SpecError("algebra.kind", "unknown kind '" + s + "'");
}

inline AlgebraSpec parse_algebra(const json &j)
{
    const std::string path = "algebra";
    if (!j.is_object()) throw SpecError(path, "expected an object");
    const AlgebraKind kind = parse_kind(require(j, "kind", path));
    AlgebraSpec a;
    if (kind == AlgebraKind::catalog) {
        a = catalog_algebra(get_string(require(j, "catalog_id", path), "algebra.catalog_id"));
        validate(a);
        return a;
    }
    if (kind == AlgebraKind::weyl) {
        const auto n = get_natural(require(j, "weyl_rank", path), "algebra.weyl_rank");
        if (n == 0) throw SpecError("algebra.weyl_rank", "rank must be >= 1");
        a = weyl_algebra(n);
        if (j.contains("generators")) a.generators = parse_generators(j["generators"], "algebra.generators");
        validate(a);
        return a;
    }
    a.kind = kind;
    a.generators = parse_generators(require(j, "generators", path), "algebra.generators");
    if (kind == AlgebraKind::quantum_affine) {
        const auto &rows = get_array(require(j, "lambda", path), "algebra.lambda");
        LambdaMatrix L;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto rp = "algebra.lambda[" + std::to_string(i + 1) + "]";
            const auto &row = get_array(rows[i], rp);
            std::vector<BigRational> r;
            for (std::size_t k = 0; k < row.size(); ++k) r.push_back(get_rational(row[k], rp + "[" + std::to_string(k + 1) + "]"));
            L.push_back(std::move(r));
        }
        a.lambda = std::move(L);
    }
    if (kind == AlgebraKind::pbw_weighted && j.contains("relations")) {
        const auto &rels = get_array(j["relations"], "algebra.relations");
        for (std::size_t r = 0; r < rels.size(); ++r) {
            const auto p = "algebra.relations[" + std::to_string(r) + "]";
            const auto &lhs = get_array(require(rels[r], "lhs", p), p + ".lhs");
            if (lhs.size() != 2) throw SpecError(p + ".lhs", "expected two generator names");
            PbwRelation rel;
            const auto u = a.generator_index(get_string(lhs[0], p + ".lhs[0]"));
            const auto l = a.generator_index(get_string(lhs[1], p + ".lhs[1]"));
            if (!u || !l) throw SpecError(p + ".lhs", "unknown generator");
            rel.upper = *u;
            rel.lower = *l;
            if (rels[r].contains("leading")) rel.leading = get_rational(rels[r]["leading"], p + ".leading");
            if (rels[r].contains("lower")) {
                const auto &terms = get_array(rels[r]["lower"], p + ".lower");
                for (std::size_t t = 0; t < terms.size(); ++t) {
                    const auto tp = p + ".lower[" + std::to_string(t) + "]";
                    const auto c = get_rational(require(terms[t], "coefficient", tp), tp + ".coefficient");
                    const auto m = parse_monomial(get_string(require(terms[t], "monomial", tp), tp + ".monomial"), a,
                                                  tp + ".monomial");
                    rel.tail.add(m, c);
                }
            }
            a.relations.push_back(std::move(rel));
        }
    }
    validate(a);
    return a;
}

inline ModuleSpec parse_module(const json &j, const AlgebraSpec &a)
{
    if (!j.is_object()) throw SpecError("module", "expected an object");
    ModuleSpec m;
    if (j.contains("summands")) {
        const auto &arr = get_array(j["summands"], "module.summands");
        for (std::size_t s = 0; s < arr.size(); ++s) {
            const auto p = "module.summands[" + std::to_string(s) + "]";
            if (!arr[s].is_object()) throw SpecError(p, "expected an object");
            Summand sm;
            if (arr[s].contains("shift")) sm.shift = get_natural(arr[s]["shift"], p + ".shift");
            if (arr[s].contains("ideal")) sm.ideal = parse_ideal(arr[s]["ideal"], a, p + ".ideal");
            m.summands.push_back(std::move(sm));
        }
    }
    if (j.contains("negative_shift")) m.negative_shift = get_natural(j["negative_shift"], "module.negative_shift");
    validate(a, m);
    return m;
}

} // namespace detail

/// Parses and validates a spec document. Throws InputError for text that is
/// not JSON and SpecError (with a field path) for schema violations.
inline ParsedSpec parse_spec_text(const std::string &text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw SpecError("", "top level must be an object");
    ParsedSpec out;
    if (doc.contains("algebra")) out.algebra = detail::parse_algebra(doc["algebra"]);
    if (doc.contains("module")) {
        if (!out.algebra) throw SpecError("module", "a module needs an algebra");
        out.module = detail::parse_module(doc["module"], *out.algebra);
    }
    const std::size_t summands = out.module ? out.module->summands.size() : 1;
    if (doc.contains("ses")) {
        if (!out.algebra) throw SpecError("ses", "an exact sequence needs an algebra");
        out.ses = detail::parse_per_summand(detail::require(doc["ses"], "sub_ideal", "ses"), *out.algebra, summands,
                                            "ses.sub_ideal");
    }
    if (doc.contains("chain")) {
        if (!out.algebra) throw SpecError("chain", "a chain needs an algebra");
        const auto &levels = detail::get_array(doc["chain"], "chain");
        std::vector<SubmoduleIdeals> chain;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            chain.push_back(
                detail::parse_per_summand(levels[i], *out.algebra, summands, "chain[" + std::to_string(i) + "]"));
        }
        out.chain = std::move(chain);
    }
    if (doc.contains("sequence")) {
        const auto &arr = detail::get_array(doc["sequence"], "sequence");
        DimensionSequence s;
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto p = "sequence[" + std::to_string(i) + "]";
            s.values.push_back(detail::get_bigint(arr[i], p));
            if (s.values.back() < 0) throw SpecError(p, "dimensions must be nonnegative");
        }
        if (doc.contains("sequence_meaning")) {
            const auto m = detail::get_string(doc["sequence_meaning"], "sequence_meaning");
            if (m == "graded_piece") {
                s.meaning = SequenceMeaning::graded_piece;
            } else if (m != "cumulative") {
                throw SpecError("sequence_meaning", "expected 'cumulative' or 'graded_piece'");
            }
        }
        out.sequence = std::move(s);
    }
    if (doc.contains("weights")) {
        const auto &arr = detail::get_array(doc["weights"], "weights");
        std::vector<std::uint64_t> w;
        for (std::size_t i = 0; i < arr.size(); ++i) w.push_back(detail::get_natural(arr[i], "weights[" + std::to_string(i) + "]"));
        out.weights = std::move(w);
    }
    return out;
}

inline ParsedSpec parse_spec(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str());
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

// Integers that do not fit in 64 bits are written as decimal strings.
inline json big_json(const BigInt &x)
{
    if (fits_int64(x)) return json(static_cast<std::int64_t>(x));
    return json(gkdim::to_string(x));
}

inline json rational_json(const BigRational &r)
{
    return json::array({big_json(numerator_of(r)), big_json(denominator_of(r))});
}

inline json sequence_json(const std::vector<BigInt> &v)
{
    json a = json::array();
    for (const auto &x : v) a.push_back(big_json(x));
    return a;
}

inline json polynomial_json(const Polynomial &p, const std::string &var = "t")
{
    json c = json::array();
    for (const auto &x : p.coefficients()) c.push_back(rational_json(x));
    return {{"coefficients", c}, {"text", p.to_string(var)}};
}

inline json series_json(const RationalSeries &s)
{
    return {{"numerator", polynomial_json(s.numerator)},
            {"denominator", polynomial_json(s.denominator)},
            {"text", s.to_string()}};
}

inline json form_json(const BinomialForm &f)
{
    json c = json::array();
    for (const auto &x : f.coefficients()) c.push_back(rational_json(x));
    return {{"binomial_coefficients", c}, {"text", f.to_string()}};
}

inline json recurrence_json(const Recurrence &r)
{
    json c = json::array();
    for (const auto &x : r.coefficients) c.push_back(rational_json(x));
    return {{"order", r.order}, {"coefficients", c}, {"onset", r.onset}};
}

inline json denominator_json(const DenominatorAnalysis &d)
{
    json j{{"radius_class", to_string(d.radius_class)}, {"period", d.period}, {"caveats", d.caveats}};
    j["s"] = d.s ? json(*d.s) : json(nullptr);
    j["d"] = d.d ? json(*d.d) : json(nullptr);
    json cyc = json::array();
    for (const auto &[k, m] : d.cyclotomic_orders) cyc.push_back({{"order", k}, {"multiplicity", m}});
    j["cyclotomic_factors"] = cyc;
    j["roots_inside_unit_disk"] = d.roots_inside ? json(*d.roots_inside) : json(nullptr);
    j["roots_inside_at_least"] = d.roots_inside_at_least;
    json f = json::array();
    for (const auto &x : d.factorization.factors) {
        f.push_back({{"factor", polynomial_json(x.polynomial)}, {"multiplicity", x.multiplicity}});
    }
    j["factorization"] = {{"unit", rational_json(d.factorization.unit)},
                          {"factors", f},
                          {"complete", d.factorization.complete}};
    return j;
}

inline json quasi_json(const QuasiPolynomial &q)
{
    json b = json::array();
    for (const auto &p : q.branches) b.push_back(polynomial_json(p, "n"));
    return {{"period", q.period},
            {"onset", q.onset},
            {"gk", q.gk},
            {"max_branch_degree", q.max_branch_degree},
            {"branches", b}};
}

inline json gamma_json(const GammaEstimate &g)
{
    return {{"value", g.value}, {"trend", to_string(g.trend)}, {"diagnostic_only", true}};
}

inline json growth_json(const GrowthReport &r)
{
    json j{{"classification", to_string(r.classification)}, {"evidence", r.evidence}};
    j["gk"] = r.gk ? json(*r.gk) : json(nullptr);
    j["multiplicity"] = r.multiplicity ? rational_json(*r.multiplicity) : json(nullptr);
    j["gamma_estimate"] = r.gamma ? gamma_json(*r.gamma) : json(nullptr);
    if (r.hilbert_samuel) {
        j["hilbert_samuel"] = {{"form", form_json(r.hilbert_samuel->form)},
                               {"stabilization_index", r.hilbert_samuel->stabilization_index},
                               {"samples", r.hilbert_samuel->samples}};
    }
    if (r.recurrence) j["recurrence"] = recurrence_json(*r.recurrence);
    if (r.series) j["series"] = series_json(*r.series);
    if (r.denominator) j["denominator"] = denominator_json(*r.denominator);
    if (r.quasi) j["quasi_polynomial"] = quasi_json(*r.quasi);
    return j;
}

inline json optional_gk_json(const std::optional<std::size_t> &g)
{
    return g ? json(*g) : json(nullptr);
}

inline json axiom_json(const AxiomReport &r)
{
    json j{{"case", to_string(r.axiom_case)},
           {"exactness_ok", r.exactness_ok},
           {"additivity_ok", r.additivity_ok},
           {"clause_d_ok", r.clause_d_ok},
           {"notes", r.notes}};
    j["gk_triple"] = json::array({optional_gk_json(r.gk_triple[0]), optional_gk_json(r.gk_triple[1]),
                                  optional_gk_json(r.gk_triple[2])});
    if (r.e_values) {
        j["e_values"] = json::array({rational_json((*r.e_values)[0]), rational_json((*r.e_values)[1]),
                                     rational_json((*r.e_values)[2])});
    } else {
        j["e_values"] = nullptr;
    }
    j["dimensions"] = {{"sub", sequence_json(r.sub.values)},
                       {"big", sequence_json(r.big.values)},
                       {"quotient", sequence_json(r.quotient.values)}};
    return j;
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct RunOutcome {
    int exit_code = ExitCode::ok;
    json report;
    std::string rendered;
};

namespace detail
{

struct Payload {
    json body = json::object();
    std::vector<std::string> warnings;
    bool inconclusive = false;

    void warn(const std::string &w)
    {
        for (const auto &x : warnings) {
            if (x == w) return;
        }
        warnings.push_back(w);
    }
};

inline const AlgebraSpec &need_algebra(const ParsedSpec &p, const std::string &cmd)
{
    if (!p.algebra) throw SpecError("algebra", cmd + " needs an algebra");
    return *p.algebra;
}

inline void check_length(const RunConfig &c)
{
    if (c.window < 2) throw SpecError("--window", "window must be >= 2");
    if (c.max_degree + 1 < 2 * c.window + 4) {
        throw SpecError("--max-degree", "need max degree >= 2*window + 3 (" + std::to_string(2 * c.window + 3) + ")");
    }
}

// The analyzed sequence: raw data if given, else module or regular dims.
inline DimensionSequence source_sequence(const ParsedSpec &p, const RunConfig &c, json &body)
{
    if (p.sequence) {
        body["source"] = "sequence";
        const auto s = p.sequence->cumulative();
        if (s.size() < 12) throw SpecError("sequence", "need at least 12 entries");
        return s;
    }
    const auto &a = need_algebra(p, c.command);
    body["source"] = p.module ? "module" : "algebra";
    return module_dim_sequence(a, p.module ? *p.module : ModuleSpec::regular(), c.max_degree);
}

inline void add_growth_warnings(Payload &out, const GrowthReport &r)
{
    for (const auto &w : r.warnings) out.warn(w);
    out.inconclusive = r.classification == GrowthClass::inconclusive;
}

inline Payload cmd_classify(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto s = source_sequence(p, c, out.body);
    const auto r = classify_growth(s, {c.window, c.confirm});
    out.body["dimensions"] = sequence_json(s.values);
    out.body["growth"] = growth_json(r);
    add_growth_warnings(out, r);
    return out;
}

inline Payload cmd_analyze(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto s = source_sequence(p, c, out.body);
    const auto r = classify_growth(s, {c.window, c.confirm});
    out.body["dimensions"] = sequence_json(s.values);
    out.body["graded_dimensions"] = sequence_json(s.graded().values);
    out.body["growth"] = growth_json(r);
    out.body["classification"] = to_string(r.classification);
    out.body["gk"] = r.gk ? json(*r.gk) : json(nullptr);
    out.body["multiplicity"] = r.multiplicity ? rational_json(*r.multiplicity) : json(nullptr);
    add_growth_warnings(out, r);
    if (!p.algebra || p.sequence) return out;

    const auto &a = *p.algebra;
    const ModuleSpec m = p.module ? *p.module : ModuleSpec::regular();
    const HolonomyCatalog catalog{c.h_override};
    const auto h = catalog.lookup(a);
    if (h && r.hilbert_samuel && !r.hilbert_samuel->is_zero()) {
        const auto d = holonomic_defect(a, m, catalog, c.max_degree, c.window);
        out.body["holonomic"] = {{"gk", d.gk}, {"h", d.h}, {"defect", d.defect}, {"min_holonomic", d.min_holonomic}};
    }
    if (h && !m.negative_shift && m.summands.size() == 1 && a.kind != AlgebraKind::catalog) {
        const ModuleFit fa = fit_module(algebra_dim_sequence(a, c.max_degree), c.window);
        if (fa.detected && !fa.zero) {
            const auto v = torsion_check_cyclic(a, !m.summands[0].ideal.empty(), fa.gk, *h);
            out.body["torsion"] = {{"applicable", v.applicable}, {"torsion", v.torsion}, {"note", v.note}};
        }
    }
    return out;
}

inline RationalSeries add_series(const RationalSeries &x, const RationalSeries &y)
{
    return {x.numerator * y.denominator + y.numerator * x.denominator, x.denominator * y.denominator};
}

inline Payload cmd_hilbert(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto &a = need_algebra(p, c.command);
    if (a.kind == AlgebraKind::catalog) throw SpecError("algebra.kind", "hilbert needs a monomial presentation");
    const ModuleSpec m = p.module ? *p.module : ModuleSpec::regular();
    json summands = json::array();
    std::optional<RationalSeries> total;
    for (const auto &s : m.summands) {
        const auto h = hilbert_series_monomial_quotient(a, s.ideal);
        RationalSeries shifted{h.numerator * Polynomial::monomial(1, s.shift), h.denominator};
        json ideal = json::array();
        for (const auto &g : s.ideal) ideal.push_back(format_monomial(g, a));
        summands.push_back({{"shift", s.shift}, {"ideal", ideal}, {"series", series_json(h)},
                            {"reduced", series_json(h.reduced())}});
        total = total ? add_series(*total, shifted) : shifted;
    }
    if (m.negative_shift) {
        // layers of dimension 2j + 1: graded pieces 1, 2, 2, ...
        const Polynomial one = Polynomial::constant(1), t = Polynomial::monomial(1, 1);
        const RationalSeries two_sided{one + t, one - t};
        total = total ? add_series(*total, two_sided) : two_sided;
    }
    const auto reduced = total->reduced();
    const auto dims = module_dim_sequence(a, m, c.max_degree).graded();
    const auto expanded = reduced.expand(c.max_degree + 1);
    for (std::size_t n = 0; n <= c.max_degree; ++n) {
        if (expanded[n] != BigRational(dims.values[n])) {
            throw std::logic_error("hilbert: module series disagrees with counted dimensions");
        }
    }
    out.body["summands"] = summands;
    out.body["module_series"] = series_json(reduced);
    out.body["graded_dimensions"] = sequence_json(dims.values);
    return out;
}

inline Payload cmd_poincare(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto g = source_sequence(p, c, out.body).graded();
    out.body["graded_dimensions"] = sequence_json(g.values);
    if (g.size() < c.confirm + 2) throw SpecError("--confirm", "sequence too short for the confirmation window");
    const auto r = minimal_recurrence(g, c.confirm);
    if (!r) {
        out.inconclusive = true;
        out.warn(warning::no_recurrence);
        out.body["recurrence"] = nullptr;
        return out;
    }
    const auto series = series_from_recurrence(g, *r);
    const auto d = denominator_analysis(series.denominator);
    out.body["recurrence"] = recurrence_json(*r);
    out.body["series"] = series_json(series);
    out.body["denominator"] = denominator_json(d);
    for (const auto &cv : d.caveats) out.warn(cv);
    if (!d.factorization.complete) out.warn(warning::incomplete_factorization);
    out.warn(warning::sampled_agreement);
    if (d.radius_class == RadiusClass::inside_unit_disk) {
        out.body["growth"] = "exponential";
    } else if (d.radius_class == RadiusClass::all_roots_on_unit_circle) {
        out.body["growth"] = "polynomial";
        const auto pure = to_pure_form(series);
        try {
            const auto q = quasi_polynomial(*pure, g, c.window);
            out.body["quasi_polynomial"] = quasi_json(q);
            out.body["gk"] = q.gk;
            out.warn(warning::quasi_polynomial_fit);
        } catch (const std::invalid_argument &e) {
            out.body["quasi_polynomial"] = nullptr;
            out.body["quasi_polynomial_error"] = e.what();
            out.inconclusive = true;
        }
    } else {
        out.body["growth"] = "inconclusive";
        out.inconclusive = true;
    }
    return out;
}

inline Payload cmd_check_ses(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto &a = need_algebra(p, c.command);
    if (!p.ses) throw SpecError("ses", "check-ses needs an 'ses' object");
    const SESSpec s{a, p.module ? *p.module : ModuleSpec::regular(), *p.ses};
    const auto r = check_multiplicity_axioms(s, c.max_degree, c.window);
    out.body = axiom_json(r);
    out.warn(warning::sampled_agreement);
    out.inconclusive = r.axiom_case == AxiomCase::inconclusive;
    return out;
}

inline Payload cmd_chain(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto &a = need_algebra(p, c.command);
    if (!p.chain) throw SpecError("chain", "chain needs a 'chain' list");
    const auto r = chain_bound_check(a, p.module ? *p.module : ModuleSpec::regular(), *p.chain, c.max_degree, c.window);
    out.body = {{"n", r.n},
                {"e_M", rational_json(r.e_M)},
                {"gk_M", optional_gk_json(r.gk_M)},
                {"bound_ok", r.bound_ok},
                {"nested_ok", r.nested_ok},
                {"precondition_ok", r.precondition_ok},
                {"notes", r.notes}};
    out.warn(warning::sampled_agreement);
    out.warn(warning::dimension_level_only);
    out.inconclusive = !r.gk_M;
    return out;
}

inline Payload cmd_refilter(const ParsedSpec &p, const RunConfig &c)
{
    Payload out;
    const auto &a = need_algebra(p, c.command);
    if (!p.weights) throw SpecError("weights", "refilter needs a 'weights' vector");
    AlgebraSpec b;
    try {
        b = refilter(a, *p.weights);
    } catch (const std::invalid_argument &e) {
        throw SpecError("weights", e.what());
    } catch (const std::domain_error &e) {
        throw SpecError("weights", e.what());
    }
    json gens = json::array();
    for (const auto &g : b.generators) gens.push_back({{"name", g.name}, {"degree", g.degree.components}});
    std::vector<BigInt> layers;
    for (std::size_t i = 0; i <= c.max_degree; ++i) layers.push_back(filtration_layer_dim(b, i));
    out.body = {{"weights", *p.weights},
                {"generators", gens},
                {"semicommutative_leading", true},
                {"layer_dimensions", sequence_json(layers)}};
    return out;
}

inline std::string fnv1a64(const std::string &bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline void render_text(std::ostream &os, const json &j, const std::string &prefix)
{
    if (j.is_object()) {
        for (const auto &[k, v] : j.items()) render_text(os, v, prefix.empty() ? k : prefix + "." + k);
        return;
    }
    if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json &x) { return x.is_object(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) render_text(os, j[i], prefix + "[" + std::to_string(i) + "]");
        return;
    }
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

inline std::string render(const json &report, Format f)
{
    if (f == Format::json) return report.dump(2) + "\n";
    std::ostringstream os;
    render_text(os, report, "");
    return os.str();
}

} // namespace detail

/// Runs one command on the given input text. Never throws for bad input;
/// errors become a report with an "error" object and exit code 2 or 3.
inline RunOutcome run_text(const RunConfig &c, const std::string &text)
{
    RunOutcome o;
    o.report = {{"spec_version", spec_version},
                {"tool_version", tool_version},
                {"command", c.command},
                {"input_digest", "fnv1a64:" + detail::fnv1a64(text)}};
    auto fail = [&](int code, const std::string &kind, const std::string &path, const std::string &msg) {
        o.exit_code = code;
        o.report["error"] = {{"kind", kind}, {"path", path}, {"message", msg}};
        o.report["warnings"] = json::array();
    };
    try {
        if (std::find(commands().begin(), commands().end(), c.command) == commands().end()) {
            throw InputError("unknown command '" + c.command + "'");
        }
        const ParsedSpec p = parse_spec_text(text);
        if (c.command != "refilter" && c.command != "hilbert") detail::check_length(c);
        detail::Payload out;
        if (c.command == "analyze") out = detail::cmd_analyze(p, c);
        else if (c.command == "classify") out = detail::cmd_classify(p, c);
        else if (c.command == "hilbert") out = detail::cmd_hilbert(p, c);
        else if (c.command == "poincare") out = detail::cmd_poincare(p, c);
        else if (c.command == "check-ses") out = detail::cmd_check_ses(p, c);
        else if (c.command == "chain") out = detail::cmd_chain(p, c);
        else out = detail::cmd_refilter(p, c);
        o.report["payload"] = out.body;
        o.report["warnings"] = out.warnings;
        o.exit_code = out.inconclusive ? ExitCode::inconclusive : ExitCode::ok;
    } catch (const InputError &e) {
        fail(ExitCode::malformed, "malformed_input", "", e.what());
    } catch (const SpecError &e) {
        fail(ExitCode::schema, "schema_violation", e.path(), e.what());
    } catch (const std::invalid_argument &e) {
        fail(ExitCode::schema, "schema_violation", "", e.what());
    } catch (const std::exception &e) {
        fail(ExitCode::malformed, "internal_error", "", e.what());
    }
    o.rendered = detail::render(o.report, c.format);
    return o;
}

inline RunOutcome run(const RunConfig &c)
{
    std::ifstream in(c.input_path, std::ios::binary);
    if (!in) {
        RunOutcome o = run_text(c, "");
        o.exit_code = ExitCode::malformed;
        o.report["error"] = {{"kind", "malformed_input"}, {"path", ""}, {"message", "cannot read '" + c.input_path + "'"}};
        o.report.erase("payload");
        o.report["warnings"] = json::array();
        o.rendered = detail::render(o.report, c.format);
        return o;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_text(c, ss.str());
}

/// Command-line entry point; writes the report and returns the exit code.
inline int main_entry(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    CLI::App app{"Growth, GK dimension and multiplicity of filtered algebras and modules", "gkdim"};
    RunConfig c;
    std::string format = "json";
    std::uint64_t h = 0;
    app.add_option("command", c.command, "analyze | hilbert | poincare | check-ses | chain | refilter | classify")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("input", c.input_path, "JSON spec file")->required();
    app.add_option("--max-degree,-N", c.max_degree, "largest degree sampled")->capture_default_str();
    app.add_option("--window,-w", c.window, "constant-difference confirmation window")->capture_default_str();
    app.add_option("--confirm,-c", c.confirm, "recurrence confirmation entries")->capture_default_str();
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--output,-o", c.output, "write the report here instead of standard output");
    auto *ho = app.add_option("--h-override", h, "holonomic number to use instead of the catalog value");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ExitCode::ok;
    } catch (const CLI::CallForVersion &) {
        out << tool_version << "\n";
        return ExitCode::ok;
    } catch (const CLI::ParseError &e) {
        err << "gkdim: " << e.what() << "\n";
        return ExitCode::malformed;
    }
    c.format = format == "text" ? Format::text : Format::json;
    if (ho->count()) c.h_override = h;

    const RunOutcome o = run(c);
    if (o.report.contains("error")) err << "gkdim: " << o.report["error"]["message"].get<std::string>() << "\n";
    if (c.output.empty()) {
        out << o.rendered;
    } else {
        std::ofstream f(c.output, std::ios::binary);
        if (!f) {
            err << "gkdim: cannot write '" << c.output << "'\n";
            return ExitCode::malformed;
        }
        f << o.rendered;
    }
    return o.exit_code;
}

} // namespace gkdim::cli

#endif
