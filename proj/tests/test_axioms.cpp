#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <gkdim/axioms.hpp>

#include "families.hpp"
#include "oracles.hpp"

using namespace gkdim;

namespace
{

NormalMonomial mono(std::initializer_list<std::uint32_t> e)
{
    return NormalMonomial(std::vector<std::uint32_t>(e));
}

SESSpec cyclic_ses(std::size_t nv, std::vector<NormalMonomial> I, std::vector<NormalMonomial> J)
{
    return SESSpec{polynomial_algebra(nv), ModuleSpec::cyclic(std::move(I)), {std::move(J)}};
}

ModuleSpec free_module(std::size_t r)
{
    ModuleSpec m;
    for (std::size_t k = 0; k < r; ++k) m.summands.push_back(Summand{0, {}});
    return m;
}

SubmoduleIdeals level(std::size_t r, const std::vector<bool> &alive)
{
    SubmoduleIdeals s(r);
    for (std::size_t k = 0; k < r; ++k) {
        if (alive[k]) s[k] = {NormalMonomial::one(1)};
    }
    return s;
}

} // namespace

TEST(Exactness, XyModX)
{
    // 0 -> (x) -> k[x,y] -> k[y] -> 0
    const auto r = check_multiplicity_axioms(cyclic_ses(2, {}, {mono({1, 0})}), 25);
    ASSERT_TRUE(r.e_values);
    EXPECT_EQ(r.gk_triple[0], 2u);
    EXPECT_EQ(r.gk_triple[1], 2u);
    EXPECT_EQ(r.gk_triple[2], 1u);
    EXPECT_EQ(r.axiom_case, AxiomCase::b);
    EXPECT_TRUE(r.exactness_ok);
    EXPECT_TRUE(r.additivity_ok);
    EXPECT_TRUE(r.clause_d_ok);
    EXPECT_EQ((*r.e_values)[0], 1);
    EXPECT_EQ((*r.e_values)[1], 1);
}

TEST(Exactness, CasesCAndA)
{
    // 0 -> (x^2)/(x^3) -> k[x,y]/(x^3) -> k[x,y]/(x^2) -> 0; M' ~ k[y] shifted
    const auto r = check_multiplicity_axioms(cyclic_ses(2, {mono({3, 0})}, {mono({2, 0})}), 25);
    EXPECT_EQ(r.axiom_case, AxiomCase::c);
    EXPECT_EQ((*r.e_values)[0], 1);
    EXPECT_EQ((*r.e_values)[1], 3);
    EXPECT_EQ((*r.e_values)[2], 2);
    EXPECT_TRUE(r.additivity_ok);

    // k[x,y]/(xy, y^2) = k[x] + k y; M' = k y is finite dimensional
    const auto ra = check_multiplicity_axioms(cyclic_ses(2, {mono({1, 1}), mono({0, 2})}, {mono({0, 1})}), 25);
    EXPECT_EQ(ra.axiom_case, AxiomCase::a) << ra.notes;
    EXPECT_EQ(ra.gk_triple[0], 0u);
    EXPECT_EQ((*ra.e_values)[1], 1);
    EXPECT_TRUE(ra.additivity_ok);
}

TEST(Exactness, Degenerate)
{
    const auto zero_sub = check_multiplicity_axioms(cyclic_ses(2, {mono({1, 0})}, {mono({1, 0})}), 25);
    EXPECT_EQ(zero_sub.axiom_case, AxiomCase::degenerate);
    EXPECT_FALSE(zero_sub.gk_triple[0]);
    EXPECT_TRUE(zero_sub.additivity_ok);
    EXPECT_TRUE(zero_sub.clause_d_ok);

    const auto zero_quot = check_multiplicity_axioms(cyclic_ses(2, {}, {NormalMonomial::one(2)}), 25);
    EXPECT_EQ(zero_quot.axiom_case, AxiomCase::degenerate);
    EXPECT_FALSE(zero_quot.gk_triple[2]);
}

TEST(Exactness, RejectsNonSubmodules)
{
    // J must contain I
    EXPECT_THROW(check_exactness(cyclic_ses(2, {mono({1, 0})}, {mono({0, 1})}), 25), SpecError);
    // one ideal per summand
    SESSpec s{polynomial_algebra(1), free_module(2), {{}}};
    EXPECT_THROW(check_exactness(s, 25), SpecError);
}

TEST(Exactness, NestedFamilyAgreesWithEnumeration)
{
    const auto cases = family::nested_ideals(3, 41);
    ASSERT_GT(cases.size(), 300u);
    const std::size_t N = 25;
    for (const auto &c : cases) {
        const auto r = check_multiplicity_axioms(cyclic_ses(c.nv, c.I, c.J), N);
        // M'_n counted directly: monomials of degree <= n in J but not in I
        const std::vector<std::uint64_t> w(c.nv, 1);
        const auto Ie = oracle::exps_of(c.I), Je = oracle::exps_of(c.J);
        BigInt run = 0;
        for (std::size_t n = 0; n <= 12; ++n) {
            for (const auto &m : oracle::monomials_of_degree(w, n)) {
                if (oracle::in_ideal(Je, m) && !oracle::in_ideal(Ie, m)) ++run;
            }
            ASSERT_EQ(r.sub[n], run);
            ASSERT_EQ(r.sub[n] + r.quotient[n], r.big[n]);
        }
        ASSERT_NE(r.axiom_case, AxiomCase::inconclusive);
        EXPECT_TRUE(r.exactness_ok);
        EXPECT_TRUE(r.clause_d_ok);
        EXPECT_NE(r.axiom_case, AxiomCase::none);
        EXPECT_TRUE(r.additivity_ok);
    }
}

TEST(Exactness, ShiftedSummands)
{
    // two summands, one shifted; quotient by x in the first and by everything in the second
    const auto a = polynomial_algebra(2);
    ModuleSpec m;
    m.summands.push_back(Summand{0, {}});
    m.summands.push_back(Summand{2, {mono({0, 2})}});
    SESSpec s{a, m, {{mono({1, 0})}, {NormalMonomial::one(2)}}};
    const auto r = check_multiplicity_axioms(s, 25);
    EXPECT_TRUE(r.exactness_ok);
    EXPECT_TRUE(r.additivity_ok);
    EXPECT_EQ((*r.e_values)[1], 1);
}

TEST(Chains, FreeModulesFullFlags)
{
    for (std::size_t r = 1; r <= 4; ++r) {
        std::vector<std::size_t> order(r);
        std::iota(order.begin(), order.end(), 0);
        do {
            std::vector<bool> alive(r, true);
            std::vector<SubmoduleIdeals> chain;
            for (std::size_t i = 0; i < r; ++i) {
                alive[order[i]] = false;
                chain.push_back(level(r, alive));
            }
            const auto rep = chain_bound_check(polynomial_algebra(1), free_module(r), chain, 25);
            EXPECT_EQ(rep.e_M, BigRational(static_cast<std::uint64_t>(r)));
            EXPECT_EQ(rep.n, r);
            EXPECT_TRUE(rep.bound_ok);
            EXPECT_TRUE(rep.nested_ok);
            EXPECT_TRUE(rep.precondition_ok);
        } while (std::next_permutation(order.begin(), order.end()));
    }
}

TEST(Chains, TooLongChainViolatesPrecondition)
{
    // k[x] > (x) > 0: the first quotient is finite dimensional
    SubmoduleIdeals l1{{mono({1})}}, l2{{}};
    const auto rep = chain_bound_check(polynomial_algebra(1), free_module(1), {l1, l2}, 25);
    EXPECT_EQ(rep.n, 2u);
    EXPECT_FALSE(rep.bound_ok);
    EXPECT_FALSE(rep.precondition_ok);
    EXPECT_TRUE(rep.nested_ok);

    // not nested
    SubmoduleIdeals a{{mono({2})}}, b{{mono({1})}};
    const auto bad = chain_bound_check(polynomial_algebra(1), free_module(1), {a, b}, 25);
    EXPECT_FALSE(bad.nested_ok);
}

TEST(Holonomy, WeylExamples)
{
    const HolonomyCatalog cat;
    for (std::size_t n = 1; n <= 2; ++n) {
        const auto w = weyl_algebra(n);
        const auto reg = holonomic_defect(w, ModuleSpec::regular(), cat, 25);
        EXPECT_EQ(reg.gk, 2 * n);
        EXPECT_EQ(reg.h, n);
        EXPECT_EQ(reg.defect, static_cast<std::int64_t>(n));
        std::vector<NormalMonomial> ys;
        for (std::size_t i = 0; i < n; ++i) ys.push_back(NormalMonomial::variable(2 * n, n + i));
        const auto poly = holonomic_defect(w, ModuleSpec::cyclic(ys), cat, 25);
        EXPECT_TRUE(poly.min_holonomic);
        // shifting the generator does not change the defect
        for (std::uint64_t sh = 1; sh <= 3; ++sh) {
            EXPECT_EQ(holonomic_defect(w, ModuleSpec::cyclic(ys, sh), cat, 25).defect, poly.defect);
        }
    }
    EXPECT_TRUE(holonomic_defect(weyl_algebra(1), ModuleSpec::laurent(), cat, 25).min_holonomic);
    EXPECT_THROW(holonomic_defect(catalog_algebra("smith_lie"), ModuleSpec::regular(), cat, 25), std::invalid_argument);
    const HolonomyCatalog over{2};
    EXPECT_EQ(holonomic_defect(weyl_algebra(1), ModuleSpec::regular(), over, 25).defect, 0);
    // the zero module has no GK
    EXPECT_THROW(holonomic_defect(polynomial_algebra(1), ModuleSpec::cyclic({NormalMonomial::one(1)}), cat, 25),
                 std::domain_error);
}

TEST(Torsion, CyclicCriterion)
{
    const auto w = weyl_algebra(1);
    EXPECT_TRUE(torsion_check_cyclic(w, true, 2, 1).applicable);
    EXPECT_TRUE(torsion_check_cyclic(w, true, 2, 1).torsion);
    EXPECT_FALSE(torsion_check_cyclic(w, false, 2, 1).torsion);
    EXPECT_FALSE(torsion_check_cyclic(w, true, 2, 2).applicable);
    EXPECT_FALSE(torsion_check_cyclic(polynomial_algebra(2), true, 2, 0).applicable);
    EXPECT_FALSE(torsion_check_cyclic(base_field(), true, 0, 0).applicable);
}

TEST(GkQuotient, DropsByAtLeastOne)
{
    const auto pool = family::monomials_between(3, 0, 2);
    for (const auto &I : family::antichains(pool, 2)) {
        if (I.empty()) continue;
        const auto c = check_gk_quotient(polynomial_algebra(3), I, 25);
        EXPECT_EQ(c.gk_A, 3u);
        EXPECT_TRUE(c.ok);
    }
    const auto w = check_gk_quotient(weyl_algebra(1), {mono({0, 1})}, 25);
    EXPECT_EQ(w.gk_quotient, 1u);
    EXPECT_THROW(check_gk_quotient(polynomial_algebra(1), {}, 25), std::invalid_argument);
}

TEST(FiltrationEquivalence, ShiftsAndNonEquivalence)
{
    const auto base = algebra_dim_sequence(polynomial_algebra(2), 30);
    const auto shifted = module_dim_sequence(polynomial_algebra(2), ModuleSpec::cyclic({}, 3), 30);
    EXPECT_EQ(filtration_equivalent(base, base, 5), 0u);
    EXPECT_EQ(filtration_equivalent(base, shifted, 5), 3u);
    EXPECT_FALSE(filtration_equivalent(base, shifted, 2));
    // different growth rates are never equivalent
    const auto cubic = algebra_dim_sequence(polynomial_algebra(3), 30);
    EXPECT_FALSE(filtration_equivalent(base, cubic, 10));
}
