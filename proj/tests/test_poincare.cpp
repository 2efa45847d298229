#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <gkdim/poincare.hpp>

#include "oracles.hpp"

using namespace gkdim;

namespace
{

DimensionSequence from_rationals(const std::vector<BigRational> &f)
{
    DimensionSequence s{{}, SequenceMeaning::graded_piece};
    for (const auto &x : f) s.values.push_back(numerator_of(x));
    return s;
}

Polynomial one_minus_t_pow(std::size_t s)
{
    return Polynomial::constant(1) - Polynomial::monomial(1, s);
}

Polynomial random_int_poly(std::mt19937 &rng, int deg, int bound)
{
    std::uniform_int_distribution<int> c(-bound, bound);
    std::vector<BigRational> v;
    for (int i = 0; i <= deg; ++i) v.push_back(c(rng));
    return Polynomial(std::move(v));
}

} // namespace

TEST(Recurrence, Examples)
{
    // 2^(n+1) - 1
    DimensionSequence s;
    for (std::size_t n = 0; n < 20; ++n) s.values.push_back(pow(BigInt(2), n + 1) - 1);
    const auto r = minimal_recurrence(s);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->order, 2u);
    EXPECT_EQ(r->coefficients, (std::vector<BigRational>{3, -2}));
    EXPECT_EQ(r->onset, 0u);
    EXPECT_EQ(r->characteristic_denominator(), (Polynomial{1, -3, 2}));

    // Fibonacci
    DimensionSequence fib{{1, 1}, SequenceMeaning::graded_piece};
    while (fib.size() < 25) fib.values.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
    const auto rf = minimal_recurrence(fib);
    ASSERT_TRUE(rf);
    EXPECT_EQ(rf->order, 2u);
    const auto series = series_from_recurrence(fib, *rf);
    EXPECT_EQ(series.numerator, Polynomial{1});
    EXPECT_EQ(series.denominator, (Polynomial{1, -1, -1}));
}

TEST(Recurrence, OnsetAfterIrregularPrefix)
{
    DimensionSequence s;
    for (std::size_t n = 0; n < 24; ++n) s.values.push_back(BigInt(3 * n + 1));
    s.values[0] = 9;
    s.values[1] = 0;
    const auto r = minimal_recurrence(s);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->order, 2u);
    EXPECT_EQ(r->onset, 2u);
    const auto series = series_from_recurrence(s, *r);
    const auto e = series.expand(24);
    for (std::size_t n = 0; n < 24; ++n) EXPECT_EQ(e[n], BigRational(s[n]));
}

TEST(Recurrence, NoneOnPartitions)
{
    DimensionSequence p{detail::partition_numbers(40), SequenceMeaning::graded_piece};
    EXPECT_FALSE(minimal_recurrence(p));
    EXPECT_THROW(minimal_recurrence(DimensionSequence{{1, 2, 3}, SequenceMeaning::graded_piece}), std::invalid_argument);
}

TEST(Recurrence, SeriesRejectsBrokenRecurrence)
{
    DimensionSequence s{{1, 2, 4, 8, 16, 33}, SequenceMeaning::graded_piece};
    Recurrence r{1, {2}, 0};
    EXPECT_THROW(series_from_recurrence(s, r), std::invalid_argument);
}

TEST(Recurrence, OrderMatchesHankelRank)
{
    // For p/q reduced with deg p < deg q = s, the Hankel matrices of size
    // s + 1 vanish and some matrix of size s does not.
    std::mt19937 rng(17);
    int tested = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const int s = 1 + trial % 4;
        Polynomial q = random_int_poly(rng, s, 3);
        q = q - Polynomial::constant(q.coefficient(0)) + Polynomial::constant(1);
        if (q.degree() != s) continue;
        const Polynomial p = random_int_poly(rng, s - 1, 3);
        if (p.is_zero() || gcd(p, q).degree() > 0) continue;
        const auto f = RationalSeries{p, q}.expand(40);
        const auto seq = from_rationals(f);
        const auto r = minimal_recurrence(seq);
        ASSERT_TRUE(r);
        ASSERT_EQ(r->order, static_cast<std::size_t>(s));
        bool some_nonzero = false;
        for (std::size_t start = 0; start < 6; ++start) {
            EXPECT_EQ(oracle::hankel_det(seq.values, start, r->order + 1), 0);
            if (oracle::hankel_det(seq.values, start, r->order) != 0) some_nonzero = true;
        }
        EXPECT_TRUE(some_nonzero);
        ++tested;
    }
    EXPECT_GT(tested, 20);
}

TEST(Recurrence, RoundTrip)
{
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial q = random_int_poly(rng, 1 + trial % 5, 2);
        q = q - Polynomial::constant(q.coefficient(0)) + Polynomial::constant(1);
        const Polynomial p = random_int_poly(rng, trial % 6, 4);
        if (p.is_zero()) continue;
        const RationalSeries in{p, q};
        const auto f = in.expand(50);
        const auto seq = from_rationals(f);
        const auto r = minimal_recurrence(seq);
        ASSERT_TRUE(r);
        const auto out = series_from_recurrence(seq, *r);
        EXPECT_TRUE(out.equivalent(in)) << in.to_string() << " vs " << out.to_string();
        EXPECT_EQ(out.denominator.coefficient(0), 1);
        EXPECT_EQ(gcd(out.numerator, out.denominator).degree(), 0);
    }
}

TEST(Cyclotomic, Basics)
{
    EXPECT_EQ(cyclotomic(1), (Polynomial{-1, 1}));
    EXPECT_EQ(cyclotomic(2), (Polynomial{1, 1}));
    EXPECT_EQ(cyclotomic(6), (Polynomial{1, -1, 1}));
    for (std::size_t n = 1; n <= 30; ++n) {
        Polynomial prod = Polynomial::constant(1);
        for (std::size_t d = 1; d <= n; ++d) {
            if (n % d == 0) prod *= cyclotomic(d);
        }
        EXPECT_EQ(prod, Polynomial::monomial(1, n) - Polynomial::constant(1));
        EXPECT_EQ(static_cast<std::uint64_t>(cyclotomic(n).degree()), euler_phi(n));
    }
}

TEST(PureDenominators, AllSmallCases)
{
    for (std::size_t s = 1; s <= 6; ++s) {
        for (std::size_t d = 1; d <= 5; ++d) {
            const Polynomial q = one_minus_t_pow(s).pow(d);
            const auto an = denominator_analysis(q);
            EXPECT_EQ(an.radius_class, RadiusClass::all_roots_on_unit_circle);
            ASSERT_TRUE(an.s && an.d) << s << " " << d;
            EXPECT_EQ(*an.s, s);
            EXPECT_EQ(*an.d, d);
            EXPECT_EQ(an.period, s);
            EXPECT_TRUE(an.caveats.empty());

            // 1/q counts the monomials of weighted degree n in d variables of weight s
            const RationalSeries series{Polynomial{1}, q};
            const auto f = series.expand(90);
            const auto seq = from_rationals(f);
            const auto r = minimal_recurrence(seq);
            ASSERT_TRUE(r);
            EXPECT_EQ(r->order, s * d);
            const auto qp = quasi_polynomial(series, seq);
            EXPECT_EQ(qp.period, s);
            EXPECT_EQ(qp.gk, d);
            for (std::size_t n = 0; n < 90; ++n) {
                const BigRational expect = n % s ? BigRational(0) : BigRational(binom(n / s + d - 1, d - 1));
                ASSERT_EQ(qp(n), expect);
            }
        }
    }
}

TEST(Denominators, Classes)
{
    const auto a = denominator_analysis(Polynomial{1, -2});
    EXPECT_EQ(a.radius_class, RadiusClass::inside_unit_disk);
    EXPECT_EQ(a.roots_inside, 1u);

    // |q(0)| = |leading|: singular at radius 1, settled by a smaller disk
    const auto golden = denominator_analysis(Polynomial{1, -1, -1});
    EXPECT_EQ(golden.radius_class, RadiusClass::inside_unit_disk);
    EXPECT_FALSE(golden.roots_inside);
    EXPECT_EQ(golden.roots_inside_at_least, 1u);

    const auto outside = denominator_analysis(Polynomial{1, make_rational(-1, 2)});
    EXPECT_EQ(outside.radius_class, RadiusClass::mixed);
    EXPECT_EQ(outside.caveats, std::vector<std::string>{"roots off the unit circle but none inside"});

    // roots on the circle that are not roots of unity
    const auto unc = denominator_analysis(Polynomial{1, make_rational(-6, 5), 1});
    EXPECT_EQ(unc.radius_class, RadiusClass::mixed);
    EXPECT_FALSE(unc.roots_inside);
    EXPECT_EQ(unc.caveats, std::vector<std::string>{"uncertified root location"});

    const auto mixed = denominator_analysis(one_minus_t_pow(2) * one_minus_t_pow(3));
    EXPECT_EQ(mixed.radius_class, RadiusClass::all_roots_on_unit_circle);
    EXPECT_FALSE(mixed.s);
    EXPECT_EQ(mixed.period, 6u);
    EXPECT_EQ(mixed.caveats, std::vector<std::string>{"mixed cyclotomic denominator"});

    const auto constant = denominator_analysis(Polynomial{1});
    EXPECT_EQ(constant.s, 1u);
    EXPECT_EQ(constant.d, 0u);

    EXPECT_THROW(denominator_analysis(Polynomial{2, 1}), std::invalid_argument);
}

TEST(Denominators, CyclotomicTimesExpanding)
{
    // (1 - t)^2 (1 - 3t)
    const auto an = denominator_analysis(one_minus_t_pow(1).pow(2) * Polynomial{1, -3});
    EXPECT_EQ(an.radius_class, RadiusClass::inside_unit_disk);
    EXPECT_EQ(an.cyclotomic_orders, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}}));
    EXPECT_EQ(an.non_cyclotomic.degree(), 1);
}

TEST(SchurCohn, AgreesWithNumericRoots)
{
    std::mt19937 rng(31);
    int compared = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int deg = 1 + trial % 5;
        const Polynomial f = random_int_poly(rng, deg, 6);
        if (f.degree() != deg || f.coefficient(0) == 0) continue;
        const auto z = oracle::roots(f);
        bool near_circle = false;
        std::size_t inside = 0;
        for (const auto &r : z) {
            if (std::abs(std::abs(r) - 1.0) < 1e-6) near_circle = true;
            if (std::abs(r) < 1.0) ++inside;
        }
        const auto sc = roots_inside_unit_disk(f);
        if (near_circle) continue;
        if (!sc) continue; // singular case without roots on the circle is allowed
        ASSERT_EQ(*sc, inside) << f.to_string();
        ++compared;
    }
    EXPECT_GT(compared, 200);
}

TEST(SchurCohn, SmallerRadii)
{
    std::mt19937 rng(37);
    for (int trial = 0; trial < 200; ++trial) {
        const int deg = 1 + trial % 4;
        const Polynomial f = random_int_poly(rng, deg, 5);
        if (f.degree() != deg || f.coefficient(0) == 0) continue;
        const auto z = oracle::roots(f);
        for (const auto &rho : {make_rational(1, 2), make_rational(3, 4), make_rational(5, 4)}) {
            const double r = rho.convert_to<double>();
            bool near = false;
            std::size_t inside = 0;
            for (const auto &x : z) {
                if (std::abs(std::abs(x) - r) < 1e-6) near = true;
                if (std::abs(x) < r) ++inside;
            }
            const auto sc = roots_inside_disk(f, rho);
            if (near || !sc) continue;
            ASSERT_EQ(*sc, inside) << f.to_string() << " radius " << r;
        }
    }
}

TEST(Factorization, ReproducesInput)
{
    const Polynomial p = one_minus_t_pow(1).pow(2) * Polynomial{1, 1, 1} * Polynomial{-1, 3, 2} * BigRational(5);
    const auto fz = factor_over_rationals(p);
    EXPECT_TRUE(fz.complete);
    Polynomial prod = Polynomial::constant(fz.unit);
    for (const auto &f : fz.factors) {
        EXPECT_TRUE(f.polynomial.has_integer_coefficients());
        EXPECT_GT(f.polynomial.leading(), 0);
        prod *= f.polynomial.pow(f.multiplicity);
    }
    EXPECT_EQ(prod, p);
    EXPECT_EQ(fz.factors.size(), 3u);

    const auto irr = factor_over_rationals(Polynomial{1, 0, 0, 0, 1});
    ASSERT_EQ(irr.factors.size(), 1u);
    EXPECT_EQ(irr.factors[0].polynomial.degree(), 4);

    // t^4 + 4 = (t^2 - 2t + 2)(t^2 + 2t + 2): no linear factor
    const auto sg = factor_over_rationals(Polynomial{4, 0, 0, 0, 1});
    EXPECT_EQ(sg.factors.size(), 2u);
}

TEST(Factorization, RandomProducts)
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        Polynomial p = Polynomial::constant(1);
        for (int k = 0; k < 3; ++k) {
            const Polynomial f = random_int_poly(rng, 1 + trial % 2, 4);
            if (f.degree() > 0) p *= f;
        }
        if (p.degree() <= 0) continue;
        const auto fz = factor_over_rationals(p);
        Polynomial prod = Polynomial::constant(fz.unit);
        for (const auto &f : fz.factors) prod *= f.polynomial.pow(f.multiplicity);
        EXPECT_EQ(prod, p);
        if (!fz.complete) continue;
        for (const auto &f : fz.factors) {
            // no factor of an irreducible splits again
            if (f.polynomial.degree() >= 2) {
                EXPECT_EQ(factor_over_rationals(f.polynomial).factors.size(), 1u);
            }
        }
    }
}

TEST(QuasiPolynomial, DegreeTwoVariable)
{
    // Hilbert series of k[x], deg x = 2
    const RationalSeries series{Polynomial{1}, one_minus_t_pow(2)};
    const auto seq = from_rationals(series.expand(40));
    const auto qp = quasi_polynomial(series, seq);
    EXPECT_EQ(qp.period, 2u);
    EXPECT_EQ(qp.gk, 1u);
    EXPECT_EQ(qp.branches, (std::vector<Polynomial>{Polynomial{1}, Polynomial{}}));
    EXPECT_EQ(qp.max_branch_degree, 0);
}

TEST(QuasiPolynomial, MixedDenominatorViaPureForm)
{
    const RationalSeries series{Polynomial{1}, one_minus_t_pow(2) * one_minus_t_pow(3)};
    EXPECT_THROW(quasi_polynomial(series, from_rationals(series.expand(60))), std::invalid_argument);
    const auto pure = to_pure_form(series);
    ASSERT_TRUE(pure);
    EXPECT_EQ(pure->denominator, one_minus_t_pow(6).pow(2));
    EXPECT_TRUE(pure->equivalent(series));
    const auto seq = from_rationals(series.expand(200));
    const auto qp = quasi_polynomial(*pure, seq);
    EXPECT_EQ(qp.period, 6u);
    EXPECT_EQ(qp.max_branch_degree, 1);
    // every branch is n/6 + c_i
    for (const auto &b : qp.branches) EXPECT_EQ(b.leading(), make_rational(1, 6));
    for (std::size_t n = 0; n < 200; ++n) {
        // number of (a, b) with 2a + 3b = n
        BigInt c = 0;
        for (std::size_t b = 0; 3 * b <= n; ++b) {
            if ((n - 3 * b) % 2 == 0) ++c;
        }
        ASSERT_EQ(qp(n), BigRational(c));
    }
    EXPECT_FALSE(to_pure_form(RationalSeries{Polynomial{1}, Polynomial{1, -2}}));
}

TEST(QuasiPolynomial, RejectsMismatchedSamples)
{
    const RationalSeries series{Polynomial{1}, one_minus_t_pow(1).pow(2)};
    auto seq = from_rationals(series.expand(30));
    seq.values[4] += 1;
    EXPECT_THROW(quasi_polynomial(series, seq), std::invalid_argument);
}
