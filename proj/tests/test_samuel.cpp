#include <gtest/gtest.h>

#include <stdexcept>
#include <vector>

#include <gkdim/growth.hpp>
#include <gkdim/samuel.hpp>

using namespace gkdim;

namespace
{

template <typename F>
DimensionSequence tabulate(std::size_t len, F f)
{
    DimensionSequence s;
    for (std::size_t n = 0; n < len; ++n) s.values.push_back(f(n));
    return s;
}

} // namespace

TEST(DetectPolynomial, SpecExamples)
{
    const auto c2 = tabulate(16, [](std::size_t j) { return binom(j + 2, 2); });
    const auto h = detect_polynomial(c2, 4);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->form, (BinomialForm{1, 2, 1}));
    EXPECT_EQ(gk_dimension(*h), 2u);
    EXPECT_EQ(multiplicity(*h), 1);
    EXPECT_EQ(h->stabilization_index, 0u);

    const auto odd = tabulate(16, [](std::size_t j) { return BigInt(2 * j + 1); });
    const auto h2 = detect_polynomial(odd);
    ASSERT_TRUE(h2);
    EXPECT_EQ(h2->form, (BinomialForm{1, 2}));
    EXPECT_EQ(multiplicity(*h2), 2);

    const auto ex = tabulate(16, [](std::size_t j) { return pow(BigInt(2), j + 1) - 1; });
    EXPECT_FALSE(detect_polynomial(ex));
}

TEST(DetectPolynomial, ConstantAndZero)
{
    const auto c = tabulate(20, [](std::size_t) { return BigInt(7); });
    const auto h = detect_polynomial(c);
    ASSERT_TRUE(h);
    EXPECT_EQ(gk_dimension(*h), 0u);
    EXPECT_EQ(multiplicity(*h), 7);
    const auto z = tabulate(20, [](std::size_t) { return BigInt(0); });
    const auto hz = detect_polynomial(z);
    ASSERT_TRUE(hz);
    EXPECT_TRUE(hz->is_zero());
}

TEST(DetectPolynomial, TooShortOrBadWindow)
{
    const auto s = tabulate(15, [](std::size_t j) { return BigInt(j); });
    EXPECT_THROW(detect_polynomial(s, 6), std::invalid_argument);
    EXPECT_THROW(detect_polynomial(s, 1), std::invalid_argument);
    EXPECT_NO_THROW(detect_polynomial(s, 5));
}

TEST(DetectPolynomial, GradedInputIsAccumulated)
{
    DimensionSequence g{std::vector<BigInt>(20, BigInt(1)), SequenceMeaning::graded_piece};
    const auto h = detect_polynomial(g);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->form, (BinomialForm{1, 1}));
}

TEST(DetectPolynomial, EventuallyPolynomialReportsStabilization)
{
    // 5, 0, 3 then 2n + 1 from n = 3 on
    auto s = tabulate(24, [](std::size_t n) { return BigInt(2 * n + 1); });
    s.values[0] = 5;
    s.values[1] = 0;
    s.values[2] = 3;
    const auto h = detect_polynomial(s);
    ASSERT_TRUE(h);
    EXPECT_EQ(h->form, (BinomialForm{1, 2}));
    EXPECT_EQ(h->stabilization_index, 3u);
    // leading zeros of a shifted module: reported in original indexing
    auto shifted = tabulate(24, [](std::size_t n) { return n < 4 ? BigInt(0) : binom(n - 4 + 2, 2); });
    const auto hs = detect_polynomial(shifted);
    ASSERT_TRUE(hs);
    EXPECT_EQ(gk_dimension(*hs), 2u);
    EXPECT_EQ(multiplicity(*hs), 1);
    EXPECT_EQ(hs->stabilization_index, 2u); // C(n-2, 2) vanishes at n = 2, 3 too
}

TEST(DetectPolynomial, RoundTripExhaustive)
{
    // every binomial form of degree <= 5 with coefficients in 0..5 whose top
    // coefficient is nonzero; sampled on 0..deg + 2*window + 4
    const std::size_t window = default_window;
    std::size_t checked = 0;
    for (int deg = 0; deg <= 5; ++deg) {
        std::vector<int> c(static_cast<std::size_t>(deg) + 1, 0);
        c.back() = 1;
        for (;;) {
            std::vector<BigRational> coeffs(c.begin(), c.end());
            const BinomialForm b(coeffs);
            const std::size_t len = static_cast<std::size_t>(deg) + 2 * window + 4;
            const auto s = tabulate(len, [&](std::size_t n) { return numerator_of(b(n)); });
            const auto h = detect_polynomial(s, window);
            ASSERT_TRUE(h);
            ASSERT_EQ(h->form, b);
            ASSERT_EQ(multiplicity(*h), from_binomial_basis(b).leading() * BigRational(factorial(deg)));
            ++checked;
            // odometer over c[0..deg-1] in 0..5 and c[deg] in 1..5
            std::size_t i = 0;
            while (i < c.size()) {
                const int lo = i + 1 == c.size() ? 1 : 0;
                if (c[i] < 5) {
                    ++c[i];
                    break;
                }
                c[i] = lo;
                ++i;
            }
            if (i == c.size()) break;
        }
    }
    EXPECT_EQ(checked, 5u + 30u + 180u + 1080u + 6480u + 38880u);
}

TEST(DetectPolynomial, NeverDisagreesPastStabilization)
{
    // a sequence whose last entry breaks the pattern must not be fitted
    auto s = tabulate(24, [](std::size_t n) { return BigInt(n * n); });
    s.values.back() += 1;
    EXPECT_FALSE(detect_polynomial(s));
}

TEST(DetectPolynomial, ShiftedFiltrationsShareDegreeAndMultiplicity)
{
    const auto base = tabulate(40, [](std::size_t n) { return binom(n + 3, 3) * 2; });
    for (std::size_t c = 1; c <= 4; ++c) {
        const auto sh = tabulate(40, [&](std::size_t n) { return n < c ? BigInt(0) : base[n - c]; });
        const auto h1 = detect_polynomial(base), h2 = detect_polynomial(sh);
        ASSERT_TRUE(h1 && h2);
        EXPECT_EQ(gk_dimension(*h1), gk_dimension(*h2));
        EXPECT_EQ(multiplicity(*h1), multiplicity(*h2));
    }
}

TEST(Gamma, Examples)
{
    auto sq = tabulate(41, [](std::size_t n) { return BigInt(n * n); });
    sq.values[0] = 1;
    sq.values[1] = 1;
    const auto g = gamma_estimate(sq);
    EXPECT_GE(g.value, 1.9);
    EXPECT_LE(g.value, 2.1);
    EXPECT_EQ(g.trend, GammaTrend::converging);

    const auto ex = tabulate(41, [](std::size_t n) { return pow(BigInt(2), n); });
    EXPECT_EQ(gamma_estimate(ex).trend, GammaTrend::diverging);

    const auto one = tabulate(20, [](std::size_t) { return BigInt(1); });
    const auto g1 = gamma_estimate(one);
    EXPECT_EQ(g1.value, 0.0);
    EXPECT_EQ(g1.trend, GammaTrend::converging);

    const auto zero = tabulate(20, [](std::size_t) { return BigInt(0); });
    EXPECT_THROW(gamma_estimate(zero), std::invalid_argument);
    EXPECT_THROW(gamma_estimate(tabulate(7, [](std::size_t) { return BigInt(1); })), std::invalid_argument);
}

TEST(Gamma, Oscillating)
{
    // 1 for even n, n^3 for odd n
    const auto s = tabulate(30, [](std::size_t n) { return n % 2 ? BigInt(n * n * n) : BigInt(1); });
    EXPECT_EQ(gamma_estimate(s).trend, GammaTrend::oscillating);
}

TEST(Gamma, HugeValues)
{
    const auto s = tabulate(400, [](std::size_t n) { return pow(BigInt(3), n) + 1; });
    const auto g = gamma_estimate(s);
    EXPECT_NEAR(g.value, 399 * std::log(3.0) / std::log(399.0), 1e-9);
}

TEST(ClassifyGrowth, Examples)
{
    const auto w1 = tabulate(31, [](std::size_t j) { return binom(j + 2, 2); });
    const auto r = classify_growth(w1);
    EXPECT_EQ(r.classification, GrowthClass::polynomial);
    EXPECT_EQ(r.gk, 2u);
    EXPECT_EQ(r.multiplicity, BigRational(1));
    EXPECT_TRUE(r.gamma.has_value());

    const auto fa = tabulate(31, [](std::size_t n) { return pow(BigInt(2), n + 1) - 1; });
    const auto rf = classify_growth(fa);
    EXPECT_EQ(rf.classification, GrowthClass::exponential);
    ASSERT_TRUE(rf.recurrence);
    EXPECT_EQ(rf.recurrence->order, 2u);

    // cumulative partition counts: intermediate growth
    const auto parts = detail::partition_numbers(40);
    DimensionSequence p{parts, SequenceMeaning::graded_piece};
    const auto rp = classify_growth(p);
    EXPECT_EQ(rp.classification, GrowthClass::inconclusive);
    EXPECT_FALSE(rp.gk.has_value());
    EXPECT_TRUE(rp.gamma.has_value());
}

TEST(ClassifyGrowth, FiniteDimensional)
{
    auto s = tabulate(20, [](std::size_t n) { return BigInt(std::min<std::size_t>(n + 1, 4)); });
    const auto r = classify_growth(s);
    EXPECT_EQ(r.classification, GrowthClass::finite_dimensional);
    EXPECT_EQ(r.gk, 0u);
    EXPECT_EQ(r.multiplicity, BigRational(4));
    const auto z = tabulate(20, [](std::size_t) { return BigInt(0); });
    const auto rz = classify_growth(z);
    EXPECT_EQ(rz.classification, GrowthClass::finite_dimensional);
    EXPECT_EQ(rz.gk, 0u);
}

TEST(ClassifyGrowth, QuasiPolynomialPath)
{
    // cumulative dims of k[x], deg x = 2: floor(n/2) + 1
    const auto s = tabulate(31, [](std::size_t n) { return BigInt(n / 2 + 1); });
    const auto r = classify_growth(s);
    EXPECT_EQ(r.classification, GrowthClass::polynomial);
    EXPECT_EQ(r.gk, 1u);
    EXPECT_EQ(r.multiplicity, make_rational(1, 2));
    ASSERT_TRUE(r.quasi);
    EXPECT_EQ(r.quasi->period, 2u);
    EXPECT_NE(std::find(r.warnings.begin(), r.warnings.end(), warning::quasi_polynomial_fit), r.warnings.end());
}

TEST(ClassifyGrowth, QuasiBranchesWithDifferentLeadingTerms)
{
    // n for even n, 2n for odd n
    const auto s = tabulate(40, [](std::size_t n) { return BigInt(n % 2 ? 2 * n : n); });
    const auto r = classify_growth(s);
    EXPECT_EQ(r.classification, GrowthClass::inconclusive);
    EXPECT_FALSE(r.gk.has_value());
}

TEST(ClassifyGrowth, InvariantsHold)
{
    std::vector<DimensionSequence> inputs{
        tabulate(20, [](std::size_t n) { return BigInt(n * n * n + 2); }),
        tabulate(20, [](std::size_t n) { return pow(BigInt(3), n); }),
        tabulate(25, [](std::size_t n) { return BigInt(n / 3 + n / 2); }),
        tabulate(12, [](std::size_t) { return BigInt(3); }),
    };
    for (const auto &s : inputs) {
        const auto r = classify_growth(s);
        if (r.classification == GrowthClass::polynomial) {
            EXPECT_TRUE(r.gk && r.multiplicity);
            EXPECT_GT(*r.multiplicity, 0);
        }
        if (r.classification == GrowthClass::finite_dimensional) {
            EXPECT_EQ(r.gk, 0u);
        }
        for (const auto &w : r.warnings) {
            EXPECT_NE(std::find(warning_catalog().begin(), warning_catalog().end(), w), warning_catalog().end()) << w;
        }
    }
    EXPECT_THROW(classify_growth(tabulate(11, [](std::size_t) { return BigInt(1); })), std::invalid_argument);
}

TEST(Warnings, CatalogSnapshot)
{
    const std::vector<std::string> expected{
        "sampled agreement only",
        "mixed cyclotomic denominator",
        "uncertified root location",
        "roots off the unit circle but none inside",
        "incomplete factorization",
        "quasi-polynomial fit",
        "no recurrence on sampled tail",
        "dimension-level check only",
    };
    EXPECT_EQ(warning_catalog(), expected);
}
