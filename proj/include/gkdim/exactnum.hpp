#ifndef GKDIM_EXACTNUM_HPP
#define GKDIM_EXACTNUM_HPP

// Exact integers, rationals, dense univariate polynomials over Q and the
// binomial-coefficient basis C(n,0), C(n,1), ... for integer-valued
// polynomial functions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gkdim
{

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const BigRational &r)
{
    return boost::multiprecision::numerator(r);
}

inline BigInt denominator_of(const BigRational &r)
{
    return boost::multiprecision::denominator(r);
}

inline bool is_integer(const BigRational &r)
{
    return denominator_of(r) == 1;
}

inline BigRational make_rational(const BigInt &num, const BigInt &den)
{
    if (den == 0) {
        throw std::domain_error("rational with zero denominator");
    }
    // the Boost constructor rejects a negative denominator
    return den < 0 ? BigRational(-num, -den) : BigRational(num, den);
}

inline std::string to_string(const BigRational &r)
{
    if (is_integer(r)) {
        return numerator_of(r).str();
    }
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline std::string to_string(const BigInt &x)
{
    return x.str();
}

inline BigInt factorial(std::uint64_t n)
{
    BigInt r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) {
        r *= i;
    }
    return r;
}

// C(n, k); zero when k > n.
inline BigInt binom(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is always divisible by i here.
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline BigInt gcd(BigInt a, BigInt b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt t = a % b;
        a = std::move(b);
        b = std::move(t);
    }
    return a;
}

inline BigInt lcm(const BigInt &a, const BigInt &b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    BigInt r = a / gcd(a, b) * b;
    return r < 0 ? BigInt(-r) : r;
}

inline BigInt pow(const BigInt &base, std::uint64_t e)
{
    BigInt r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

inline BigRational pow(const BigRational &base, std::uint64_t e)
{
    BigRational r = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

/// Dense univariate polynomial over Q; coefficients()[i] multiplies t^i.
///
/// The stored coefficient vector never ends in a zero, so the zero
/// polynomial has an empty vector and degree -1.
class Polynomial
{
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<BigRational> coeffs) : m_coeffs(std::move(coeffs))
    {
        normalize();
    }
    Polynomial(std::initializer_list<BigRational> coeffs) : m_coeffs(coeffs)
    {
        normalize();
    }

    static Polynomial constant(const BigRational &c)
    {
        return Polynomial(std::vector<BigRational>{c});
    }

    // c * t^k
    static Polynomial monomial(const BigRational &c, std::size_t k)
    {
        std::vector<BigRational> v(k + 1);
        v[k] = c;
        return Polynomial(std::move(v));
    }

    static Polynomial from_integers(std::span<const BigInt> coeffs)
    {
        std::vector<BigRational> v(coeffs.begin(), coeffs.end());
        return Polynomial(std::move(v));
    }

    bool is_zero() const
    {
        return m_coeffs.empty();
    }

    int degree() const
    {
        return static_cast<int>(m_coeffs.size()) - 1;
    }

    const std::vector<BigRational> &coefficients() const
    {
        return m_coeffs;
    }

    BigRational coefficient(std::size_t i) const
    {
        return i < m_coeffs.size() ? m_coeffs[i] : BigRational(0);
    }

    BigRational leading() const
    {
        return m_coeffs.empty() ? BigRational(0) : m_coeffs.back();
    }

    template <typename T>
    BigRational operator()(const T &x) const
    {
        const BigRational xr(x);
        BigRational acc = 0;
        for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
            acc = acc * xr + *it;
        }
        return acc;
    }

    bool has_integer_coefficients() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const BigRational &c) { return is_integer(c); });
    }

    Polynomial derivative() const
    {
        std::vector<BigRational> v;
        for (std::size_t i = 1; i < m_coeffs.size(); ++i) {
            v.push_back(m_coeffs[i] * i);
        }
        return Polynomial(std::move(v));
    }

    // p(a*x + b)
    Polynomial compose_linear(const BigRational &a, const BigRational &b) const
    {
        const Polynomial lin{b, a};
        Polynomial acc;
        for (auto it = m_coeffs.rbegin(); it != m_coeffs.rend(); ++it) {
            acc = acc * lin + constant(*it);
        }
        return acc;
    }

    // First n coefficients only (mod t^n).
    Polynomial truncated(std::size_t n) const
    {
        if (n >= m_coeffs.size()) {
            return *this;
        }
        return Polynomial(std::vector<BigRational>(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    Polynomial monic() const
    {
        if (is_zero()) {
            return *this;
        }
        return *this * (BigRational(1) / leading());
    }

    // Scaled to coprime integer coefficients with positive leading coefficient.
    Polynomial primitive() const
    {
        if (is_zero()) {
            return *this;
        }
        BigInt den_lcm = 1;
        for (const auto &c : m_coeffs) {
            den_lcm = lcm(den_lcm, denominator_of(c));
        }
        BigInt g = 0;
        for (const auto &c : m_coeffs) {
            g = gcd(g, numerator_of(c * den_lcm));
        }
        BigRational scale = BigRational(den_lcm) / g;
        if (leading() < 0) {
            scale = -scale;
        }
        return *this * scale;
    }

    friend bool operator==(const Polynomial &, const Polynomial &) = default;

    friend Polynomial operator+(const Polynomial &a, const Polynomial &b)
    {
        std::vector<BigRational> v(std::max(a.m_coeffs.size(), b.m_coeffs.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = a.coefficient(i) + b.coefficient(i);
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial &a)
    {
        std::vector<BigRational> v(a.m_coeffs);
        for (auto &c : v) {
            c = -c;
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial &a, const Polynomial &b)
    {
        return a + (-b);
    }

    friend Polynomial operator*(const Polynomial &a, const Polynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<BigRational> v(a.m_coeffs.size() + b.m_coeffs.size() - 1);
        for (std::size_t i = 0; i < a.m_coeffs.size(); ++i) {
            if (a.m_coeffs[i] == 0) continue;
            for (std::size_t j = 0; j < b.m_coeffs.size(); ++j) {
                v[i + j] += a.m_coeffs[i] * b.m_coeffs[j];
            }
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const Polynomial &a, const BigRational &s)
    {
        std::vector<BigRational> v(a.m_coeffs);
        for (auto &c : v) {
            c *= s;
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const BigRational &s, const Polynomial &a)
    {
        return a * s;
    }

    Polynomial &operator+=(const Polynomial &o)
    {
        return *this = *this + o;
    }
    Polynomial &operator-=(const Polynomial &o)
    {
        return *this = *this - o;
    }
    Polynomial &operator*=(const Polynomial &o)
    {
        return *this = *this * o;
    }

    Polynomial pow(std::uint64_t e) const
    {
        Polynomial r = constant(1);
        for (std::uint64_t i = 0; i < e; ++i) {
            r *= *this;
        }
        return r;
    }

    std::string to_string(const std::string &var = "t") const;

private:
    void normalize()
    {
        while (!m_coeffs.empty() && m_coeffs.back() == 0) {
            m_coeffs.pop_back();
        }
    }

    std::vector<BigRational> m_coeffs;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

inline DivMod divmod(const Polynomial &a, const Polynomial &b)
{
    if (b.is_zero()) {
        throw std::domain_error("polynomial division by zero");
    }
    std::vector<BigRational> rem(a.coefficients());
    const int db = b.degree();
    if (a.degree() < db) {
        return {Polynomial{}, a};
    }
    std::vector<BigRational> quo(static_cast<std::size_t>(a.degree() - db + 1));
    const BigRational lead = b.leading();
    for (int k = a.degree() - db; k >= 0; --k) {
        const auto top = static_cast<std::size_t>(k + db);
        if (rem[top] == 0) continue;
        const BigRational c = rem[top] / lead;
        quo[static_cast<std::size_t>(k)] = c;
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= c * b.coefficients()[static_cast<std::size_t>(j)];
        }
    }
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
}

inline bool divides(const Polynomial &d, const Polynomial &p)
{
    return divmod(p, d).remainder.is_zero();
}

// Monic gcd; gcd(0, 0) = 0.
inline Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline std::string Polynomial::to_string(const std::string &var) const
{
    if (is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        const BigRational &c = m_coeffs[i];
        if (c == 0) continue;
        const bool neg = c < 0;
        const BigRational mag = neg ? BigRational(-c) : c;
        if (out.empty()) {
            out += neg ? "-" : "";
        } else {
            out += neg ? " - " : " + ";
        }
        if (i == 0 || mag != 1) {
            out += gkdim::to_string(mag);
            if (i != 0) out += "*";
        }
        if (i >= 1) {
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

/// The polynomial C(x, k) = x (x-1) ... (x-k+1) / k! in the variable x.
inline Polynomial binomial_polynomial(std::size_t k)
{
    static std::vector<Polynomial> cache{Polynomial::constant(1)};
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    while (cache.size() <= k) {
        const std::size_t i = cache.size() - 1;
        // C(x, i + 1) = C(x, i) (x - i) / (i + 1)
        cache.push_back(cache.back() * Polynomial{BigRational(-static_cast<long long>(i)), BigRational(1)} *
                        Polynomial::constant(make_rational(1, static_cast<long long>(i) + 1)));
    }
    return cache[k];
}

/// f(n) = a_0 C(n,0) + a_1 C(n,1) + ... + a_d C(n,d).
///
/// The top coefficient a_d of an eventually integer-valued, eventually
/// nondecreasing function is its Bernstein number.
class BinomialForm
{
public:
    BinomialForm() = default;
    explicit BinomialForm(std::vector<BigRational> coeffs) : m_coeffs(std::move(coeffs))
    {
        while (!m_coeffs.empty() && m_coeffs.back() == 0) {
            m_coeffs.pop_back();
        }
    }
    BinomialForm(std::initializer_list<BigRational> coeffs) : BinomialForm(std::vector<BigRational>(coeffs)) {}

    bool is_zero() const
    {
        return m_coeffs.empty();
    }
    int degree() const
    {
        return static_cast<int>(m_coeffs.size()) - 1;
    }
    const std::vector<BigRational> &coefficients() const
    {
        return m_coeffs;
    }
    BigRational coefficient(std::size_t i) const
    {
        return i < m_coeffs.size() ? m_coeffs[i] : BigRational(0);
    }
    BigRational leading() const
    {
        return m_coeffs.empty() ? BigRational(0) : m_coeffs.back();
    }

    BigRational operator()(std::uint64_t n) const
    {
        BigRational acc = 0;
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            if (m_coeffs[i] != 0) {
                acc += m_coeffs[i] * BigRational(binom(n, i));
            }
        }
        return acc;
    }

    // f(n+1) - f(n) = a_1 C(n,0) + ... + a_d C(n,d-1).
    BinomialForm difference() const
    {
        if (m_coeffs.size() <= 1) {
            return {};
        }
        return BinomialForm(std::vector<BigRational>(m_coeffs.begin() + 1, m_coeffs.end()));
    }

    bool is_integral() const
    {
        return std::all_of(m_coeffs.begin(), m_coeffs.end(), [](const BigRational &c) { return is_integer(c); });
    }

    friend bool operator==(const BinomialForm &, const BinomialForm &) = default;

    std::string to_string(const std::string &var = "n") const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            if (m_coeffs[i] == 0) continue;
            if (!out.empty()) out += " + ";
            out += gkdim::to_string(m_coeffs[i]) + "*C(" + var + "," + std::to_string(i) + ")";
        }
        return out;
    }

private:
    std::vector<BigRational> m_coeffs;
};

/// output[n] = f[n+1] - f[n].
template <typename T>
std::vector<T> finite_difference(std::span<const T> f)
{
    if (f.size() < 2) {
        throw std::invalid_argument("finite_difference: sequence needs at least 2 entries");
    }
    std::vector<T> out;
    out.reserve(f.size() - 1);
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        out.push_back(f[i + 1] - f[i]);
    }
    return out;
}

template <typename T>
std::vector<T> finite_difference(const std::vector<T> &f)
{
    return finite_difference(std::span<const T>(f));
}

// Newton forward differences at 0: a_i = (Delta^i p)(0).
inline BinomialForm to_binomial_basis(const Polynomial &p)
{
    if (p.is_zero()) {
        return {};
    }
    const auto d = static_cast<std::size_t>(p.degree());
    std::vector<BigRational> row;
    row.reserve(d + 1);
    for (std::size_t n = 0; n <= d; ++n) {
        row.push_back(p(n));
    }
    std::vector<BigRational> a;
    a.reserve(d + 1);
    a.push_back(row.front());
    while (row.size() > 1) {
        row = finite_difference(row);
        a.push_back(row.front());
    }
    return BinomialForm(std::move(a));
}

inline Polynomial from_binomial_basis(const BinomialForm &b)
{
    Polynomial p;
    for (std::size_t i = 0; i < b.coefficients().size(); ++i) {
        if (b.coefficients()[i] != 0) {
            p += binomial_polynomial(i) * b.coefficients()[i];
        }
    }
    return p;
}

// Integer value if |x| fits in int64; used by serializers.
inline bool fits_int64(const BigInt &x)
{
    return x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max();
}

} // namespace gkdim

#endif
