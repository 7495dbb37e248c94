#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vac {

// Exact field scalars. cpp_rational keeps gcd(num,den)=1 and den>0 after
// every operation, which is exactly the invariant we need.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using QVec = std::vector<Rational>;

inline std::string rat_str(const Rational& r)
{
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

// Parses "p", "-p", "p/q". Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& s);

// n(n-1)...(n-k+1)/k!, valid for any integer n and k >= 0.
Rational binom(long n, long k);

// First-order infinitesimals: a + t*b with t^2 = 0. A distinct type rather
// than a length-2 series so no code path can observe a t^2 term.
struct DualScalar {
    Rational real;
    Rational infinitesimal;

    DualScalar() = default;
    DualScalar(Rational re, Rational eps = 0) : real(std::move(re)), infinitesimal(std::move(eps)) {}

    friend DualScalar operator+(const DualScalar& x, const DualScalar& y)
    {
        return {x.real + y.real, x.infinitesimal + y.infinitesimal};
    }
    friend DualScalar operator-(const DualScalar& x, const DualScalar& y)
    {
        return {x.real - y.real, x.infinitesimal - y.infinitesimal};
    }
    friend DualScalar operator*(const DualScalar& x, const DualScalar& y)
    {
        return {x.real * y.real, x.real * y.infinitesimal + x.infinitesimal * y.real};
    }
    friend bool operator==(const DualScalar& x, const DualScalar& y)
    {
        return x.real == y.real && x.infinitesimal == y.infinitesimal;
    }
};

inline DualScalar dual_mul(const DualScalar& x, const DualScalar& y) { return x * y; }

// --- small exact-vector helpers used throughout ---

inline bool is_zero(const QVec& v)
{
    for (const auto& c : v)
        if (c != 0)
            return false;
    return true;
}

inline QVec zero_vec(int dim) { return QVec(static_cast<size_t>(dim)); }

inline QVec& add_into(QVec& a, const QVec& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

inline QVec add(QVec a, const QVec& b) { return add_into(a, b); }

inline QVec sub(QVec a, const QVec& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

inline QVec scale(QVec a, const Rational& c)
{
    for (auto& x : a)
        x *= c;
    return a;
}

inline QVec& axpy_into(QVec& a, const Rational& c, const QVec& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] += c * b[i];
    return a;
}

std::string vec_str(const QVec& v);

} // namespace vac
