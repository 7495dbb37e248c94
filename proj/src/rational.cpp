#include "vac/rational.hpp"

#include <sstream>

namespace vac {

std::optional<Rational> parse_rational(const std::string& s)
{
    if (s.empty())
        return std::nullopt;
    auto valid_int = [](const std::string& t) {
        if (t.empty())
            return false;
        size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size())
            return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
        return true;
    };
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!valid_int(s))
                return std::nullopt;
            return Rational(BigInt(s));
        }
        std::string p = s.substr(0, slash), q = s.substr(slash + 1);
        if (!valid_int(p) || !valid_int(q))
            return std::nullopt;
        BigInt den(q);
        if (den == 0)
            return std::nullopt;
        return Rational(BigInt(p), den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

Rational binom(long n, long k)
{
    if (k < 0)
        throw std::invalid_argument("binom: k must be nonnegative");
    Rational r = 1;
    for (long i = 0; i < k; ++i) {
        r *= Rational(n - i);
        r /= Rational(i + 1);
    }
    return r;
}

std::string vec_str(const QVec& v)
{
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            os << " ";
        os << rat_str(v[i]);
    }
    os << ")";
    return os.str();
}

} // namespace vac
