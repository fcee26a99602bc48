#include "tdilp/integer.hpp"

#include <limits>

namespace tdilp {

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;  // truncates toward zero
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a - q * b;
    if (r != 0 && ((r < 0) == (b < 0)))
        ++q;
    return q;
}

int mod_small(const Integer& a, int q)
{
    Integer r = a % q;
    int v = static_cast<int>(r);
    if (v < 0)
        v += q;
    return v;
}

Integer abs_value(const Integer& a)
{
    return a < 0 ? Integer(-a) : a;
}

Integer gcd_value(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(abs_value(a), abs_value(b));
}

std::string to_string(const Integer& a)
{
    return a.str();
}

std::optional<Integer> parse_integer(std::string_view text)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos == text.size())
        return std::nullopt;
    for (std::size_t i = pos; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            return std::nullopt;
    Integer value(std::string(text.substr(pos)));
    return negative ? Integer(-value) : value;
}

std::optional<std::int64_t> to_int64(const Integer& a)
{
    if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min())
        return std::nullopt;
    return static_cast<std::int64_t>(a);
}

}  // namespace tdilp
