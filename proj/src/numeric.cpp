#include "ck/numeric.hpp"

#include <cctype>

namespace ck {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.erase(v.begin());
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.pop_back();
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(num, den);
    }
    // decimal / scientific
    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
        negative = s[pos] == '-';
        ++pos;
    }
    std::string digits;
    long exponent = 0;
    bool seen_digit = false;
    for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
        digits += s[pos];
        seen_digit = true;
    }
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        for (; pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])); ++pos) {
            digits += s[pos];
            --exponent;
            seen_digit = true;
        }
    }
    if (!seen_digit) throw std::invalid_argument("malformed rational '" + s + "'");
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        std::size_t used = 0;
        long e = std::stol(s.substr(pos), &used);
        pos += used;
        exponent += e;
    }
    if (pos != s.size()) throw std::invalid_argument("malformed rational '" + s + "'");
    Integer mantissa(digits);
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    Rational q = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.str(); }
std::string to_string(const Integer& z) { return z.str(); }

Integer floor(const Rational& q) {
    Integer n = numerator_of(q), d = denominator_of(q);
    Integer f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tmp = checked::sub(old_r, checked::mul(q, r));
        old_r = r;
        r = tmp;
        tmp = checked::sub(old_s, checked::mul(q, s));
        old_s = s;
        s = tmp;
        tmp = checked::sub(old_t, checked::mul(q, t));
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

std::int64_t binomial(std::int64_t e, int k) {
    // C(e,k) = prod_{j<k} (e-j) / k!, computed with exact intermediate division.
    Integer num = 1;
    Integer den = 1;
    for (int j = 0; j < k; ++j) {
        num *= Integer(e - j);
        den *= Integer(j + 1);
    }
    Integer r = num / den;
    if (r > Integer(INT64_MAX) || r < Integer(INT64_MIN)) throw std::overflow_error("binomial overflow");
    return static_cast<std::int64_t>(r);
}

}  // namespace ck
