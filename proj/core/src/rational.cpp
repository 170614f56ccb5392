#include "kinlap/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace kinlap {

std::string format_rational(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool is_integer_token(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    const auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_integer_token(num) || !is_integer_token(den))
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    std::string n(num), d(den);
    if (n[0] == '+') n.erase(0, 1);
    if (d[0] == '+') d.erase(0, 1);
    boost::multiprecision::cpp_int dn(d);
    if (dn == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return Rational(boost::multiprecision::cpp_int(n), dn);
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

Rational rational_pow(const Rational& base, int exponent) {
    if (exponent < 0) return rational_pow(Rational(1) / base, -exponent);
    Rational out = 1;
    for (int i = 0; i < exponent; ++i) out *= base;
    return out;
}

}  // namespace kinlap
