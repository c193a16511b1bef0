#include "heavenly/rational.hpp"

#include <cctype>

namespace heavenly {

namespace {

bool valid_integer(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

Rat rat_parse(const std::string& text) {
    std::string s = strip(text);
    if (s.empty()) throw ParseError("empty rational literal");
    std::size_t slash = s.find('/');
    std::string num = strip(slash == std::string::npos ? s : s.substr(0, slash));
    std::string den = slash == std::string::npos ? "1" : strip(s.substr(slash + 1));
    if (!valid_integer(num) || !valid_integer(den))
        throw ParseError("malformed rational literal: '" + text + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw ParseError("zero denominator in rational literal: '" + text + "'");
    Rat r(n, d);
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& value) { return value.get_str(); }

}  // namespace heavenly
