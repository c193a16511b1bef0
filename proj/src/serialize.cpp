#include "heavenly/serialize.hpp"

#include <cctype>
#include <cstddef>
#include <sstream>

namespace heavenly {

std::string poly_str(const PolyField& f) {
    if (f.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : f.terms()) {
        if (!first) out << " + ";
        first = false;
        out << rat_str(c);
        bool any = false;
        std::ostringstream vars;
        for (int i = 0; i < 4; ++i) {
            if (m[i] == 0) continue;
            if (any) vars << ' ';
            any = true;
            vars << coord_name(i);
            if (m[i] > 1) vars << '^' << int(m[i]);
        }
        if (any) out << " * " << vars.str();
    }
    return out.str();
}

namespace {

struct Scanner {
    const std::string& s;
    std::size_t pos = 0;

    explicit Scanner(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos == s.size();
    }
    char peek() { return pos < s.size() ? s[pos] : '\0'; }

    std::string digits() {
        std::size_t b = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == b) throw ParseError("expected digits at position " + std::to_string(b) +
                                       " in '" + s + "'");
        return s.substr(b, pos - b);
    }

    Rat rational() {
        std::string num = digits();
        skip_ws();
        if (peek() == '/') {
            ++pos;
            skip_ws();
            std::string den = digits();
            return rat_parse(num + "/" + den);
        }
        return rat_parse(num);
    }

    int exponent() {
        std::string d = digits();
        if (d.size() > 3) throw ParseError("exponent too large in '" + s + "'");
        return std::stoi(d);
    }

    // Returns the coordinate index, or -1 if the cursor is not at a variable.
    int variable() {
        skip_ws();
        if (peek() != 'p' && peek() != 'q') return -1;
        char head = s[pos++];
        bool bar = pos < s.size() && s[pos] == 'b';
        if (bar) ++pos;
        if (head == 'p') return bar ? PB : P;
        return bar ? QB : Q;
    }
};

}  // namespace

PolyField poly_parse(const std::string& text) {
    Scanner sc(text);
    if (sc.done()) throw ParseError("empty polynomial literal");
    PolyField out;
    int sign = 1;
    while (true) {
        sc.skip_ws();
        // One optional sign may open the term itself, so the printer's
        // "+ -1 * p" form reads back.
        if (sc.peek() == '+' || sc.peek() == '-') {
            if (sc.peek() == '-') sign = -sign;
            ++sc.pos;
            sc.skip_ws();
        }
        Rat coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
            coeff = sc.rational();
            have_coeff = true;
        }
        Mono m{0, 0, 0, 0};
        bool have_var = false;
        while (true) {
            sc.skip_ws();
            if (sc.peek() == '*') {
                ++sc.pos;
                sc.skip_ws();
            }
            int v = sc.variable();
            if (v < 0) break;
            int e = 1;
            sc.skip_ws();
            if (sc.peek() == '^') {
                ++sc.pos;
                sc.skip_ws();
                e = sc.exponent();
            }
            int total = int(m[v]) + e;
            if (total > 255) throw ParseError("exponent overflow in '" + text + "'");
            m[v] = std::uint8_t(total);
            have_var = true;
        }
        if (!have_coeff && !have_var)
            throw ParseError("expected a term at position " + std::to_string(sc.pos) +
                             " in '" + text + "'");
        out += PolyField::monomial(m, coeff * sign);
        if (sc.done()) break;
        char sep = sc.peek();
        if (sep != '+' && sep != '-')
            throw ParseError("expected '+' or '-' at position " + std::to_string(sc.pos) +
                             " in '" + text + "'");
        sign = sep == '-' ? -1 : 1;
        ++sc.pos;
        if (sc.done()) throw ParseError("dangling term separator in '" + text + "'");
    }
    return out;
}

nlohmann::json poly_to_json(const PolyField& f) { return poly_str(f); }

PolyField poly_from_json(const nlohmann::json& j) {
    if (!j.is_string()) throw ParseError("polynomial JSON value must be a string");
    return poly_parse(j.get<std::string>());
}

nlohmann::json series_to_json(const ThetaSeries& s) {
    nlohmann::json orders = nlohmann::json::array();
    for (int n = 0; n < int(s.c.size()); ++n) {
        if (s.c[n].is_zero()) continue;
        orders.push_back({{"order", n}, {"poly", poly_str(s.c[n])}});
    }
    return {{"truncation", s.truncation}, {"exact", s.exact}, {"orders", orders}};
}

ThetaSeries series_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("truncation") || !j.contains("orders"))
        throw ParseError("series JSON must carry 'truncation' and 'orders'");
    int trunc = j.at("truncation").get<int>();
    std::vector<PolyField> c;
    for (const auto& entry : j.at("orders")) {
        int n = entry.at("order").get<int>();
        if (n < 0 || n > trunc) throw ParseError("series order outside [0, truncation]");
        if (int(c.size()) <= n) c.resize(std::size_t(n) + 1);
        c[std::size_t(n)] = poly_from_json(entry.at("poly"));
    }
    bool exact = j.value("exact", false);
    return ThetaSeries(std::move(c), trunc, exact);
}

std::string series_str(const ThetaSeries& s) {
    std::ostringstream out;
    bool first = true;
    for (int n = 0; n <= s.truncation; ++n) {
        PolyField cn = s.coeff(n);
        if (cn.is_zero()) continue;
        if (!first) out << "; ";
        first = false;
        out << "theta^" << n << ": " << poly_str(cn);
    }
    if (first) out << "0";
    out << " (truncated at order " << s.truncation << (s.exact ? ", exact)" : ")");
    return out.str();
}

}  // namespace heavenly
