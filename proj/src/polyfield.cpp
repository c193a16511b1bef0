#include "heavenly/polyfield.hpp"

#include <atomic>
#include <string>

namespace heavenly {

namespace {
std::atomic<int> g_degree_cap{12};
}

int degree_cap() { return g_degree_cap.load(std::memory_order_relaxed); }

int set_degree_cap(int cap) {
    if (cap < 0 || cap > 255) throw Error("degree cap must lie in [0, 255]");
    return g_degree_cap.exchange(cap, std::memory_order_relaxed);
}

void PolyField::check_cap(const Mono& m) {
    int cap = degree_cap();
    if (mono_degree(m) > cap)
        throw DegreeCapError("monomial of total degree " +
                             std::to_string(mono_degree(m)) +
                             " exceeds the degree cap " + std::to_string(cap));
}

void PolyField::add_term(const Mono& m, const Rat& c) {
    if (c == 0) return;
    check_cap(m);
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

PolyField PolyField::constant(const Rat& c) {
    PolyField f;
    f.add_term(Mono{0, 0, 0, 0}, c);
    return f;
}

PolyField PolyField::var(int mu) {
    if (mu < 0 || mu > 3) throw Error("coordinate index out of range");
    Mono m{0, 0, 0, 0};
    m[mu] = 1;
    PolyField f;
    f.add_term(m, 1);
    return f;
}

PolyField PolyField::monomial(const Mono& m, const Rat& c) {
    PolyField f;
    f.add_term(m, c);
    return f;
}

bool PolyField::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == Mono{0, 0, 0, 0};
}

Rat PolyField::constant_value() const {
    if (terms_.empty()) return 0;
    if (!is_constant()) throw Error("constant_value called on a non-constant polynomial");
    return terms_.begin()->second;
}

int PolyField::degree() const {
    if (terms_.empty()) return -1;
    // Terms are ordered by descending total degree.
    return mono_degree(terms_.begin()->first);
}

int PolyField::anti_degree() const {
    if (terms_.empty()) return -1;
    int best = 0;
    for (const auto& [m, c] : terms_) {
        int d = int(m[PB]) + int(m[QB]);
        if (d > best) best = d;
    }
    return best;
}

Rat PolyField::coeff(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rat(0) : it->second;
}

PolyField PolyField::operator-() const {
    PolyField out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
    return out;
}

PolyField PolyField::operator+(const PolyField& rhs) const {
    PolyField out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, c);
    return out;
}

PolyField PolyField::operator-(const PolyField& rhs) const {
    PolyField out = *this;
    for (const auto& [m, c] : rhs.terms_) out.add_term(m, -c);
    return out;
}

PolyField PolyField::operator*(const PolyField& rhs) const {
    PolyField out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : rhs.terms_) {
            Mono m;
            for (int i = 0; i < 4; ++i) {
                int e = int(ma[i]) + int(mb[i]);
                if (e > 255) throw DegreeCapError("exponent overflow in product");
                m[i] = std::uint8_t(e);
            }
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

PolyField PolyField::operator*(const Rat& s) const {
    PolyField out;
    if (s == 0) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
}

PolyField PolyField::operator/(const Rat& s) const {
    if (s == 0) throw ZeroDenominator("division of a polynomial by zero");
    return *this * (Rat(1) / s);
}

PolyField PolyField::partial(int mu) const {
    if (mu < 0 || mu > 3) throw Error("coordinate index out of range");
    PolyField out;
    for (const auto& [m, c] : terms_) {
        if (m[mu] == 0) continue;
        Mono d = m;
        d[mu] -= 1;
        out.add_term(d, c * int(m[mu]));
    }
    return out;
}

PolyField PolyField::partial(int mu, int n) const {
    PolyField out = *this;
    for (int i = 0; i < n; ++i) out = out.partial(mu);
    return out;
}

PolyField PolyField::conj_swap() const {
    PolyField out;
    for (const auto& [m, c] : terms_) {
        Mono s{m[PB], m[QB], m[P], m[Q]};
        out.terms_.emplace(s, c);
    }
    return out;
}

Rat PolyField::evaluate(const std::array<Rat, 4>& x) const {
    // Power tables up to the maximum exponent per variable.
    std::array<std::vector<Rat>, 4> pw;
    for (int i = 0; i < 4; ++i) pw[i].push_back(1);
    Rat acc = 0;
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < 4; ++i) {
            while (pw[i].size() <= m[i]) pw[i].push_back(pw[i].back() * x[i]);
            t *= pw[i][m[i]];
        }
        acc += t;
    }
    return acc;
}

PolyField PolyField::compose(const std::array<PolyField, 4>& x) const {
    std::array<std::vector<PolyField>, 4> pw;
    for (int i = 0; i < 4; ++i) pw[i].push_back(PolyField::constant(1));
    PolyField acc;
    for (const auto& [m, c] : terms_) {
        PolyField t = PolyField::constant(c);
        for (int i = 0; i < 4; ++i) {
            while (pw[i].size() <= m[i]) pw[i].push_back(pw[i].back() * x[i]);
            t = t * pw[i][m[i]];
        }
        acc += t;
    }
    return acc;
}

PolyField PolyField::pow(int n) const {
    if (n < 0) throw Error("negative polynomial power");
    PolyField out = PolyField::constant(1);
    for (int i = 0; i < n; ++i) out = out * *this;
    return out;
}

}  // namespace heavenly
