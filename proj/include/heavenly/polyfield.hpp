#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <vector>

#include "heavenly/errors.hpp"
#include "heavenly/rational.hpp"

namespace heavenly {

// Chart coordinates x^mu = (p, q, pb, qb) with fixed indices 0..3.  The
// noncommutativity matrix acts only in the (pb, qb) block, so the index
// assignment is load-bearing and must not change.
enum Coord : int { P = 0, Q = 1, PB = 2, QB = 3 };

inline const char* coord_name(int mu) {
    static const char* names[4] = {"p", "q", "pb", "qb"};
    return names[mu];
}

// Exponent vector of one monomial p^a q^b pb^c qb^d.
using Mono = std::array<std::uint8_t, 4>;

inline int mono_degree(const Mono& m) {
    return int(m[0]) + int(m[1]) + int(m[2]) + int(m[3]);
}

// Graded lexicographic order, highest total degree first.  Gives polynomials
// one canonical term order for printing and comparison.
struct GrlexDesc {
    bool operator()(const Mono& a, const Mono& b) const {
        int da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

// Process-wide total-degree cap.  Operations whose result would contain a
// monomial above the cap throw DegreeCapError instead of silently truncating.
// The default bounds runtimes of the randomized identity tests; tests that
// legitimately need more headroom raise it through a DegreeCapGuard.
int degree_cap();
int set_degree_cap(int cap);

struct DegreeCapGuard {
    explicit DegreeCapGuard(int cap) : previous_(set_degree_cap(cap)) {}
    ~DegreeCapGuard() { set_degree_cap(previous_); }
    DegreeCapGuard(const DegreeCapGuard&) = delete;
    DegreeCapGuard& operator=(const DegreeCapGuard&) = delete;

  private:
    int previous_;
};

// Polynomial in (p, q, pb, qb) with exact rational coefficients.  Values are
// immutable after construction: every operation returns a new polynomial, so
// instances are safe to share across threads.  Zero coefficients are never
// stored and the zero polynomial has an empty term map.
class PolyField {
  public:
    using TermMap = std::map<Mono, Rat, GrlexDesc>;

    PolyField() = default;

    static PolyField constant(const Rat& c);
    static PolyField var(int mu);
    static PolyField monomial(const Mono& m, const Rat& c);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value of a constant polynomial (0 for the zero polynomial).  Throws
    // Error if called on a non-constant.
    Rat constant_value() const;

    // Total degree; -1 for the zero polynomial.
    int degree() const;
    // Largest pb+qb exponent sum over the terms; -1 for zero.  Bounds the
    // order at which bidifferential contractions terminate.
    int anti_degree() const;

    Rat coeff(const Mono& m) const;

    PolyField operator-() const;
    PolyField operator+(const PolyField& rhs) const;
    PolyField operator-(const PolyField& rhs) const;
    PolyField operator*(const PolyField& rhs) const;
    PolyField operator*(const Rat& s) const;
    PolyField operator/(const Rat& s) const;
    PolyField& operator+=(const PolyField& rhs) { return *this = *this + rhs; }
    PolyField& operator-=(const PolyField& rhs) { return *this = *this - rhs; }

    bool operator==(const PolyField& rhs) const { return terms_ == rhs.terms_; }
    bool operator!=(const PolyField& rhs) const { return !(*this == rhs); }

    // Partial derivative with respect to coordinate mu.
    PolyField partial(int mu) const;
    // Iterated partial: d^n/dx_mu^n.
    PolyField partial(int mu, int n) const;

    // Coordinate swap p <-> pb, q <-> qb.  On real-coefficient polynomials
    // this is complex conjugation of the underlying function.
    PolyField conj_swap() const;

    // Exact evaluation at a rational point (p, q, pb, qb).
    Rat evaluate(const std::array<Rat, 4>& x) const;

    // Substitute a polynomial for each variable.  Used to pass from formal
    // Hessian-slot expressions to concrete second derivatives of a potential.
    PolyField compose(const std::array<PolyField, 4>& x) const;

    // Raise to a non-negative integer power.
    PolyField pow(int n) const;

  private:
    void add_term(const Mono& m, const Rat& c);
    static void check_cap(const Mono& m);

    TermMap terms_;
};

inline PolyField operator*(const Rat& s, const PolyField& f) { return f * s; }

}  // namespace heavenly
