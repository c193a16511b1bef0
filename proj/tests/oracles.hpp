#pragma once

// Independent reference implementations used to cross-check the library.
// Everything here is written against the defining formulas, not against the
// production code paths: contractions enumerate index tuples directly,
// brackets come from the odd-contraction expansion, and elliptic integrals
// are integrated numerically.

#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "heavenly/moyal.hpp"
#include "heavenly/polyfield.hpp"

namespace oracles {

using heavenly::Coord;
using heavenly::PolyField;
using heavenly::Rat;
using heavenly::ThetaSeries;

// r-fold contraction by brute-force enumeration: each of the r slots ranges
// over the two nonzero entries of the antisymmetric pairing, (pb,qb) with
// weight +1 and (qb,pb) with weight -1, so
//   V_r(f,g) = 1/(r! 2^r) sum over slot choices of
//              sign * (d_mu1..mur f)(d_nu1..nur g).
inline PolyField v_contract_enum(const PolyField& f, const PolyField& g, int r) {
    if (r == 0) return f * g;
    PolyField sum;
    for (int mask = 0; mask < (1 << r); ++mask) {
        PolyField df = f, dg = g;
        int sign = 1;
        for (int slot = 0; slot < r; ++slot) {
            if (mask & (1 << slot)) {
                df = df.partial(Coord::PB);
                dg = dg.partial(Coord::QB);
            } else {
                df = df.partial(Coord::QB);
                dg = dg.partial(Coord::PB);
                sign = -sign;
            }
            if (df.is_zero() || dg.is_zero()) break;
        }
        if (df.is_zero() || dg.is_zero()) continue;
        sum += sign > 0 ? df * dg : -(df * dg);
    }
    Rat denom = 1;
    for (int i = 2; i <= r; ++i) denom *= i;
    mpz_class two_r = mpz_class(1) << r;
    denom *= Rat(two_r);
    return sum / denom;
}

// Bracket of two coefficient series from the odd-contraction expansion:
//   out[t] = sum over m + n + 2s = t of 2 (-1)^s V_{2s+1}(f_m, g_n).
inline ThetaSeries moyal_bracket_direct(const ThetaSeries& f, const ThetaSeries& g, int N) {
    std::vector<PolyField> out(std::size_t(N) + 1);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n + m <= N; ++n)
            for (int s = 0; m + n + 2 * s <= N; ++s) {
                PolyField v = v_contract_enum(f.coeff(m), g.coeff(n), 2 * s + 1);
                if (v.is_zero()) continue;
                Rat w = s % 2 == 0 ? Rat(2) : Rat(-2);
                out[std::size_t(m + n + 2 * s)] += w * v;
            }
    return ThetaSeries(out, N, f.exact && g.exact);
}

// Adaptive Simpson quadrature, plain recursive halving.
inline double simpson_slice(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson_slice(a, m, fa, flm, fm);
    double right = simpson_slice(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-14) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson_slice(a, b, fa, fm, fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Complete elliptic integrals from their trigonometric integral forms.
inline double elliptic_K_quad(double k) {
    return integrate(
        [k](double t) {
            double s = std::sin(t);
            return 1.0 / std::sqrt(1.0 - k * k * s * s);
        },
        0.0, std::acos(-1.0) / 2.0);
}

inline double elliptic_E_quad(double k) {
    return integrate(
        [k](double t) {
            double s = std::sin(t);
            return std::sqrt(1.0 - k * k * s * s);
        },
        0.0, std::acos(-1.0) / 2.0);
}

}  // namespace oracles
