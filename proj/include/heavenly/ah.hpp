#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "heavenly/errors.hpp"

namespace heavenly {

// Elliptic modulus k with its complementary square k'^2 = 1 - k^2.
// Requires 0 <= k < 1.
struct EllipticModulus {
    double k;
    double kprime_sq;

    explicit EllipticModulus(double k_value);
};

// Complete elliptic integrals via the arithmetic-geometric mean:
//   K = pi / (2 agm(1, k')),   E = K (1 - sum 2^(n-1) c_n^2),  c_0 = k.
double elliptic_K(const EllipticModulus& m);
double elliptic_E(const EllipticModulus& m);

// Monopole moduli-space metric coefficients at modulus k.  bg, gd, db are the
// pairwise products of the three axis functions,
//   bg = -K^2 (k'^2 + u),   gd = K^2 (k'^2 - u),   db = -K^2 u,
// with u = G/K, G = E - k'^2 K.  The squares follow from the products; each
// must be positive on the sampled range (SignError otherwise).  The signed
// roots resolve the square roots consistently with the three products: beta
// negative, gamma and delta positive.
struct AHCoeffs {
    double k = 0;
    double K = 0, E = 0, G = 0, u = 0;
    double bg = 0, gd = 0, db = 0;
    double b2 = 0, g2 = 0, d2 = 0;
    double beta = 0, gamma = 0, delta = 0;
};

AHCoeffs ah_coeffs(const EllipticModulus& m);

// Sample point on the angular lattice.  theta_angle is folded into [0, pi]
// and psi into [0, 2 pi); both must be finite.
struct AHPoint {
    EllipticModulus k;
    double theta_angle;
    double psi;

    AHPoint(const EllipticModulus& modulus, double theta, double psi_angle);
};

// Killing-vector split of the metric at a sample point: inverse potential,
// connection 1-form components, base 3-metric in the (k^2, theta, psi)
// coordinates, and the potential function with its auxiliary combination J.
struct AHMetric {
    AHCoeffs c;
    double V_inv = 0;
    double omega_theta = 0, omega_psi = 0;
    double gamma_kk = 0, gamma_tt = 0, gamma_tp = 0, gamma_pp = 0;
    double J = 0, Omega = 0;
};

AHMetric ah_metric(const AHPoint& pt);

// Rectangular sample lattice: nk moduli linearly spaced in [k_min, k_max],
// ntheta polar angles spanning [0, pi], npsi azimuths spanning [0, 2 pi).
struct SweepGrid {
    double k_min = 0.2, k_max = 0.8;
    int nk = 10, ntheta = 8, npsi = 8;
};

struct SweepRow {
    double k = 0, theta_angle = 0, psi = 0;
    AHMetric m;
};

// Serial reference and the OpenMP-parallel sweep.  Rows are written by index,
// so the two agree bitwise.
std::vector<SweepRow> ah_sweep_serial(const SweepGrid& grid);
std::vector<SweepRow> ah_sweep(const SweepGrid& grid);

// 17-significant-digit writers.
std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

// Scalar field of the rotational reduction, sampled at real (r, q, qb).  The
// five partial derivatives may be supplied analytically; any missing one is
// taken by central differences with step h, which must then be positive
// (StepError otherwise).
struct RotationalField {
    std::function<double(double r, double q, double qb)> f;
    std::function<double(double, double, double)> f_r, f_rr, f_qqb, f_rq, f_rqb;
    double h = 0.0;

    bool analytic() const { return f_r && f_rr && f_qqb && f_rq && f_rqb; }
};

struct RotationalPartials {
    double f_r = 0, f_rr = 0, f_qqb = 0, f_rq = 0, f_rqb = 0;
};

RotationalPartials rotational_partials(const RotationalField& field, double r, double q,
                                       double qb);

// Residual of the reduced field equation
//   (f_r + r f_rr) f_qqb - r f_rq f_rqb - 1.
double rotational_residual(const RotationalField& field, double r, double q, double qb);

// Invert a monotone J(r) on [lo, hi] by bisection.  Throws DomainError when
// the bracket is invalid or J(lo), J(hi) do not straddle the target.
double toda_solve_r(const std::function<double(double)>& J_of_r, double J0, double lo,
                    double hi);

// Order-n mixed derivative of the deformed potential in the rotational
// reduction, from the lower orders:
//   rJ Jr[n] (Oqq0 - 2 rJ)
//     + sum_{m=1..n-1} rJ Jr[n-m] (Jr[m] rq_rqbar_over_r - Oqq[m]).
// Jr holds orders 1..n and Oqq orders 1..n-1 (LengthError when short).
double deformed_qqbar_order(int n, double rJ, const std::vector<double>& Jr,
                            const std::vector<double>& Oqq, double rq_rqbar_over_r,
                            double Oqq0);

// Inputs for the deformed line element at one sample: the classical r_J, the
// combination r_q r_qb / r, the classical mixed derivative, and the expansion
// coefficients Jr (orders 1..N) and Oqq (orders 1..N-1).
struct DeformedOrders {
    double rJ = 0;
    double rq_rqbar_over_r = 0;
    double Oqq0 = 0;
    std::vector<double> Jr;
    std::vector<double> Oqq;
};

// Primary form of the deformed line element through order N at deformation
// value theta, given the classical line element value ds2 and the dq dqb
// differential product:
//   ds2 + sum_{n>=1} theta^n [ Jr[n] rJ ds2
//       + (-2 rJ^2 Jr[n]
//          + sum_{m=1..n-1} rJ Jr[n-m](Jr[m] rq_rqbar_over_r - Oqq[m])) dqdqb ].
// At theta = 0 this returns ds2 unchanged, bit for bit.
double deformed_line_element(const DeformedOrders& d, int N, double theta, double ds2,
                             double dq_dqbar);

// Both published arrangements of the deformed line element.  `primary` is the
// form above; `toda_frame` replaces the dq dqb channel by
//   sum_{m=1..n-1} rJ Jr[n-m](Jr[m] rq_rqbar_over_r + Oqq[m]) (gamma_dx2 - dJ2)/4
// and carries no order-n standalone term.  The two agree at order 0 only;
// delta reports their difference.
struct LineElementForms {
    double primary = 0;
    double toda_frame = 0;
    double delta = 0;
};

LineElementForms deformed_line_element_forms(const DeformedOrders& d, int N, double theta,
                                             double ds2, double dq_dqbar, double gamma_dx2,
                                             double dJ2);

}  // namespace heavenly
