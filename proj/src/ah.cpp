#include "heavenly/ah.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace heavenly {

EllipticModulus::EllipticModulus(double k_value) : k(k_value), kprime_sq(1.0 - k_value * k_value) {
    if (!std::isfinite(k_value) || k_value < 0.0 || k_value >= 1.0)
        throw DomainError("elliptic modulus must satisfy 0 <= k < 1");
}

namespace {

// One AGM pass storing the half-difference sequence c_n.  c_0 = k by the
// standard convention, so both integrals come from the same recurrence.
struct AgmResult {
    double agm;
    double c_sum;  // sum over n >= 0 of 2^(n-1) c_n^2
};

AgmResult agm_sequence(const EllipticModulus& m) {
    double a = 1.0;
    double b = std::sqrt(m.kprime_sq);
    double c = m.k;
    double sum = 0.5 * c * c;
    double scale = 1.0;
    for (int n = 0; n < 64 && c != 0.0; ++n) {
        double an = 0.5 * (a + b);
        double bn = std::sqrt(a * b);
        c = 0.5 * (a - b);
        a = an;
        b = bn;
        scale *= 2.0;
        sum += 0.5 * scale * c * c;
        if (std::abs(c) <= a * 1e-18) break;
    }
    return {a, sum};
}

}  // namespace

double elliptic_K(const EllipticModulus& m) {
    return std::acos(-1.0) / (2.0 * agm_sequence(m).agm);
}

double elliptic_E(const EllipticModulus& m) {
    AgmResult r = agm_sequence(m);
    double K = std::acos(-1.0) / (2.0 * r.agm);
    return K * (1.0 - r.c_sum);
}

AHCoeffs ah_coeffs(const EllipticModulus& m) {
    AHCoeffs c;
    c.k = m.k;
    c.K = elliptic_K(m);
    c.E = elliptic_E(m);
    c.G = c.E - m.kprime_sq * c.K;
    c.u = c.G / c.K;
    double K2 = c.K * c.K;
    c.bg = -K2 * (m.kprime_sq + c.u);
    c.gd = K2 * (m.kprime_sq - c.u);
    c.db = -K2 * c.u;
    c.b2 = c.bg * c.db / c.gd;
    c.g2 = c.bg * c.gd / c.db;
    c.d2 = c.gd * c.db / c.bg;
    if (!(c.b2 > 0.0) || !(c.g2 > 0.0) || !(c.d2 > 0.0)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "axis squares not all positive at k = %.6g (b2 = %.6g, g2 = %.6g, "
                      "d2 = %.6g)",
                      m.k, c.b2, c.g2, c.d2);
        throw SignError(buf);
    }
    // Signs chosen so the three pairwise products reproduce bg < 0, gd > 0,
    // db < 0 exactly: beta negative, gamma and delta positive.
    c.beta = -std::sqrt(c.b2);
    c.gamma = std::sqrt(c.g2);
    c.delta = std::sqrt(c.d2);
    return c;
}

AHPoint::AHPoint(const EllipticModulus& modulus, double theta, double psi_angle)
    : k(modulus), theta_angle(theta), psi(psi_angle) {
    if (!std::isfinite(theta) || !std::isfinite(psi_angle))
        throw DomainError("sample angles must be finite");
    const double two_pi = 2.0 * std::acos(-1.0);
    theta_angle = std::fmod(theta_angle, two_pi);
    if (theta_angle < 0.0) theta_angle += two_pi;
    if (theta_angle > std::acos(-1.0)) theta_angle = two_pi - theta_angle;
    psi = std::fmod(psi, two_pi);
    if (psi < 0.0) psi += two_pi;
}

AHMetric ah_metric(const AHPoint& pt) {
    AHMetric g;
    g.c = ah_coeffs(pt.k);
    double st = std::sin(pt.theta_angle), ct = std::cos(pt.theta_angle);
    double sp = std::sin(pt.psi), cp = std::cos(pt.psi);
    double s2t = st * st, c2t = ct * ct, s2p = sp * sp, c2p = cp * cp;
    const AHCoeffs& c = g.c;

    g.V_inv = 0.25 * (c.b2 * s2t * c2p + c.g2 * s2t * s2p + c.d2 * c2t);
    g.omega_theta = g.V_inv * (c.g2 - c.b2) * sp * cp * st;
    g.omega_psi = g.V_inv * c.d2 * ct;

    double k2 = pt.k.k * pt.k.k;
    double denom = 4.0 * k2 * pt.k.kprime_sq * c.K * c.K;
    g.gamma_kk = g.V_inv * c.b2 * c.g2 * c.d2 / (denom * denom);
    g.gamma_tt = (c.b2 * c.g2 * s2t + c.d2 * c2t * (c.b2 * s2p + c.g2 * c2p)) / 16.0;
    g.gamma_tp = -(c.d2 * (c.g2 - c.b2) * ct * st * cp * sp) / 16.0;
    g.gamma_pp = c.d2 * s2t * (c.b2 * c2p + c.g2 * s2p) / 16.0;

    double pair_sum = c.bg + c.gd + c.db;
    g.J = (pair_sum - c.gd * s2t * c2p - c.db * s2t * s2p - c.bg * c2t) / 8.0;
    g.Omega = pair_sum / 4.0 - g.J;
    return g;
}

namespace {

void validate_grid(const SweepGrid& grid) {
    if (grid.nk < 1 || grid.ntheta < 1 || grid.npsi < 1)
        throw ConfigError("sweep grid needs at least one point per axis");
    if (grid.k_min > grid.k_max) throw ConfigError("sweep grid has k_min > k_max");
    EllipticModulus lo(grid.k_min), hi(grid.k_max);
    (void)lo;
    (void)hi;
}

SweepRow sweep_point(const SweepGrid& grid, int ik, int it, int ip) {
    const double pi = std::acos(-1.0);
    double k = grid.nk == 1
                   ? grid.k_min
                   : grid.k_min + (grid.k_max - grid.k_min) * double(ik) / double(grid.nk - 1);
    double theta = grid.ntheta == 1 ? 0.0 : pi * double(it) / double(grid.ntheta - 1);
    double psi = 2.0 * pi * double(ip) / double(grid.npsi);
    SweepRow row;
    row.k = k;
    row.theta_angle = theta;
    row.psi = psi;
    row.m = ah_metric(AHPoint(EllipticModulus(k), theta, psi));
    return row;
}

}  // namespace

std::vector<SweepRow> ah_sweep_serial(const SweepGrid& grid) {
    validate_grid(grid);
    std::vector<SweepRow> rows(std::size_t(grid.nk) * std::size_t(grid.ntheta) *
                               std::size_t(grid.npsi));
    for (int ik = 0; ik < grid.nk; ++ik)
        for (int it = 0; it < grid.ntheta; ++it)
            for (int ip = 0; ip < grid.npsi; ++ip) {
                std::size_t idx = (std::size_t(ik) * std::size_t(grid.ntheta) +
                                   std::size_t(it)) *
                                      std::size_t(grid.npsi) +
                                  std::size_t(ip);
                rows[idx] = sweep_point(grid, ik, it, ip);
            }
    return rows;
}

std::vector<SweepRow> ah_sweep(const SweepGrid& grid) {
    validate_grid(grid);
    long long total = static_cast<long long>(grid.nk) * grid.ntheta * grid.npsi;
    std::vector<SweepRow> rows(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
    for (long long idx = 0; idx < total; ++idx) {
        int ip = int(idx % grid.npsi);
        int it = int((idx / grid.npsi) % grid.ntheta);
        int ik = int(idx / (static_cast<long long>(grid.npsi) * grid.ntheta));
        rows[std::size_t(idx)] = sweep_point(grid, ik, it, ip);
    }
    return rows;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "k,theta,psi,K,E,u,bg,gd,db,V_inv,omega_theta,omega_psi,"
           "gamma_kk,gamma_tt,gamma_tp,gamma_pp,J,Omega\n";
    for (const auto& r : rows) {
        const AHMetric& m = r.m;
        const AHCoeffs& c = m.c;
        out << fmt17(r.k) << ',' << fmt17(r.theta_angle) << ',' << fmt17(r.psi) << ','
            << fmt17(c.K) << ',' << fmt17(c.E) << ',' << fmt17(c.u) << ',' << fmt17(c.bg)
            << ',' << fmt17(c.gd) << ',' << fmt17(c.db) << ',' << fmt17(m.V_inv) << ','
            << fmt17(m.omega_theta) << ',' << fmt17(m.omega_psi) << ',' << fmt17(m.gamma_kk)
            << ',' << fmt17(m.gamma_tt) << ',' << fmt17(m.gamma_tp) << ','
            << fmt17(m.gamma_pp) << ',' << fmt17(m.J) << ',' << fmt17(m.Omega) << '\n';
    }
    return out.str();
}

nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        const AHMetric& m = r.m;
        const AHCoeffs& c = m.c;
        arr.push_back({{"k", fmt17(r.k)},
                       {"theta", fmt17(r.theta_angle)},
                       {"psi", fmt17(r.psi)},
                       {"K", fmt17(c.K)},
                       {"E", fmt17(c.E)},
                       {"u", fmt17(c.u)},
                       {"bg", fmt17(c.bg)},
                       {"gd", fmt17(c.gd)},
                       {"db", fmt17(c.db)},
                       {"V_inv", fmt17(m.V_inv)},
                       {"omega_theta", fmt17(m.omega_theta)},
                       {"omega_psi", fmt17(m.omega_psi)},
                       {"gamma_kk", fmt17(m.gamma_kk)},
                       {"gamma_tt", fmt17(m.gamma_tt)},
                       {"gamma_tp", fmt17(m.gamma_tp)},
                       {"gamma_pp", fmt17(m.gamma_pp)},
                       {"J", fmt17(m.J)},
                       {"Omega", fmt17(m.Omega)}});
    }
    return {{"root_signs", "beta < 0, gamma > 0, delta > 0"}, {"rows", arr}};
}

RotationalPartials rotational_partials(const RotationalField& field, double r, double q,
                                       double qb) {
    if (!field.f) throw Error("rotational field evaluator is empty");
    RotationalPartials d;
    bool need_fd = !(field.f_r && field.f_rr && field.f_qqb && field.f_rq && field.f_rqb);
    double h = field.h;
    if (need_fd && !(h > 0.0))
        throw StepError("finite differences requested with non-positive step");
    auto f = field.f;
    d.f_r = field.f_r ? field.f_r(r, q, qb)
                      : (f(r + h, q, qb) - f(r - h, q, qb)) / (2.0 * h);
    d.f_rr = field.f_rr
                 ? field.f_rr(r, q, qb)
                 : (f(r + h, q, qb) - 2.0 * f(r, q, qb) + f(r - h, q, qb)) / (h * h);
    d.f_qqb = field.f_qqb ? field.f_qqb(r, q, qb)
                          : (f(r, q + h, qb + h) - f(r, q + h, qb - h) -
                             f(r, q - h, qb + h) + f(r, q - h, qb - h)) /
                                (4.0 * h * h);
    d.f_rq = field.f_rq ? field.f_rq(r, q, qb)
                        : (f(r + h, q + h, qb) - f(r + h, q - h, qb) - f(r - h, q + h, qb) +
                           f(r - h, q - h, qb)) /
                              (4.0 * h * h);
    d.f_rqb = field.f_rqb ? field.f_rqb(r, q, qb)
                          : (f(r + h, q, qb + h) - f(r + h, q, qb - h) -
                             f(r - h, q, qb + h) + f(r - h, q, qb - h)) /
                                (4.0 * h * h);
    return d;
}

double rotational_residual(const RotationalField& field, double r, double q, double qb) {
    RotationalPartials d = rotational_partials(field, r, q, qb);
    return (d.f_r + r * d.f_rr) * d.f_qqb - r * d.f_rq * d.f_rqb - 1.0;
}

double toda_solve_r(const std::function<double(double)>& J_of_r, double J0, double lo,
                    double hi) {
    if (!(lo < hi)) throw DomainError("root bracket must satisfy lo < hi");
    double flo = J_of_r(lo) - J0;
    double fhi = J_of_r(hi) - J0;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw DomainError("target value is not bracketed by [lo, hi]");
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = J_of_r(mid) - J0;
        if (fm == 0.0 || (hi - lo) < 1e-15 * std::max(1.0, std::abs(mid))) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

double deformed_qqbar_order(int n, double rJ, const std::vector<double>& Jr,
                            const std::vector<double>& Oqq, double rq_rqbar_over_r,
                            double Oqq0) {
    if (n < 1) throw Error("deformed mixed derivative is defined for orders n >= 1");
    if (int(Jr.size()) < n)
        throw LengthError("need Jr orders 1.." + std::to_string(n) + ", have " +
                          std::to_string(Jr.size()));
    if (int(Oqq.size()) < n - 1)
        throw LengthError("need Oqq orders 1.." + std::to_string(n - 1) + ", have " +
                          std::to_string(Oqq.size()));
    double acc = rJ * Jr[std::size_t(n - 1)] * (Oqq0 - 2.0 * rJ);
    for (int m = 1; m <= n - 1; ++m)
        acc += rJ * Jr[std::size_t(n - m - 1)] *
               (Jr[std::size_t(m - 1)] * rq_rqbar_over_r - Oqq[std::size_t(m - 1)]);
    return acc;
}

namespace {

void validate_orders(const DeformedOrders& d, int N) {
    if (N < 0) throw Error("expansion order must be non-negative");
    if (int(d.Jr.size()) < N)
        throw LengthError("line element at order " + std::to_string(N) + " needs Jr orders 1.." +
                          std::to_string(N) + ", have " + std::to_string(d.Jr.size()));
    if (N >= 2 && int(d.Oqq.size()) < N - 1)
        throw LengthError("line element at order " + std::to_string(N) +
                          " needs Oqq orders 1.." + std::to_string(N - 1) + ", have " +
                          std::to_string(d.Oqq.size()));
}

}  // namespace

double deformed_line_element(const DeformedOrders& d, int N, double theta, double ds2,
                             double dq_dqbar) {
    validate_orders(d, N);
    double acc = ds2;  // order 0: Jr^(0) rJ = 1
    if (theta == 0.0) return acc;
    double tn = 1.0;
    for (int n = 1; n <= N; ++n) {
        tn *= theta;
        double coef_dq = -2.0 * d.rJ * d.rJ * d.Jr[std::size_t(n - 1)];
        for (int m = 1; m <= n - 1; ++m)
            coef_dq += d.rJ * d.Jr[std::size_t(n - m - 1)] *
                       (d.Jr[std::size_t(m - 1)] * d.rq_rqbar_over_r -
                        d.Oqq[std::size_t(m - 1)]);
        acc += tn * (d.Jr[std::size_t(n - 1)] * d.rJ * ds2 + coef_dq * dq_dqbar);
    }
    return acc;
}

LineElementForms deformed_line_element_forms(const DeformedOrders& d, int N, double theta,
                                             double ds2, double dq_dqbar, double gamma_dx2,
                                             double dJ2) {
    validate_orders(d, N);
    LineElementForms out;
    out.primary = deformed_line_element(d, N, theta, ds2, dq_dqbar);
    out.toda_frame = ds2;
    if (theta != 0.0) {
        double tn = 1.0;
        for (int n = 1; n <= N; ++n) {
            tn *= theta;
            double coef = 0.0;
            for (int m = 1; m <= n - 1; ++m)
                coef += d.rJ * d.Jr[std::size_t(n - m - 1)] *
                        (d.Jr[std::size_t(m - 1)] * d.rq_rqbar_over_r +
                         d.Oqq[std::size_t(m - 1)]);
            out.toda_frame += tn * (d.Jr[std::size_t(n - 1)] * d.rJ * ds2 +
                                    coef * 0.25 * (gamma_dx2 - dJ2));
        }
    }
    out.delta = out.primary - out.toda_frame;
    return out;
}

}  // namespace heavenly
