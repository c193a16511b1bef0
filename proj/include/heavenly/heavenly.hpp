#pragma once

#include <array>
#include <map>
#include <utility>

#include "heavenly/moyal.hpp"
#include "heavenly/polyfield.hpp"

namespace heavenly {

// Classical field equation residual det(mixed Hessian) - 1, written out as
//   Omega_ppb Omega_qqb - Omega_pqb Omega_qpb - 1.
// Zero exactly on solutions.
PolyField ma_residual(const PolyField& omega);

// Mixed second-derivative block of a potential: entry (i, jb) is the
// derivative by holomorphic coordinate i in {p, q} and antiholomorphic
// coordinate jb in {pb, qb}.
struct KahlerBlock {
    PolyField e[2][2];

    static KahlerBlock of(const PolyField& omega);
    PolyField det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
};

// Linearization of the classical residual around omega in the direction
// omega1: the exact coefficient of the first deformation order when the
// potential is omega + theta*omega1.
PolyField first_order_residual(const PolyField& omega, const PolyField& omega1);

// Residual series of the deformed field equation: the bracket of the two
// potential gradients minus 1,
//   {d_p Omega, d_q Omega}_MB - 1,
// order by order in theta.
ThetaSeries deformed_residual_series(const ThetaSeries& omega, int N);

// Single order r >= 0 of the residual series.  r = 0 reduces to ma_residual
// for an undeformed potential.
PolyField deformed_residual(const ThetaSeries& omega, int r);

// Deformed Kaehler-like two-form.  Components are stored for ordered index
// pairs mu < nu, each a theta-series tagged with its power of the formal
// frame parameter lambda (0, 1, or 2): the (p, q) component sits at lambda^0,
// the four mixed components at lambda^1, the (pb, qb) component at lambda^2.
struct TwoForm {
    struct Component {
        ThetaSeries series;
        int lambda_pow = 0;
    };
    std::map<std::pair<int, int>, Component> comp;

    const Component& at(int mu, int nu) const;
};

TwoForm build_two_form(const ThetaSeries& omega);

// Exterior derivative: for each ordered triple a < b < c the combination
// d_a w_bc - d_b w_ac + d_c w_ab, kept separated by lambda sector.
struct ThreeForm {
    std::map<std::array<int, 3>, std::map<int, ThetaSeries>> comp;
    bool is_zero() const;
};

ThreeForm exterior_derivative(const TwoForm& w);
bool is_closed(const TwoForm& w);

// Coefficient of dp^dpb^dq^dqb in (w ^ w)/2 at lambda^2, with the wedge taken
// through the symmetrized star product.  For the canonical two-form of a
// potential this vanishes on solutions at low orders: its order-0 and order-1
// coefficients coincide with the deformed field-equation residual.
ThetaSeries wedge_self(const TwoForm& w, int N);

// Determinant of the deformed mixed Hessian both ways: `ordinary` uses the
// pointwise product, `star_re`/`star_im` the star product of the series
// entries in the written order.  divergence_order is the first order where
// the two disagree (or the star value goes complex); -1 when they agree
// through N.
struct DetReport {
    ThetaSeries ordinary;
    ThetaSeries star_re;
    ThetaSeries star_im;
    int divergence_order = -1;
};

DetReport det_condition_series(const ThetaSeries& omega, int N);

// Reality structure of a correction term: the mixed Hessian must be hermitian
// under the coordinate swap conjugation,
//   conj(d_i d_jb f) == d_j d_ib f  for i, j in {p, q}.
bool hermiticity_check(const PolyField& omega_n);

// Extended report: `hermitian` as above; `pure_block` additionally records
// whether the holomorphic-holomorphic and antiholomorphic-antiholomorphic
// second derivatives vanish (a gauge choice, not a requirement).
struct HermiticityReport {
    bool hermitian = false;
    bool pure_block = false;
};

HermiticityReport hermiticity_report(const PolyField& omega_n);

}  // namespace heavenly
