#pragma once

#include <array>
#include <vector>

#include <json.hpp>

#include "heavenly/heavenly.hpp"
#include "heavenly/polyfield.hpp"

namespace heavenly {

// One order of the frame expansion: entry [mu][a] is the component carrying
// coordinate index mu (row) and flat index a (column), each a polynomial in
// the chart coordinates.
using VierbeinOrder = std::array<std::array<PolyField, 4>, 4>;

// Flat-index pairing matrix: the off-diagonal 2x2 blocks pair flat indices
// (1,2) and (3,4).
std::array<std::array<Rat, 4>, 4> flat_metric();

// Classical (order-0) frame of a potential.  The p and q rows are the
// constant unit vectors into flat slots 2 and 4; the pb and qb rows carry the
// mixed second derivatives.  Contracting two copies with flat_metric()
// reproduces the metric of the potential: the (holomorphic, antiholomorphic)
// block is the mixed Hessian and every other block vanishes.
VierbeinOrder classical_vierbein(const PolyField& omega);

// Frame expansion in the deformation parameter: orders[n] is the coefficient
// of theta^n; orders[0] must be the classical frame.
struct Vierbein {
    std::vector<VierbeinOrder> orders;
};

// Metric coefficient at order n from the frame expansion:
//   g^(n)_{mu nu} = sum_{m=0..n} e^(m)_mu^a e^(n-m)_nu^b eta_ab.
// Symmetric by construction.  Throws LengthError when orders 0..n are not
// all present.
std::array<std::array<PolyField, 4>, 4> metric_order_n(const Vierbein& vb, int n);

// Which of the two solvable coefficient-family schemes a parameter set
// belongs to.
enum class AnsatzCase { I, II };

// Full parameter record for a first-order frame correction.  The four primed
// families are spelled alpha, alpha_p (one prime), alpha_pp, alpha_ppp.  C is
// always derived by the solver, never supplied.  A and A_p enter case II
// only.
struct AnsatzParams {
    AnsatzCase which = AnsatzCase::I;
    Rat alpha, beta, gamma, delta, sigma;
    Rat alpha_p, beta_p, gamma_p, delta_p, sigma_p;
    Rat alpha_pp, beta_pp, gamma_pp, delta_pp, sigma_pp;
    Rat alpha_ppp, beta_ppp, gamma_ppp, delta_ppp, sigma_ppp;
    Rat A, A_p;
    Rat C;
};

// Free parameters of scheme I.  The solver determines every other family
// member.  Throws ZeroDenominator when beta_ppp = 0 (the constant C divides
// by it) and when C comes out zero while the one-prime family is nonzero.
struct CaseIFree {
    Rat alpha, alpha_p, beta, gamma, delta, sigma, gamma_pp, beta_ppp;
};
AnsatzParams solve_case_I(const CaseIFree& free);

// Free parameters of scheme II.  Consistency demands sigma_p != 0, beta != 0
// (ZeroDenominator), and the two independent determinations of C to agree,
// which pins gamma = sigma = 0 in the unprimed family and requires the
// supplied pair (gamma_p, delta) and (sigma_p, beta) to give the same ratio
// (InconsistentC otherwise).
struct CaseIIFree {
    Rat alpha, alpha_p, beta, gamma_p, delta, sigma_p;
};
AnsatzParams solve_case_II(const CaseIIFree& free);

// The eight nonzero first-order frame components as polynomials in the four
// formal Hessian slots x1 = Omega_ppb, x2 = Omega_qqb, x3 = Omega_pqb,
// x4 = Omega_qpb (stored in the polynomial variables p, q, pb, qb in that
// order).
struct FrameComponents {
    PolyField a1, a3;  // pb row, flat slots 1 and 3
    PolyField b1, b3;  // qb row, flat slots 1 and 3
    PolyField c2, c4;  // p row, flat slots 2 and 4
    PolyField d2, d4;  // q row, flat slots 2 and 4
};
FrameComponents first_order_components(const AnsatzParams& params);

// Formal first-order residual of the field equation under the component
// substitution, as a polynomial in the Hessian slots.  Built from the same
// four derivative identities the solver starts from; no cancellations are
// assumed.
PolyField first_order_constraint_full(const AnsatzParams& params);

// The compact constraint polynomial the solve reduces to after integration
// by parts, again over the formal Hessian slots.
PolyField first_order_constraint_compact(const AnsatzParams& params);

// Reduce a formal-slot polynomial modulo the classical field equation
// x1 x2 - x3 x4 = 1 by eliminating every mixed x1 x2 occurrence.
PolyField reduce_onshell(const PolyField& f);

// First-order frame of a concrete potential: the formal components evaluated
// on the actual mixed Hessian, placed into the sparsity pattern (holomorphic
// rows touch flat slots 2 and 4 only, antiholomorphic rows slots 1 and 3
// only).
VierbeinOrder vierbein_order1(const AnsatzParams& params, const PolyField& omega);

// Recover the first-order potential correction from a constant first-order
// frame.  Entries must be constants (NonConstantEntries) and must respect
// the sparsity pattern.
PolyField omega1_reconstruct(const VierbeinOrder& e1, const PolyField& omega);

// Recover the order-n potential correction from constant frame corrections
// of orders 1..n (corr[k] holds order k+1).  The cross terms of orders m and
// n-m enter through the flat pairing.  Throws LengthError when fewer than n
// corrections are supplied.
PolyField omega_n_reconstruct(const std::vector<VierbeinOrder>& corr,
                              const PolyField& omega, int n);

// JSON round trip.  Input accepts only "case" plus that scheme's free
// parameters; derived quantities are rejected so a file cannot contradict
// the solver.
nlohmann::json ansatz_to_json(const AnsatzParams& params);
AnsatzParams ansatz_from_json(const nlohmann::json& j);

}  // namespace heavenly
