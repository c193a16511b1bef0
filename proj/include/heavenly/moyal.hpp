#pragma once

#include <vector>

#include "heavenly/polyfield.hpp"
#include "heavenly/rational.hpp"

namespace heavenly {

// Constant antisymmetric 4x4 rational matrix.  The deformation matrix is
// theta * epsilon_block(): the only nonzero entries sit in the (pb, qb)
// block, entries (2,3) = +1 and (3,2) = -1.
struct NCMatrix {
    Rat m[4][4] = {};

    static NCMatrix epsilon_block();
    static NCMatrix theta_matrix(const Rat& theta);

    bool antisymmetric() const;
};

// Truncated power series in the deformation parameter with polynomial
// coefficients, all real.  c[n] multiplies theta^n.  Orders 0..truncation are
// meaningful; trailing zero coefficients are trimmed, so c.size() may be
// smaller than truncation+1 and coeff(n) fills the gap with zero.  The exact
// flag records that every order above the truncation vanishes identically
// (the underlying contraction series terminated), not merely that the series
// was cut off.
struct ThetaSeries {
    std::vector<PolyField> c;
    int truncation = 0;
    bool exact = false;

    ThetaSeries() = default;
    ThetaSeries(std::vector<PolyField> coeffs, int trunc, bool exact_flag);

    // Order-0 series for a plain polynomial: exact, all higher orders zero.
    static ThetaSeries from_poly(const PolyField& f, int trunc);

    PolyField coeff(int n) const;
    bool is_zero() const { return c.empty(); }

    ThetaSeries operator+(const ThetaSeries& rhs) const;
    ThetaSeries operator-(const ThetaSeries& rhs) const;
    ThetaSeries operator-() const;
    ThetaSeries operator*(const Rat& s) const;
    bool operator==(const ThetaSeries& rhs) const;
    bool operator!=(const ThetaSeries& rhs) const { return !(*this == rhs); }

    // Derivative coefficient-wise with respect to coordinate mu.
    ThetaSeries partial(int mu) const;

  private:
    void trim();
};

// Ordinary (pointwise) product of two series, truncated at N.
ThetaSeries series_mul(const ThetaSeries& a, const ThetaSeries& b, int N);

// Series in theta whose coefficients carry explicit real and imaginary
// rational-polynomial parts.  Star products of real inputs are genuinely
// complex order by order; this type keeps the bookkeeping exact instead of
// tracking powers of i symbolically.  re and im are padded to equal length.
struct CSeries {
    std::vector<PolyField> re, im;
    int truncation = 0;
    bool exact = false;

    static CSeries from_real(const ThetaSeries& a);
    static CSeries from_poly(const PolyField& f, int trunc);

    PolyField re_coeff(int n) const;
    PolyField im_coeff(int n) const;
    bool real_part_only() const;  // every im coefficient is zero

    CSeries operator+(const CSeries& rhs) const;
    CSeries operator-(const CSeries& rhs) const;

    void trim();
};

// r-th bidifferential contraction
//   V_r(f, g) = (1/(r! 2^r)) sum_j C(r,j) (-1)^(r-j)
//               (d_pb^j d_qb^(r-j) f) (d_qb^j d_pb^(r-j) g).
// V_0 is the pointwise product; V_1 is half the Poisson bracket.  Vanishes
// identically once r exceeds the anti-degree of either argument.
PolyField v_contract(const PolyField& f, const PolyField& g, int r);

// One term of the star product: f (star_r) g = i^r V_r(f, g).  value holds
// V_r; the accompanying power of i is reduced mod 4.
struct StarTerm {
    PolyField value;
    int ipow;
};
StarTerm star_r(const PolyField& f, const PolyField& g, int r);

// Poisson bracket in the (pb, qb) block: f_pb g_qb - f_qb g_pb.
PolyField poisson_bracket(const PolyField& f, const PolyField& g);

// Full star product through order N, with the i^r factors folded into exact
// real/imaginary parts.  Inputs may themselves be series.
CSeries star_product(const PolyField& f, const PolyField& g, int N);
CSeries star_product(const CSeries& a, const CSeries& b, int N);

// Symmetrized star product (a (star) b + b (star) a)/2 of two real series.
// Odd contractions cancel pairwise, so the result is certified real.
ThetaSeries sym_star_product(const ThetaSeries& a, const ThetaSeries& b, int N);

// Moyal bracket through order N.  Computed as the star commutator divided by
// (i theta), realized as an index shift on the commutator series: the order-0
// commutator coefficient and every real part must vanish identically, and
// this is checked, which certifies the returned coefficients real.  Only even
// orders are populated; order 0 is the Poisson bracket.
ThetaSeries moyal_bracket(const PolyField& f, const PolyField& g, int N);
ThetaSeries moyal_bracket(const ThetaSeries& f, const ThetaSeries& g, int N);

}  // namespace heavenly
