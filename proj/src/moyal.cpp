#include "heavenly/moyal.hpp"

#include <algorithm>

namespace heavenly {

NCMatrix NCMatrix::epsilon_block() {
    NCMatrix e;
    e.m[PB][QB] = 1;
    e.m[QB][PB] = -1;
    return e;
}

NCMatrix NCMatrix::theta_matrix(const Rat& theta) {
    NCMatrix t = epsilon_block();
    for (auto& row : t.m)
        for (auto& entry : row) entry *= theta;
    return t;
}

bool NCMatrix::antisymmetric() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (m[i][j] != -m[j][i]) return false;
    return true;
}

ThetaSeries::ThetaSeries(std::vector<PolyField> coeffs, int trunc, bool exact_flag)
    : c(std::move(coeffs)), truncation(trunc), exact(exact_flag) {
    if (trunc < 0) throw Error("series truncation must be non-negative");
    if (int(c.size()) > trunc + 1) throw Error("series has more coefficients than truncation+1");
    trim();
}

ThetaSeries ThetaSeries::from_poly(const PolyField& f, int trunc) {
    return ThetaSeries({f}, trunc, true);
}

void ThetaSeries::trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

PolyField ThetaSeries::coeff(int n) const {
    if (n < 0) throw Error("negative series order");
    if (n >= int(c.size())) return PolyField();
    return c[std::size_t(n)];
}

ThetaSeries ThetaSeries::operator+(const ThetaSeries& rhs) const {
    // Both exact: all orders above either stored length vanish, so the sum is
    // exact out to the larger horizon.  Otherwise knowledge stops at the
    // smaller one.
    bool both = exact && rhs.exact;
    int trunc = both ? std::max(truncation, rhs.truncation)
                     : std::min(truncation, rhs.truncation);
    std::vector<PolyField> out(std::size_t(trunc) + 1);
    for (int n = 0; n <= trunc; ++n) out[std::size_t(n)] = coeff(n) + rhs.coeff(n);
    return ThetaSeries(std::move(out), trunc, both);
}

ThetaSeries ThetaSeries::operator-(const ThetaSeries& rhs) const { return *this + (-rhs); }

ThetaSeries ThetaSeries::operator-() const {
    ThetaSeries out = *this;
    for (auto& f : out.c) f = -f;
    return out;
}

ThetaSeries ThetaSeries::operator*(const Rat& s) const {
    ThetaSeries out = *this;
    for (auto& f : out.c) f = f * s;
    out.trim();
    return out;
}

bool ThetaSeries::operator==(const ThetaSeries& rhs) const {
    // Value comparison: truncation horizon and coefficients; the exact flag is
    // provenance metadata, not part of the value.
    return truncation == rhs.truncation && c == rhs.c;
}

ThetaSeries ThetaSeries::partial(int mu) const {
    ThetaSeries out = *this;
    for (auto& f : out.c) f = f.partial(mu);
    out.trim();
    return out;
}

ThetaSeries series_mul(const ThetaSeries& a, const ThetaSeries& b, int N) {
    std::vector<PolyField> out(std::size_t(N) + 1);
    int top = -1;
    for (int m = 0; m < int(a.c.size()); ++m) {
        if (a.c[m].is_zero()) continue;
        for (int n = 0; n < int(b.c.size()); ++n) {
            if (b.c[n].is_zero()) continue;
            top = std::max(top, m + n);
            if (m + n > N) continue;
            out[std::size_t(m + n)] += a.c[m] * b.c[n];
        }
    }
    bool exact = a.exact && b.exact && top <= N;
    return ThetaSeries(std::move(out), N, exact);
}

CSeries CSeries::from_real(const ThetaSeries& a) {
    CSeries out;
    out.re = a.c;
    out.im.assign(a.c.size(), PolyField());
    out.truncation = a.truncation;
    out.exact = a.exact;
    return out;
}

CSeries CSeries::from_poly(const PolyField& f, int trunc) {
    return from_real(ThetaSeries::from_poly(f, trunc));
}

PolyField CSeries::re_coeff(int n) const {
    return n < int(re.size()) ? re[std::size_t(n)] : PolyField();
}

PolyField CSeries::im_coeff(int n) const {
    return n < int(im.size()) ? im[std::size_t(n)] : PolyField();
}

bool CSeries::real_part_only() const {
    for (const auto& f : im)
        if (!f.is_zero()) return false;
    return true;
}

CSeries CSeries::operator+(const CSeries& rhs) const {
    bool both = exact && rhs.exact;
    int trunc = both ? std::max(truncation, rhs.truncation)
                     : std::min(truncation, rhs.truncation);
    CSeries out;
    out.truncation = trunc;
    out.exact = both;
    out.re.resize(std::size_t(trunc) + 1);
    out.im.resize(std::size_t(trunc) + 1);
    for (int n = 0; n <= trunc; ++n) {
        out.re[std::size_t(n)] = re_coeff(n) + rhs.re_coeff(n);
        out.im[std::size_t(n)] = im_coeff(n) + rhs.im_coeff(n);
    }
    out.trim();
    return out;
}

CSeries CSeries::operator-(const CSeries& rhs) const {
    CSeries neg = rhs;
    for (auto& f : neg.re) f = -f;
    for (auto& f : neg.im) f = -f;
    return *this + neg;
}

void CSeries::trim() {
    while (im.size() < re.size()) im.emplace_back();
    while (re.size() < im.size()) re.emplace_back();
    while (!re.empty() && re.back().is_zero() && im.back().is_zero()) {
        re.pop_back();
        im.pop_back();
    }
}

namespace {

Rat binomial(int r, int j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(r), static_cast<unsigned long>(j));
    return Rat(b);
}

Rat contraction_prefactor(int r) {
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(r));
    mpz_class denom = fact << r;  // r! * 2^r
    Rat pref(1, denom);
    pref.canonicalize();
    return pref;
}

}  // namespace

PolyField v_contract(const PolyField& f, const PolyField& g, int r) {
    if (r < 0) throw Error("negative contraction order");
    if (r == 0) return f * g;
    if (r > f.anti_degree() || r > g.anti_degree()) return PolyField();
    Rat pref = contraction_prefactor(r);
    PolyField acc;
    for (int j = 0; j <= r; ++j) {
        Rat c = binomial(r, j) * ((r - j) % 2 ? -1 : 1) * pref;
        PolyField df = f.partial(PB, j).partial(QB, r - j);
        if (df.is_zero()) continue;
        PolyField dg = g.partial(QB, j).partial(PB, r - j);
        if (dg.is_zero()) continue;
        acc += df * dg * c;
    }
    return acc;
}

StarTerm star_r(const PolyField& f, const PolyField& g, int r) {
    return StarTerm{v_contract(f, g, r), r % 4};
}

PolyField poisson_bracket(const PolyField& f, const PolyField& g) {
    return f.partial(PB) * g.partial(QB) - f.partial(QB) * g.partial(PB);
}

CSeries star_product(const CSeries& a, const CSeries& b, int N) {
    CSeries out;
    out.truncation = N;
    out.re.assign(std::size_t(N) + 1, PolyField());
    out.im.assign(std::size_t(N) + 1, PolyField());
    // Track the highest order any contraction could reach, to decide whether
    // the truncation dropped information.
    int top = -1;
    int alen = int(std::max(a.re.size(), a.im.size()));
    int blen = int(std::max(b.re.size(), b.im.size()));
    for (int m = 0; m < alen; ++m) {
        PolyField ar = a.re_coeff(m), ai = a.im_coeff(m);
        if (ar.is_zero() && ai.is_zero()) continue;
        for (int n = 0; n < blen; ++n) {
            PolyField br = b.re_coeff(n), bi = b.im_coeff(n);
            if (br.is_zero() && bi.is_zero()) continue;
            int anti = std::min(std::max(ar.anti_degree(), ai.anti_degree()),
                                std::max(br.anti_degree(), bi.anti_degree()));
            top = std::max(top, m + n + anti);
            for (int r = 0; m + n + r <= N && r <= anti; ++r) {
                // (ar + i ai) contracted with (br + i bi), then rotated by i^r.
                PolyField vre = v_contract(ar, br, r) - v_contract(ai, bi, r);
                PolyField vim = v_contract(ar, bi, r) + v_contract(ai, br, r);
                std::size_t t = std::size_t(m + n + r);
                switch (r % 4) {
                    case 0:
                        out.re[t] += vre;
                        out.im[t] += vim;
                        break;
                    case 1:
                        out.re[t] -= vim;
                        out.im[t] += vre;
                        break;
                    case 2:
                        out.re[t] -= vre;
                        out.im[t] -= vim;
                        break;
                    default:
                        out.re[t] += vim;
                        out.im[t] -= vre;
                        break;
                }
            }
        }
    }
    out.exact = a.exact && b.exact && top <= N;
    out.trim();
    return out;
}

CSeries star_product(const PolyField& f, const PolyField& g, int N) {
    return star_product(CSeries::from_poly(f, N), CSeries::from_poly(g, N), N);
}

ThetaSeries sym_star_product(const ThetaSeries& a, const ThetaSeries& b, int N) {
    // (a * b + b * a)/2: the odd contractions cancel by the antisymmetry
    // V_r(g, f) = (-1)^r V_r(f, g), leaving i^(2s) V_2s = (-1)^s V_2s.  The
    // result is real by construction.
    std::vector<PolyField> out(std::size_t(N) + 1);
    int top = -1;
    for (int m = 0; m < int(a.c.size()); ++m) {
        if (a.c[m].is_zero()) continue;
        for (int n = 0; n < int(b.c.size()); ++n) {
            if (b.c[n].is_zero()) continue;
            int anti = std::min(a.c[m].anti_degree(), b.c[n].anti_degree());
            top = std::max(top, m + n + anti);
            for (int s = 0; m + n + 2 * s <= N && 2 * s <= anti; ++s) {
                PolyField v = v_contract(a.c[m], b.c[n], 2 * s);
                std::size_t t = std::size_t(m + n + 2 * s);
                if (s % 2)
                    out[t] -= v;
                else
                    out[t] += v;
            }
        }
    }
    bool exact = a.exact && b.exact && top <= N;
    return ThetaSeries(std::move(out), N, exact);
}

ThetaSeries moyal_bracket(const ThetaSeries& f, const ThetaSeries& g, int N) {
    // Star commutator divided by (i theta).  The division is an index shift:
    // the commutator of real series is purely imaginary with no order-0 part,
    // and both facts are verified here, which certifies the result real.
    CSeries fg = star_product(CSeries::from_real(f), CSeries::from_real(g), N + 1);
    CSeries gf = star_product(CSeries::from_real(g), CSeries::from_real(f), N + 1);
    CSeries comm = fg - gf;
    for (int t = 0; t <= N + 1; ++t)
        if (!comm.re_coeff(t).is_zero())
            throw Error("star commutator of real series acquired a real part");
    if (!comm.im_coeff(0).is_zero())
        throw Error("star commutator of real series has an order-0 term");
    std::vector<PolyField> out(std::size_t(N) + 1);
    for (int t = 0; t <= N; ++t) out[std::size_t(t)] = comm.im_coeff(t + 1);
    return ThetaSeries(std::move(out), N, comm.exact);
}

ThetaSeries moyal_bracket(const PolyField& f, const PolyField& g, int N) {
    return moyal_bracket(ThetaSeries::from_poly(f, N), ThetaSeries::from_poly(g, N), N);
}

}  // namespace heavenly
