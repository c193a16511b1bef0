#include "heavenly/heavenly.hpp"

namespace heavenly {

PolyField ma_residual(const PolyField& omega) {
    KahlerBlock k = KahlerBlock::of(omega);
    return k.det() - PolyField::constant(1);
}

KahlerBlock KahlerBlock::of(const PolyField& omega) {
    KahlerBlock k;
    k.e[0][0] = omega.partial(P).partial(PB);
    k.e[0][1] = omega.partial(P).partial(QB);
    k.e[1][0] = omega.partial(Q).partial(PB);
    k.e[1][1] = omega.partial(Q).partial(QB);
    return k;
}

PolyField first_order_residual(const PolyField& omega, const PolyField& omega1) {
    KahlerBlock k = KahlerBlock::of(omega);
    KahlerBlock k1 = KahlerBlock::of(omega1);
    return k.e[0][0] * k1.e[1][1] + k1.e[0][0] * k.e[1][1] -
           k.e[0][1] * k1.e[1][0] - k1.e[0][1] * k.e[1][0];
}

ThetaSeries deformed_residual_series(const ThetaSeries& omega, int N) {
    ThetaSeries bracket = moyal_bracket(omega.partial(P), omega.partial(Q), N);
    return bracket - ThetaSeries::from_poly(PolyField::constant(1), N);
}

PolyField deformed_residual(const ThetaSeries& omega, int r) {
    if (r < 0) throw Error("negative residual order");
    return deformed_residual_series(omega, r).coeff(r);
}

const TwoForm::Component& TwoForm::at(int mu, int nu) const {
    auto it = comp.find({mu, nu});
    if (it == comp.end()) throw Error("two-form component index out of range");
    return it->second;
}

TwoForm build_two_form(const ThetaSeries& omega) {
    // w = dp^dq + lambda * (second-derivative block) + lambda^2 * dpb^dqb.
    TwoForm w;
    int N = omega.truncation;
    ThetaSeries one = ThetaSeries::from_poly(PolyField::constant(1), N);
    w.comp[{P, Q}] = {one, 0};
    w.comp[{P, PB}] = {omega.partial(P).partial(PB), 1};
    w.comp[{P, QB}] = {omega.partial(P).partial(QB), 1};
    w.comp[{Q, PB}] = {omega.partial(Q).partial(PB), 1};
    w.comp[{Q, QB}] = {omega.partial(Q).partial(QB), 1};
    w.comp[{PB, QB}] = {one, 2};
    return w;
}

bool ThreeForm::is_zero() const {
    for (const auto& [triple, sectors] : comp)
        for (const auto& [lam, series] : sectors)
            if (!series.is_zero()) return false;
    return true;
}

ThreeForm exterior_derivative(const TwoForm& w) {
    ThreeForm d;
    static const int triples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    for (const auto& t : triples) {
        int a = t[0], b = t[1], c = t[2];
        std::map<int, ThetaSeries> sectors;
        struct Piece {
            int mu, nu, diff;
            int sign;
        };
        const Piece pieces[3] = {{b, c, a, +1}, {a, c, b, -1}, {a, b, c, +1}};
        for (const auto& piece : pieces) {
            auto it = w.comp.find({piece.mu, piece.nu});
            if (it == w.comp.end()) continue;
            ThetaSeries term = it->second.series.partial(piece.diff);
            if (piece.sign < 0) term = -term;
            auto [sit, fresh] = sectors.try_emplace(it->second.lambda_pow, term);
            if (!fresh) sit->second = sit->second + term;
        }
        d.comp[{a, b, c}] = std::move(sectors);
    }
    return d;
}

bool is_closed(const TwoForm& w) { return exterior_derivative(w).is_zero(); }

ThetaSeries wedge_self(const TwoForm& w, int N) {
    // Half the wedge square, read off on the volume element dp^dpb^dq^dqb.
    // The three complementary index pairings of (0,1,2,3) carry the
    // permutation signs +1, -1, +1 relative to dx^0^dx^1^dx^2^dx^3, and that
    // ordered frame equals minus the chosen volume element, so every pairing
    // flips sign once more.  Products of components are symmetrized star
    // products; only the lambda^2 sector is returned.
    struct Pairing {
        std::pair<int, int> a, b;
        int sign;
    };
    const Pairing pairings[3] = {
        {{P, Q}, {PB, QB}, +1},
        {{P, PB}, {Q, QB}, -1},
        {{P, QB}, {Q, PB}, +1},
    };
    std::map<int, ThetaSeries> sectors;
    for (const auto& pr : pairings) {
        const auto& ca = w.at(pr.a.first, pr.a.second);
        const auto& cb = w.at(pr.b.first, pr.b.second);
        ThetaSeries prod = sym_star_product(ca.series, cb.series, N);
        int coeff = -pr.sign;  // permutation sign times the orientation flip
        if (coeff < 0) prod = -prod;
        int lam = ca.lambda_pow + cb.lambda_pow;
        auto [it, fresh] = sectors.try_emplace(lam, prod);
        if (!fresh) it->second = it->second + prod;
    }
    auto it = sectors.find(2);
    if (it == sectors.end()) return ThetaSeries({}, N, true);
    return it->second;
}

DetReport det_condition_series(const ThetaSeries& omega, int N) {
    ThetaSeries a = omega.partial(P).partial(PB);
    ThetaSeries b = omega.partial(P).partial(QB);
    ThetaSeries c = omega.partial(Q).partial(PB);
    ThetaSeries d = omega.partial(Q).partial(QB);
    ThetaSeries one = ThetaSeries::from_poly(PolyField::constant(1), N);

    DetReport rep;
    rep.ordinary = series_mul(a, d, N) - series_mul(b, c, N) - one;

    CSeries star = star_product(CSeries::from_real(a), CSeries::from_real(d), N) -
                   star_product(CSeries::from_real(b), CSeries::from_real(c), N);
    std::vector<PolyField> re(std::size_t(N) + 1), im(std::size_t(N) + 1);
    for (int n = 0; n <= N; ++n) {
        re[std::size_t(n)] = star.re_coeff(n);
        im[std::size_t(n)] = star.im_coeff(n);
    }
    rep.star_re = ThetaSeries(std::move(re), N, star.exact) - one;
    rep.star_im = ThetaSeries(std::move(im), N, star.exact);

    rep.divergence_order = -1;
    for (int n = 0; n <= N; ++n) {
        if (rep.ordinary.coeff(n) != rep.star_re.coeff(n) || !rep.star_im.coeff(n).is_zero()) {
            rep.divergence_order = n;
            break;
        }
    }
    return rep;
}

bool hermiticity_check(const PolyField& omega_n) {
    const int holo[2] = {P, Q};
    const int anti[2] = {PB, QB};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            PolyField lhs = omega_n.partial(holo[i]).partial(anti[j]).conj_swap();
            PolyField rhs = omega_n.partial(holo[j]).partial(anti[i]);
            if (lhs != rhs) return false;
        }
    }
    return true;
}

HermiticityReport hermiticity_report(const PolyField& omega_n) {
    HermiticityReport rep;
    rep.hermitian = hermiticity_check(omega_n);
    rep.pure_block = true;
    const int holo[2] = {P, Q};
    const int anti[2] = {PB, QB};
    for (int i = 0; i < 2 && rep.pure_block; ++i) {
        for (int j = i; j < 2 && rep.pure_block; ++j) {
            if (!omega_n.partial(holo[i]).partial(holo[j]).is_zero()) rep.pure_block = false;
            if (!omega_n.partial(anti[i]).partial(anti[j]).is_zero()) rep.pure_block = false;
        }
    }
    return rep;
}

}  // namespace heavenly
