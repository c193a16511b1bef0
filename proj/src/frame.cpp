#include "heavenly/frame.hpp"

#include <string>

#include "heavenly/serialize.hpp"

namespace heavenly {

std::array<std::array<Rat, 4>, 4> flat_metric() {
    std::array<std::array<Rat, 4>, 4> eta{};
    eta[0][1] = eta[1][0] = 1;
    eta[2][3] = eta[3][2] = 1;
    return eta;
}

VierbeinOrder classical_vierbein(const PolyField& omega) {
    VierbeinOrder e{};
    e[P][1] = PolyField::constant(1);
    e[Q][3] = PolyField::constant(1);
    e[PB][0] = omega.partial(P).partial(PB);
    e[PB][2] = omega.partial(Q).partial(PB);
    e[QB][0] = omega.partial(P).partial(QB);
    e[QB][2] = omega.partial(Q).partial(QB);
    return e;
}

std::array<std::array<PolyField, 4>, 4> metric_order_n(const Vierbein& vb, int n) {
    if (n < 0) throw Error("negative metric order");
    if (int(vb.orders.size()) <= n)
        throw LengthError("metric at order " + std::to_string(n) + " needs frame orders 0.." +
                          std::to_string(n) + ", have " + std::to_string(vb.orders.size()));
    auto eta = flat_metric();
    std::array<std::array<PolyField, 4>, 4> g{};
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            PolyField acc;
            for (int m = 0; m <= n; ++m) {
                const VierbeinOrder& em = vb.orders[std::size_t(m)];
                const VierbeinOrder& en = vb.orders[std::size_t(n - m)];
                for (int a = 0; a < 4; ++a) {
                    if (em[std::size_t(mu)][std::size_t(a)].is_zero()) continue;
                    for (int b = 0; b < 4; ++b) {
                        if (eta[std::size_t(a)][std::size_t(b)] == 0) continue;
                        acc += em[std::size_t(mu)][std::size_t(a)] *
                               en[std::size_t(nu)][std::size_t(b)] *
                               eta[std::size_t(a)][std::size_t(b)];
                    }
                }
            }
            g[std::size_t(mu)][std::size_t(nu)] = acc;
        }
    }
    return g;
}

namespace {

// Formal Hessian slots: x1 = Omega_ppb, x2 = Omega_qqb, x3 = Omega_pqb,
// x4 = Omega_qpb, stored in polynomial variables p, q, pb, qb respectively.
PolyField slot(int i) { return PolyField::var(i - 1); }

PolyField family(const Rat& a, const Rat& b, const Rat& c, const Rat& d, const Rat& s) {
    return PolyField::constant(a) + slot(1) * b + slot(2) * c + slot(3) * d + slot(4) * s;
}

}  // namespace

AnsatzParams solve_case_I(const CaseIFree& free) {
    // The five linear relations the compact constraint imposes leave the
    // unprimed family free, negate it into the one-prime family, zero out the
    // constant and pure-x1 members of the double-primed families, tie
    // delta_pp to beta_ppp and sigma_ppp to gamma_pp, and fix C.  With these
    // choices the full first-order residual vanishes identically, not only
    // modulo the classical equation.
    if (free.beta_ppp == 0)
        throw ZeroDenominator(
            "case I: beta_ppp = 0, but C = -(alpha + alpha_p + gamma_pp)/beta_ppp");
    AnsatzParams p;
    p.which = AnsatzCase::I;
    p.alpha = free.alpha;
    p.beta = free.beta;
    p.gamma = free.gamma;
    p.delta = free.delta;
    p.sigma = free.sigma;
    p.alpha_p = free.alpha_p;
    p.beta_p = -free.beta;
    p.gamma_p = -free.gamma;
    p.delta_p = -free.delta;
    p.sigma_p = -free.sigma;
    p.alpha_pp = 0;
    p.beta_pp = 0;
    p.gamma_pp = free.gamma_pp;
    p.delta_pp = free.beta_ppp;
    p.sigma_pp = 0;
    p.alpha_ppp = 0;
    p.beta_ppp = free.beta_ppp;
    p.gamma_ppp = 0;
    p.delta_ppp = 0;
    p.sigma_ppp = free.gamma_pp;
    p.A = 0;
    p.A_p = 0;
    p.C = -(free.alpha + free.alpha_p + free.gamma_pp) / free.beta_ppp;
    if (p.C == 0) {
        bool one_prime_zero = p.alpha_p == 0 && free.beta == 0 && free.gamma == 0 &&
                              free.delta == 0 && free.sigma == 0;
        if (!one_prime_zero)
            throw ZeroDenominator(
                "case I: C = 0 (alpha + alpha_p + gamma_pp = 0) while the one-prime family "
                "is nonzero; the q-row component is the one-prime family divided by C");
    }
    return p;
}

AnsatzParams solve_case_II(const CaseIIFree& free) {
    if (free.sigma_p == 0 || free.beta == 0)
        throw ZeroDenominator("case II: sigma_p and beta must be nonzero to determine C");
    if (free.sigma_p != free.beta || free.gamma_p != free.delta) {
        Rat r1 = -free.gamma_p / free.sigma_p;
        Rat r2 = -free.delta / free.beta;
        throw InconsistentC(
            "case II: the two determinations of C disagree or the families are "
            "incompatible: -gamma_p/sigma_p = " +
            rat_str(r1) + ", -delta/beta = " + rat_str(r2) +
            " (requires sigma_p = beta and gamma_p = delta)");
    }
    AnsatzParams p;
    p.which = AnsatzCase::II;
    p.alpha = free.alpha;
    p.beta = free.beta;
    p.gamma = 0;
    p.delta = free.delta;
    p.sigma = 0;
    p.alpha_p = free.alpha_p;
    p.beta_p = 0;
    p.gamma_p = free.gamma_p;
    p.delta_p = 0;
    p.sigma_p = free.sigma_p;
    p.A = -free.alpha_p;
    p.A_p = free.alpha;
    p.C = -free.gamma_p / free.sigma_p;
    return p;
}

FrameComponents first_order_components(const AnsatzParams& params) {
    FrameComponents f;
    if (params.which == AnsatzCase::I) {
        f.d4 = family(params.alpha, params.beta, params.gamma, params.delta, params.sigma);
        f.c2 = family(params.alpha_p, params.beta_p, params.gamma_p, params.delta_p,
                      params.sigma_p);
        f.b3 = family(params.alpha_pp, params.beta_pp, params.gamma_pp, params.delta_pp,
                      params.sigma_pp);
        f.a3 = family(params.alpha_ppp, params.beta_ppp, params.gamma_ppp, params.delta_ppp,
                      params.sigma_ppp);
        f.c4 = f.d4 * params.C;
        f.b1 = f.b3 * params.C;
        f.a1 = f.a3 * params.C;
        if (params.C != 0) {
            f.d2 = f.c2 / params.C;
        } else if (f.c2.is_zero()) {
            f.d2 = PolyField();
        } else {
            throw ZeroDenominator(
                "case I components: C = 0 while the one-prime family is nonzero");
        }
    } else {
        f.b1 = family(params.alpha, params.beta, params.gamma, params.delta, params.sigma);
        f.b3 = family(params.alpha_p, params.beta_p, params.gamma_p, params.delta_p,
                      params.sigma_p);
        f.a1 = f.b1 * params.C;
        f.a3 = f.b3 * params.C;
        PolyField mix13 = slot(1) - slot(3) * params.C;  // x1 - C x3
        PolyField mix42 = slot(4) - slot(2) * params.C;  // x4 - C x2
        f.c2 = mix13 * params.A;
        f.c4 = mix42 * params.A;
        f.d2 = mix13 * params.A_p;
        f.d4 = mix42 * params.A_p;
    }
    return f;
}

PolyField first_order_constraint_full(const AnsatzParams& params) {
    FrameComponents f = first_order_components(params);
    PolyField x1 = slot(1), x2 = slot(2), x3 = slot(3), x4 = slot(4);
    PolyField oqq1 = f.b3 + f.d2 * x3 + f.d4 * x2;
    PolyField oqp1 = f.a3 + f.d2 * x1 + f.d4 * x4;
    PolyField opp1 = f.a1 + f.c2 * x1 + f.c4 * x4;
    PolyField opq1 = f.b1 + f.c2 * x3 + f.c4 * x2;
    return x1 * oqq1 + x2 * opp1 - x3 * oqp1 - x4 * opq1;
}

PolyField first_order_constraint_compact(const AnsatzParams& params) {
    FrameComponents f = first_order_components(params);
    PolyField x1 = slot(1), x2 = slot(2), x3 = slot(3), x4 = slot(4);
    if (params.which == AnsatzCase::I)
        return f.c2 + f.d4 + f.b3 * (x1 - x4 * params.C) + f.a3 * (x2 * params.C - x3);
    return f.c2 + f.d4 + f.b3 * (x1 - x3 * params.C) + f.b1 * (x2 * params.C - x4);
}

PolyField reduce_onshell(const PolyField& f) {
    PolyField cur = f;
    for (;;) {
        bool reduced = false;
        for (const auto& [mref, cref] : cur.terms()) {
            if (mref[0] == 0 || mref[1] == 0) continue;
            Mono m = mref;
            Rat c = cref;
            Mono low = m;
            low[0] -= 1;
            low[1] -= 1;
            Mono cross = low;
            cross[2] += 1;
            cross[3] += 1;
            cur -= PolyField::monomial(m, c);
            cur += PolyField::monomial(cross, c) + PolyField::monomial(low, c);
            reduced = true;
            break;
        }
        if (!reduced) return cur;
    }
}

namespace {

std::array<PolyField, 4> hessian_slots(const PolyField& omega) {
    return {omega.partial(P).partial(PB), omega.partial(Q).partial(QB),
            omega.partial(P).partial(QB), omega.partial(Q).partial(PB)};
}

}  // namespace

VierbeinOrder vierbein_order1(const AnsatzParams& params, const PolyField& omega) {
    FrameComponents f = first_order_components(params);
    std::array<PolyField, 4> h = hessian_slots(omega);
    VierbeinOrder e{};
    e[P][1] = f.c2.compose(h);
    e[P][3] = f.c4.compose(h);
    e[Q][1] = f.d2.compose(h);
    e[Q][3] = f.d4.compose(h);
    e[PB][0] = f.a1.compose(h);
    e[PB][2] = f.a3.compose(h);
    e[QB][0] = f.b1.compose(h);
    e[QB][2] = f.b3.compose(h);
    return e;
}

namespace {

struct ConstantFrame {
    Rat a1, a3, b1, b3, c2, c4, d2, d4;
};

ConstantFrame extract_constants(const VierbeinOrder& e, int order_label) {
    const char* tag = "frame correction";
    for (int mu = 0; mu < 4; ++mu)
        for (int a = 0; a < 4; ++a)
            if (!e[std::size_t(mu)][std::size_t(a)].is_constant())
                throw NonConstantEntries(std::string(tag) + " order " +
                                         std::to_string(order_label) + ": entry (" +
                                         coord_name(mu) + ", flat " + std::to_string(a + 1) +
                                         ") is not constant");
    // Entries outside the sparsity pattern must vanish: holomorphic rows use
    // flat slots 2 and 4 only, antiholomorphic rows slots 1 and 3 only.
    const int holo_dead[2] = {0, 2}, anti_dead[2] = {1, 3};
    for (int mu : {P, Q})
        for (int a : holo_dead)
            if (!e[std::size_t(mu)][std::size_t(a)].is_zero())
                throw Error("frame correction entry (" + std::string(coord_name(mu)) +
                            ", flat " + std::to_string(a + 1) +
                            ") lies outside the sparsity pattern");
    for (int mu : {PB, QB})
        for (int a : anti_dead)
            if (!e[std::size_t(mu)][std::size_t(a)].is_zero())
                throw Error("frame correction entry (" + std::string(coord_name(mu)) +
                            ", flat " + std::to_string(a + 1) +
                            ") lies outside the sparsity pattern");
    ConstantFrame k;
    k.c2 = e[P][1].constant_value();
    k.c4 = e[P][3].constant_value();
    k.d2 = e[Q][1].constant_value();
    k.d4 = e[Q][3].constant_value();
    k.a1 = e[PB][0].constant_value();
    k.a3 = e[PB][2].constant_value();
    k.b1 = e[QB][0].constant_value();
    k.b3 = e[QB][2].constant_value();
    return k;
}

PolyField leading_reconstruction(const ConstantFrame& k, const PolyField& omega) {
    PolyField p = PolyField::var(P), q = PolyField::var(Q);
    PolyField pb = PolyField::var(PB), qb = PolyField::var(QB);
    return (p * k.a1 + q * k.a3) * pb + (p * k.b1 + q * k.b3) * qb +
           (p * k.c2 + q * k.d2) * omega.partial(P) +
           (p * k.c4 + q * k.d4) * omega.partial(Q);
}

}  // namespace

PolyField omega1_reconstruct(const VierbeinOrder& e1, const PolyField& omega) {
    return leading_reconstruction(extract_constants(e1, 1), omega);
}

PolyField omega_n_reconstruct(const std::vector<VierbeinOrder>& corr, const PolyField& omega,
                              int n) {
    if (n < 1) throw Error("reconstruction order must be at least 1");
    if (int(corr.size()) < n)
        throw LengthError("reconstruction at order " + std::to_string(n) + " needs " +
                          std::to_string(n) + " frame corrections, have " +
                          std::to_string(corr.size()));
    std::vector<ConstantFrame> k;
    k.reserve(std::size_t(n));
    for (int m = 1; m <= n; ++m) k.push_back(extract_constants(corr[std::size_t(m - 1)], m));

    PolyField p = PolyField::var(P), q = PolyField::var(Q);
    PolyField pb = PolyField::var(PB), qb = PolyField::var(QB);
    PolyField out = leading_reconstruction(k[std::size_t(n - 1)], omega);
    // Cross terms of complementary orders, paired through the flat metric:
    // only the (1,2) and (3,4) flat pairings survive the sparsity pattern.
    for (int m = 1; m <= n - 1; ++m) {
        const ConstantFrame& lo = k[std::size_t(m - 1)];
        const ConstantFrame& hi = k[std::size_t(n - m - 1)];
        out += (p * lo.c2 + q * lo.d2) * (pb * hi.a1 + qb * hi.b1) +
               (p * lo.c4 + q * lo.d4) * (pb * hi.a3 + qb * hi.b3);
    }
    return out;
}

namespace {

Rat json_rat(const nlohmann::json& v, const std::string& key) {
    if (v.is_string()) return rat_parse(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw ConfigError("parameter '" + key + "' must be a rational string or integer");
}

}  // namespace

nlohmann::json ansatz_to_json(const AnsatzParams& p) {
    nlohmann::json j;
    j["case"] = p.which == AnsatzCase::I ? "I" : "II";
    j["alpha"] = rat_str(p.alpha);
    j["beta"] = rat_str(p.beta);
    j["gamma"] = rat_str(p.gamma);
    j["delta"] = rat_str(p.delta);
    j["sigma"] = rat_str(p.sigma);
    j["alpha_p"] = rat_str(p.alpha_p);
    j["beta_p"] = rat_str(p.beta_p);
    j["gamma_p"] = rat_str(p.gamma_p);
    j["delta_p"] = rat_str(p.delta_p);
    j["sigma_p"] = rat_str(p.sigma_p);
    j["alpha_pp"] = rat_str(p.alpha_pp);
    j["beta_pp"] = rat_str(p.beta_pp);
    j["gamma_pp"] = rat_str(p.gamma_pp);
    j["delta_pp"] = rat_str(p.delta_pp);
    j["sigma_pp"] = rat_str(p.sigma_pp);
    j["alpha_ppp"] = rat_str(p.alpha_ppp);
    j["beta_ppp"] = rat_str(p.beta_ppp);
    j["gamma_ppp"] = rat_str(p.gamma_ppp);
    j["delta_ppp"] = rat_str(p.delta_ppp);
    j["sigma_ppp"] = rat_str(p.sigma_ppp);
    j["A"] = rat_str(p.A);
    j["A_p"] = rat_str(p.A_p);
    j["C"] = rat_str(p.C);
    return j;
}

AnsatzParams ansatz_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("ansatz parameters must be a JSON object");
    if (!j.contains("case")) throw ConfigError("ansatz parameters need a \"case\" of I or II");
    std::string which = j.at("case").get<std::string>();
    if (which != "I" && which != "II")
        throw ConfigError("ansatz \"case\" must be \"I\" or \"II\", got '" + which + "'");

    // Only the free parameters of the chosen scheme may appear; everything
    // else is derived by the solver and would let a file contradict it.
    const std::vector<std::string> free_I = {"alpha", "alpha_p", "beta",     "gamma",
                                             "delta", "sigma",   "gamma_pp", "beta_ppp"};
    const std::vector<std::string> free_II = {"alpha", "alpha_p", "beta",
                                              "gamma_p", "delta", "sigma_p"};
    const auto& allowed = which == "I" ? free_I : free_II;
    for (const auto& [key, value] : j.items()) {
        if (key == "case") continue;
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == key;
        if (!ok)
            throw ConfigError("parameter '" + key + "' is not a free parameter of case " +
                              which + " (derived quantities are computed, not supplied)");
    }
    auto get = [&](const char* key) -> Rat {
        if (!j.contains(key)) return 0;
        return json_rat(j.at(key), key);
    };
    if (which == "I") {
        CaseIFree f;
        f.alpha = get("alpha");
        f.alpha_p = get("alpha_p");
        f.beta = get("beta");
        f.gamma = get("gamma");
        f.delta = get("delta");
        f.sigma = get("sigma");
        f.gamma_pp = get("gamma_pp");
        f.beta_ppp = get("beta_ppp");
        return solve_case_I(f);
    }
    CaseIIFree f;
    f.alpha = get("alpha");
    f.alpha_p = get("alpha_p");
    f.beta = get("beta");
    f.gamma_p = get("gamma_p");
    f.delta = get("delta");
    f.sigma_p = get("sigma_p");
    return solve_case_II(f);
}

}  // namespace heavenly
