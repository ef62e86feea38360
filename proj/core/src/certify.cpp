#include "rlab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace rlab {

const char* Certificate::status_name(Status s) {
    switch (s) {
        case Status::holds: return "holds";
        case Status::violated: return "violated";
        default: return "inconclusive";
    }
}

double Certificate::find_component(const std::string& name) const {
    for (const auto& [k, v] : components)
        if (k == name) return v;
    throw std::out_of_range("Certificate: no component named " + name);
}

nlohmann::ordered_json Certificate::to_json() const {
    nlohmann::ordered_json j;
    j["inequality_id"] = inequality_id;
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    j["slack"] = slack;
    j["status"] = status_name(status);
    nlohmann::ordered_json comp;
    for (const auto& [k, v] : components) comp[k] = v;
    j["components"] = comp;
    j["caveats"] = caveats;
    return j;
}

Certificate::Status status_from_slack(double lhs, double rhs) {
    double tol = 1e-9 * std::max({std::abs(lhs), std::abs(rhs), 1.0});
    return (rhs - lhs >= -tol) ? Certificate::Status::holds : Certificate::Status::violated;
}

namespace {

double sigma_energy(const AtomicFunction& f, const AtomicFunction& g, const SigmaField& sig) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += f.weight(i) * sig.value(i) * (f.value(i) - g.value(i));
    return acc;
}

void common_caveats(Certificate& c, const SigmaField& sigma) {
    if (sigma.tie_mass() > 1e-9 * sigma.carrier()->total_weight)
        c.caveats.push_back("sigma level-set tie mass " + std::to_string(sigma.tie_mass()));
    if (sigma.carrier()->domain.truncated) {
        double tail = sigma.carrier()->domain.total_measure - sigma.carrier()->total_weight;
        c.component("truncated_tail_measure", std::max(tail, 0.0));
        c.caveats.push_back("domain truncated; un-atomized tail measure recorded");
    }
    c.component("tie_mass", sigma.tie_mass());
}

// range flag: does the b(2 mu_q) evaluation leave [0, meas] where it matters?
bool b_range_exceeded(const StepProfile& mu_f, const StepProfile& mu_q, double total) {
    StepProfile ind = StepProfile::combine(mu_f, mu_q, [&](double mf, double mq) {
        return (mq > mf && 2.0 * mq > total) ? 1.0 : 0.0;
    });
    return ind.max_value() > 0.0;
}

}  // namespace

Certificate certify_thm1(const AtomicFunction& f, const AtomicFunction& q,
                         const SigmaField& sigma) {
    if (!co_atomic(f.carrier(), sigma.carrier()) || !co_atomic(q.carrier(), sigma.carrier()))
        throw std::invalid_argument("certify_thm1: f, q, sigma must be co-atomic");

    Certificate c;
    c.inequality_id = "thm1_ineq1";

    KConstant K = k_constant(q, sigma);
    c.component("K", K.value);
    c.component("h_floor", K.h_floor);

    Rearranged rr = sigma_rearrange_full(q, sigma);
    AtomicFunction fl = rr.lift(f);

    const double l1_f_qstar = l1_distance(fl, rr.value);
    const double norm_q = l1_norm(q);
    const double norm_f = l1_norm(f);
    const double base = l1_f_qstar + norm_q - norm_f;
    c.lhs = base * base;

    const double energy = sigma_energy(fl, rr.value, rr.sigma);
    StepProfile mu_f = mu_of(f);
    StepProfile mu_q = mu_of(q);
    double hi = 0.0;
    if (!mu_f.empty()) hi = std::max(hi, mu_f.max_breakpoint());
    if (!mu_q.empty()) hi = std::max(hi, mu_q.max_breakpoint());
    const double bstar = StepProfile::integrate_combined(
        mu_f, mu_q,
        [&](double mf, double mq) {
            double bfq = std::max(mq - mf, 0.0);  // beta_{f*,q*}
            double bqf = std::max(mf - mq, 0.0);  // beta_{q*,f*}
            double acc = 0.0;
            if (bfq > 0.0) acc += bfq * sigma.b(2.0 * mq);
            if (bqf > 0.0) acc -= bqf * sigma.b(mq);
            return acc;
        },
        0.0, hi);

    c.component("sigma_energy", energy);
    c.component("beta_b_integral", bstar);
    c.component("l1_f_qstar", l1_f_qstar);
    c.component("l1_q", norm_q);
    c.component("l1_f", norm_f);

    if (!K.finite()) {
        c.rhs = std::numeric_limits<double>::infinity();
        c.slack = std::numeric_limits<double>::infinity();
        c.status = Certificate::Status::inconclusive;
        c.caveats.push_back("K inconclusive; fall back to remark3_ineq11");
        common_caveats(c, sigma);
        return c;
    }

    c.rhs = K.value * (energy + bstar);
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    if (b_range_exceeded(mu_f, mu_q, sigma.total_measure()))
        c.caveats.push_back("b_sigma evaluated beyond meas(domain); extension in effect");
    common_caveats(c, sigma);
    return c;
}

Certificate certify_refined(const AtomicFunction& f, const SigmaField& sigma) {
    if (!co_atomic(f.carrier(), sigma.carrier()))
        throw std::invalid_argument("certify_refined: carrier mismatch");
    Certificate c;
    c.inequality_id = "thm1_ineq2";

    KConstant K = k_constant(f, sigma);
    c.component("K", K.value);
    c.component("h_floor", K.h_floor);

    Rearranged rr = sigma_rearrange_full(f, sigma);
    AtomicFunction fl = rr.lift(f);
    const double dist = l1_distance(fl, rr.value);
    c.lhs = dist * dist;
    const double energy = sigma_energy(fl, rr.value, rr.sigma);
    c.component("sigma_energy", energy);
    c.component("l1_f_fstar", dist);

    if (!K.finite()) {
        c.rhs = std::numeric_limits<double>::infinity();
        c.slack = std::numeric_limits<double>::infinity();
        c.status = Certificate::Status::inconclusive;
        c.caveats.push_back("K inconclusive; fall back to remark3_ineq11");
        common_caveats(c, sigma);
        return c;
    }
    c.rhs = K.value * energy;
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    common_caveats(c, sigma);
    return c;
}

Certificate certify_remark3(const AtomicFunction& f, const AtomicFunction& q,
                            const SigmaField& sigma) {
    if (!co_atomic(f.carrier(), sigma.carrier()) || !co_atomic(q.carrier(), sigma.carrier()))
        throw std::invalid_argument("certify_remark3: f, q, sigma must be co-atomic");
    Certificate c;
    c.inequality_id = "remark3_ineq11";

    Rearranged rr = sigma_rearrange_full(q, sigma);
    AtomicFunction fl = rr.lift(f);

    StepProfile mu_q = mu_of(q);
    StepProfile mu_f = mu_of(f);
    StepProfile beta = beta_of(fl, rr.value);  // beta_{f, q*sigma}

    double hi = 0.0;
    for (const StepProfile* p : {&mu_q, &mu_f, &beta})
        if (!p->empty()) hi = std::max(hi, p->max_breakpoint());

    const double convexity_term = StepProfile::integrate_combined(
        mu_q, beta,
        [&](double mq, double b) {
            if (b <= 0.0) return 0.0;
            double lo = std::max(mq - b, 0.0);
            return sigma.B(mq + b) + sigma.B(lo) - 2.0 * sigma.B(mq);
        },
        0.0, hi);

    const double bstar_term = StepProfile::integrate_combined(
        mu_f, mu_q,
        [&](double mf, double mq) {
            double bfq = std::max(mq - mf, 0.0);  // beta_{f*,q*}
            double bqf = std::max(mf - mq, 0.0);  // beta_{q*,f*}
            double acc = 0.0;
            if (bqf > 0.0) acc += bqf * sigma.b(mq);
            if (bfq > 0.0) acc -= bfq * sigma.b(2.0 * mq);
            return acc;
        },
        0.0, hi);

    c.lhs = convexity_term + bstar_term;
    c.rhs = sigma_energy(fl, rr.value, rr.sigma);
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    c.component("convexity_term", convexity_term);
    c.component("bstar_term", bstar_term);
    c.component("sigma_energy", c.rhs);
    if (b_range_exceeded(mu_f, mu_q, sigma.total_measure()))
        c.caveats.push_back("b_sigma evaluated beyond meas(domain); extension in effect");
    common_caveats(c, sigma);
    return c;
}

Certificate certify_corollary1(const AtomicFunction& u, double m) {
    const Domain& dom = u.carrier()->domain;
    if (dom.kind != Domain::Kind::Disc && dom.kind != Domain::Kind::TruncatedRd)
        throw std::invalid_argument("certify_corollary1: needs a radial domain");
    const int d = dom.dim;
    if (!(m > 0.0) || m > static_cast<double>(d))
        throw std::invalid_argument("certify_corollary1: need m in (0, d]");

    Certificate c;
    c.inequality_id = "corollary1";
    SigmaField sig = SigmaField::power_law(u.carrier(), m, d);
    Rearranged rr = sigma_rearrange_full(u, sig);
    AtomicFunction ul = rr.lift(u);

    const double energy = sigma_energy(ul, rr.value, rr.sigma);
    const double dist = l1_distance(ul, rr.value);
    const double n1 = l1_norm(u);
    const double ninf = sup_value(u);
    const double kd = unit_ball_volume(d);
    double constant = 0.0;
    if (dist > 0.0) {
        constant = (m / (4.0 * d)) * std::pow(kd, -m / d) * std::pow(n1, -1.0 + m / d) *
                   std::pow(ninf, -m / d);
    }
    // statement directions: energy >= constant * dist^2
    c.lhs = constant * dist * dist;
    c.rhs = energy;
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    c.component("sigma_energy", energy);
    c.component("l1_u_ustar", dist);
    c.component("l1_u", n1);
    c.component("linf_u", ninf);
    c.component("constant", constant);
    common_caveats(c, sig);
    return c;
}

LayerCakeOracle oracle_layer_cake(const AtomicFunction& f, const AtomicFunction& q,
                                  const SigmaField& sigma) {
    if (!co_atomic(f.carrier(), sigma.carrier()) || !co_atomic(q.carrier(), sigma.carrier()))
        throw std::invalid_argument("oracle_layer_cake: carrier mismatch");
    Rearranged rr = sigma_rearrange_full(q, sigma);
    AtomicFunction fl = rr.lift(f);
    AtomicFunction ql = rr.lift(q);
    const AtomicFunction& qs = rr.value;
    const Carrier& car = *rr.carrier;

    // level grid: all distinct values
    std::set<double> lv{0.0};
    for (double v : fl.values()) lv.insert(v);
    for (double v : qs.values()) lv.insert(v);
    for (double v : ql.values()) lv.insert(v);
    std::vector<double> levels(lv.begin(), lv.end());

    LayerCakeOracle out;
    for (std::size_t i = 0; i < fl.size(); ++i)
        out.sigma_energy += car.weight[i] * rr.sigma.value(i) * (fl.value(i) - qs.value(i));

    for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
        const double t = 0.5 * (levels[k] + levels[k + 1]);
        const double len = levels[k + 1] - levels[k];
        double alpha = 0.0, beta = 0.0, muq = 0.0, muf = 0.0;
        for (std::size_t i = 0; i < car.size(); ++i) {
            const double w = car.weight[i];
            const double fv = fl.value(i), qv = qs.value(i);
            if (qv <= t && t < fv) alpha += w;  // D1
            if (fv <= t && t < qv) beta += w;   // D2
            if (ql.value(i) > t) muq += w;
            if (fv > t) muf += w;
        }
        out.max_levelwise_gap =
            std::max(out.max_levelwise_gap, std::abs((beta - alpha) - (muq - muf)));
        out.alpha_plus_beta += (alpha + beta) * len;
        const double B0 = sigma.B(muq);
        out.base0_value +=
            len * (sigma.B(muq + alpha) + sigma.B(std::max(muq - beta, 0.0)) - 2.0 * B0);
        out.convexity_term +=
            len * (sigma.B(muq + beta) + sigma.B(std::max(muq - beta, 0.0)) - 2.0 * B0);
        const double bfq = std::max(muq - muf, 0.0);
        const double bqf = std::max(muf - muq, 0.0);
        out.bstar_term += len * (bqf * sigma.b(muq) - bfq * sigma.b(2.0 * muq));
    }
    out.remark3_lhs = out.convexity_term + out.bstar_term;

    // the oracle validates its own bookkeeping before anyone trusts it
    const double scale = std::max({std::abs(out.sigma_energy), std::abs(out.base0_value), 1.0});
    if (out.sigma_energy < out.base0_value - 1e-8 * scale)
        throw std::logic_error("oracle_layer_cake: layer-cake lower bound failed");
    const double dist = l1_distance(fl, qs);
    if (std::abs(out.alpha_plus_beta - dist) > 1e-8 * std::max(dist, 1.0))
        throw std::logic_error("oracle_layer_cake: alpha+beta mass identity failed");
    if (out.max_levelwise_gap > 1e-8 * std::max(1.0, mu_of(ql).max_value()))
        throw std::logic_error("oracle_layer_cake: beta-alpha levelwise identity failed");
    return out;
}

double hl_classic_gap(const AtomicFunction& f, const AtomicFunction& g) {
    return sharp_pairing(f, g) - atom_pairing(f, g);
}

double hl_theta_gap(const AtomicFunction& f, const SigmaField& sigma) {
    Rearranged rr = sigma_rearrange_full(f, sigma);
    AtomicFunction fl = rr.lift(f);
    return sigma_energy(fl, rr.value, rr.sigma);
}

Certificate certify_hl_classic(const AtomicFunction& f, const AtomicFunction& g) {
    Certificate c;
    c.inequality_id = "hl_classic";
    c.lhs = atom_pairing(f, g);
    c.rhs = sharp_pairing(f, g);
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    c.component("pairing_fg", c.lhs);
    c.component("pairing_fstar_gstar", c.rhs);
    return c;
}

Certificate certify_hl_theta(const AtomicFunction& f, const SigmaField& sigma) {
    Certificate c;
    c.inequality_id = "hl_theta";
    c.lhs = 0.0;
    c.rhs = hl_theta_gap(f, sigma);
    c.slack = c.rhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    c.component("sigma_energy", c.rhs);
    common_caveats(c, sigma);
    return c;
}

}  // namespace rlab
