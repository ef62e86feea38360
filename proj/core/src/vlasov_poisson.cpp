#include "rlab/vlasov_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "rlab/carriers.hpp"
#include "rlab/convexity.hpp"
#include "rlab/rearrange.hpp"

namespace rlab {

static constexpr double kPi = std::numbers::pi;
static constexpr double kFourPi = 4.0 * std::numbers::pi;
static constexpr double kC43 = 4.0 * std::numbers::pi / 3.0;

double RadialPotential::eval(double rr) const {
    if (rr <= r.front()) return phi.front();
    if (rr >= r.back()) return phi.back() * (r.back() / rr);  // exterior -C/r decay
    auto it = std::upper_bound(r.begin(), r.end(), rr);
    std::size_t i = static_cast<std::size_t>(it - r.begin()) - 1;
    double t = (rr - r[i]) / (r[i + 1] - r[i]);
    return phi[i] + t * (phi[i + 1] - phi[i]);
}

double vp_rho_of_phi(const SteadyStateVP& ss, double p) {
    double s = ss.cutoff_e0 - p;
    if (s <= 0.0) return 0.0;
    return ss.c_k * ss.kappa * std::pow(s, ss.k + 1.5);
}

namespace {

struct ShotResult {
    double r_edge = 0.0;     // support radius (phi = e0 crossing)
    double dphi_edge = 0.0;  // phi' there
    std::vector<double> r, phi;
};

// integrate phi'' + (2/r) phi' = rho(phi) outward from phi(0) = phi_c until
// the support edge phi = e0
ShotResult integrate_shot(double k, double ck_kappa, double e0, double phi_c,
                          std::size_t steps_per_scale) {
    auto rho = [&](double p) {
        double s = e0 - p;
        return s > 0.0 ? ck_kappa * std::pow(s, k + 1.5) : 0.0;
    };
    const double rho_c = rho(phi_c);
    if (!(rho_c > 0.0)) throw std::invalid_argument("integrate_shot: empty support");
    const double scale = std::sqrt((e0 - phi_c) / rho_c);
    const double h = scale / static_cast<double>(steps_per_scale);

    ShotResult out;
    out.r.reserve(1 << 14);
    out.phi.reserve(1 << 14);
    // series start: phi = phi_c + rho_c r^2/6
    double r0 = h;
    double y = phi_c + rho_c * r0 * r0 / 6.0;
    double dy = rho_c * r0 / 3.0;
    out.r.push_back(0.0);
    out.phi.push_back(phi_c);
    out.r.push_back(r0);
    out.phi.push_back(y);

    auto f2 = [&](double r, double y1, double y2) { return rho(y1) - 2.0 / r * y2; };
    double r = r0;
    const double r_cap = 400.0 * scale;
    while (r < r_cap) {
        // classic RK4 on (phi, phi')
        double k1y = dy, k1v = f2(r, y, dy);
        double k2y = dy + 0.5 * h * k1v, k2v = f2(r + 0.5 * h, y + 0.5 * h * k1y, dy + 0.5 * h * k1v);
        double k3y = dy + 0.5 * h * k2v, k3v = f2(r + 0.5 * h, y + 0.5 * h * k2y, dy + 0.5 * h * k2v);
        double k4y = dy + h * k3v, k4v = f2(r + h, y + h * k3y, dy + h * k3v);
        double yn = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        double dyn = dy + h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        double rn = r + h;
        if (yn >= e0) {
            // linear crossing refinement within the step
            double t = (e0 - y) / (yn - y);
            out.r_edge = r + t * h;
            out.dphi_edge = dy + t * (dyn - dy);
            out.r.push_back(out.r_edge);
            out.phi.push_back(e0);
            return out;
        }
        y = yn;
        dy = dyn;
        r = rn;
        out.r.push_back(r);
        out.phi.push_back(y);
    }
    throw std::runtime_error("integrate_shot: no support edge before the radius cap");
}

}  // namespace

SteadyStateVP build_steady_vp(double k, double kappa, double e0, VpGridParams grid) {
    if (!(k > 1.0)) throw std::invalid_argument("build_steady_vp: k > 1 required");
    if (!(kappa > 0.0)) throw std::invalid_argument("build_steady_vp: kappa > 0 required");
    if (!(e0 < 0.0)) throw std::invalid_argument("build_steady_vp: e0 < 0 required");

    SteadyStateVP ss;
    ss.k = k;
    ss.kappa = kappa;
    ss.cutoff_e0 = e0;
    // c_k = 4 sqrt(2) pi B(k+1, 3/2)
    double logB = std::lgamma(k + 1.0) + std::lgamma(1.5) - std::lgamma(k + 2.5);
    ss.c_k = 4.0 * std::numbers::sqrt2 * kPi * std::exp(logB);
    const double ck_kappa = ss.c_k * kappa;

    // exterior matching g(phi_c) = e0 + r_s phi'(r_s); monotone in |phi_c|
    auto g = [&](double phi_c) {
        ShotResult s = integrate_shot(k, ck_kappa, e0, phi_c, grid.ode_steps);
        return e0 + s.r_edge * s.dphi_edge;
    };
    double lo = e0 * 1.0000001;  // shallow well: g < 0
    double hi = e0 * 2.0;
    while (g(hi) < 0.0) {
        hi *= 2.0;
        if (hi < e0 * 1e8)
            throw std::runtime_error("build_steady_vp: shooting bracket not found");
    }
    // bisection on phi_c in [hi, lo] (hi more negative)
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (std::abs(gm) < grid.shoot_tol * std::max(1.0, std::abs(e0))) {
            lo = hi = mid;
            break;
        }
        if (gm < 0.0)
            lo = mid;
        else
            hi = mid;
        if (std::abs(hi - lo) < 1e-15 * std::abs(e0)) break;
    }
    const double phi_c = 0.5 * (lo + hi);
    ShotResult shot = integrate_shot(k, ck_kappa, e0, phi_c, grid.ode_steps);
    ss.support_radius = shot.r_edge;

    // dense potential: interior from the integration, exterior e0 * r_s / r
    RadialPotential& P = ss.phi;
    P.r = shot.r;
    P.phi = shot.phi;
    P.phi0 = phi_c;
    const double r_max = grid.r_pad * shot.r_edge;
    {
        double r = shot.r_edge;
        double step = shot.r_edge / 256.0;
        while (r + step < r_max) {
            r += step;
            P.r.push_back(r);
            P.phi.push_back(e0 * shot.r_edge / r);
        }
        P.r.push_back(r_max);
        P.phi.push_back(e0 * shot.r_edge / r_max);
    }

    // phase grid
    const double v_cap = grid.v_pad * std::sqrt(2.0 * (e0 - phi_c));
    ss.Nr = grid.Nr;
    ss.Nv = grid.Nv;
    ss.carrier = make_phase_grid(grid.Nr, grid.Nv, r_max, v_cap);
    ss.r_edges.resize(grid.Nr + 1);
    ss.v_edges.resize(grid.Nv + 1);
    {
        // recover the edges used by make_phase_grid
        ss.r_edges[0] = 0.0;
        const double r_min = r_max * 1e-4;
        for (std::size_t i = 1; i <= grid.Nr; ++i)
            ss.r_edges[i] = r_min * std::pow(r_max / r_min,
                                             static_cast<double>(i - 1) /
                                                 static_cast<double>(grid.Nr - 1));
        for (std::size_t j = 0; j <= grid.Nv; ++j)
            ss.v_edges[j] = v_cap * static_cast<double>(j) / static_cast<double>(grid.Nv);
    }

    // exact cell means of v^2 and 4-pt Gauss means of phi against r^2 dr
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                 0.3478548451374538};
    std::vector<double> vb2(grid.Nv);
    for (std::size_t j = 0; j < grid.Nv; ++j) {
        double a = ss.v_edges[j], b = ss.v_edges[j + 1];
        vb2[j] = 0.6 * (std::pow(b, 5) - std::pow(a, 5)) / (std::pow(b, 3) - std::pow(a, 3));
    }
    ss.phibar0.resize(grid.Nr);
    for (std::size_t i = 0; i < grid.Nr; ++i) {
        double a = ss.r_edges[i], b = ss.r_edges[i + 1];
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double num = 0.0, den = (b * b * b - a * a * a) / 3.0;
        for (int q = 0; q < 4; ++q) {
            double r = mid + half * gx[q];
            num += gw[q] * P.eval(r) * r * r;
        }
        ss.phibar0[i] = num * half / den;
    }
    ss.vbar2.resize(grid.Nr * grid.Nv);
    std::vector<double> f0v(grid.Nr * grid.Nv);
    double fsup = 0.0;
    for (std::size_t i = 0; i < grid.Nr; ++i)
        for (std::size_t j = 0; j < grid.Nv; ++j) {
            std::size_t idx = i * grid.Nv + j;
            ss.vbar2[idx] = vb2[j];
            double e = 0.5 * vb2[j] + ss.phibar0[i];
            double s = e0 - e;
            f0v[idx] = s > 0.0 ? kappa * std::pow(s, k) : 0.0;
            fsup = std::max(fsup, f0v[idx]);
        }
    ss.f0 = AtomicFunction(ss.carrier, std::move(f0v));
    ss.f0_sup = fsup;

    // micro-energy tables: a(s) and a'(s) by radial quadrature on the dense
    // potential grid
    const double c_a = 32.0 * std::numbers::sqrt2 * kPi * kPi / 3.0;
    double e_top = 0.0;
    for (std::size_t i = 0; i < grid.Nr; ++i)
        e_top = std::max(e_top, 0.5 * vb2[grid.Nv - 1] + ss.phibar0[i] - phi_c);
    e_top *= 1.05;
    MonotoneCurve a_tab, ap_tab;
    const std::size_t ns = 2048;
    a_tab.x.resize(ns + 1);
    a_tab.y.resize(ns + 1);
    ap_tab.x.resize(ns + 1);
    ap_tab.y.resize(ns + 1);
    for (std::size_t m = 0; m <= ns; ++m) {
        double s = e_top * static_cast<double>(m) / static_cast<double>(ns);
        double acc = 0.0, accp = 0.0;
        for (std::size_t i = 0; i + 1 < P.r.size(); ++i) {
            double r0 = P.r[i], r1 = P.r[i + 1];
            double q0 = s + phi_c - P.phi[i];
            double q1 = s + phi_c - P.phi[i + 1];
            double f0 = q0 > 0.0 ? std::pow(q0, 1.5) * r0 * r0 : 0.0;
            double f1 = q1 > 0.0 ? std::pow(q1, 1.5) * r1 * r1 : 0.0;
            acc += 0.5 * (f0 + f1) * (r1 - r0);
            double g0 = q0 > 0.0 ? 1.5 * std::sqrt(q0) * r0 * r0 : 0.0;
            double g1 = q1 > 0.0 ? 1.5 * std::sqrt(q1) * r1 * r1 : 0.0;
            accp += 0.5 * (g0 + g1) * (r1 - r0);
        }
        a_tab.x[m] = s;
        a_tab.y[m] = c_a * acc;
        ap_tab.x[m] = s;
        ap_tab.y[m] = c_a * accp;
    }
    ss.support_measure = a_tab.eval(e0 - phi_c);

    std::vector<double> e0_values(grid.Nr * grid.Nv);
    for (std::size_t i = 0; i < grid.Nr; ++i)
        for (std::size_t j = 0; j < grid.Nv; ++j)
            e0_values[i * grid.Nv + j] = 0.5 * vb2[j] + ss.phibar0[i] - phi_c;
    ss.e0_field = SigmaField::micro_energy(ss.carrier, std::move(e0_values), std::move(a_tab),
                                           std::move(ap_tab), e_top);

    ss.field0 = vp_solve_field(ss, ss.f0);
    ss.K = k_constant(ss.f0, ss.e0_field);
    ss.k_bound = vp_k_bound(ss);
    return ss;
}

VpField vp_solve_field(const SteadyStateVP& ss, const AtomicFunction& f) {
    if (!co_atomic(f.carrier(), ss.carrier))
        throw std::invalid_argument("vp_solve_field: carrier mismatch");
    const std::size_t Nr = ss.Nr, Nv = ss.Nv;
    VpField out;
    out.rho.assign(Nr, 0.0);
    out.kinetic = 0.0;
    for (std::size_t i = 0; i < Nr; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < Nv; ++j) {
            std::size_t idx = i * Nv + j;
            double dv3 = kC43 * (std::pow(ss.v_edges[j + 1], 3) - std::pow(ss.v_edges[j], 3));
            acc += f.value(idx) * dv3;
            out.kinetic += f.weight(idx) * 0.5 * ss.vbar2[idx] * f.value(idx);
        }
        out.rho[i] = acc;
    }
    // cumulative mass and potential, exact for shell-constant rho
    out.mass.assign(Nr + 1, 0.0);
    for (std::size_t i = 0; i < Nr; ++i) {
        double dr3 = kC43 * (std::pow(ss.r_edges[i + 1], 3) - std::pow(ss.r_edges[i], 3));
        out.mass[i + 1] = out.mass[i] + out.rho[i] * dr3;
    }
    out.total_mass = out.mass[Nr];
    const double r_max = ss.r_edges[Nr];
    out.phi_edge.assign(Nr + 1, 0.0);
    out.phi_edge[Nr] = -out.total_mass / (kFourPi * r_max);
    for (std::size_t i = Nr; i-- > 0;) {
        double a = ss.r_edges[i], b = ss.r_edges[i + 1];
        double A = out.mass[i] - out.rho[i] * kC43 * a * a * a;
        double B = out.rho[i] * kC43;
        // int_a^b M(s)/(4 pi s^2) ds with M = A + B s^3
        double seg = B * (b * b - a * a) / 2.0;
        if (a > 0.0)
            seg += A * (1.0 / a - 1.0 / b);
        else
            seg += 0.0;  // A = 0 at the origin cell
        out.phi_edge[i] = out.phi_edge[i + 1] - seg / kFourPi;
    }
    out.phi0 = out.phi_edge[0];
    // shell averages of phi against r^2 dr via the exact in-cell formula
    out.phibar.assign(Nr, 0.0);
    static const double gx[4] = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                 0.8611363115940526};
    static const double gw[4] = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                 0.3478548451374538};
    for (std::size_t i = 0; i < Nr; ++i) {
        double a = ss.r_edges[i], b = ss.r_edges[i + 1];
        double A = out.mass[i] - out.rho[i] * kC43 * a * a * a;
        double B = out.rho[i] * kC43;
        auto phi_in = [&](double r) {
            double seg = B * (b * b - r * r) / 2.0;
            if (r > 0.0) seg += A * (1.0 / r - 1.0 / b);
            return out.phi_edge[i + 1] - seg / kFourPi;
        };
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double num = 0.0, den = (b * b * b - a * a * a) / 3.0;
        for (int q = 0; q < 4; ++q) {
            double r = mid + half * gx[q];
            num += gw[q] * phi_in(r) * r * r;
        }
        out.phibar[i] = num * half / den;
    }
    // gradient energy (1/4pi) int M^2 / r^2 dr + exterior tail
    double acc = 0.0;
    for (std::size_t i = 0; i < Nr; ++i) {
        double a = ss.r_edges[i], b = ss.r_edges[i + 1];
        double A = out.mass[i] - out.rho[i] * kC43 * a * a * a;
        double B = out.rho[i] * kC43;
        double seg = 2.0 * A * B * (b * b - a * a) / 2.0 +
                     B * B * (std::pow(b, 5) - std::pow(a, 5)) / 5.0;
        if (a > 0.0) seg += A * A * (1.0 / a - 1.0 / b);
        acc += seg;
    }
    acc += out.total_mass * out.total_mass / r_max;  // exterior
    out.grad_sq = acc / kFourPi;
    out.hamiltonian = out.kinetic - 0.5 * out.grad_sq;
    return out;
}

double hamiltonian_vp(const SteadyStateVP& ss, const AtomicFunction& f) {
    return vp_solve_field(ss, f).hamiltonian;
}

StepProfile a_e0_curve(const SteadyStateVP& ss, std::size_t samples) {
    const double top = ss.cutoff_e0 - ss.phi.phi0;  // support range of interest
    std::vector<double> bp(samples), vals(samples + 1);
    vals[0] = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        double s = top * static_cast<double>(i + 1) / static_cast<double>(samples);
        bp[i] = s;
        vals[i + 1] = ss.e0_field.a(s);
    }
    return StepProfile::from_pieces(std::move(bp), std::move(vals), Side::right);
}

double vp_k_bound(const SteadyStateVP& ss) {
    // 8 ||f0||_inf a' o a^{-1}(meas Supp f0); the sigma field's H is exactly
    // 1 / (2 a' o a^{-1})
    double h = ss.e0_field.H(ss.support_measure);
    if (!(h > 0.0)) return std::numeric_limits<double>::infinity();
    return 8.0 * ss.f0_sup * 0.5 / h;
}

Certificate certify_vp_global(const SteadyStateVP& ss, const AtomicFunction& f) {
    Certificate c;
    c.inequality_id = "vp_global";
    VpField ff = vp_solve_field(ss, f);

    const double l1 = l1_distance(f, ss.f0);
    const double rearr = rearranged_l1_distance(f, ss.f0);
    const double dH = ff.hamiltonian - ss.field0.hamiltonian;
    // || grad phi_f - grad phi_f0 ||^2, exact per-cell difference masses
    double grad_diff = 0.0;
    {
        const std::size_t Nr = ss.Nr;
        double Mi = 0.0;
        for (std::size_t i = 0; i < Nr; ++i) {
            double a = ss.r_edges[i], b = ss.r_edges[i + 1];
            double drho = ff.rho[i] - ss.field0.rho[i];
            double A = Mi - drho * kC43 * a * a * a;
            double B = drho * kC43;
            double seg = A * B * (b * b - a * a) +
                         B * B * (std::pow(b, 5) - std::pow(a, 5)) / 5.0;
            if (a > 0.0) seg += A * A * (1.0 / a - 1.0 / b);
            grad_diff += seg;
            Mi += drho * kC43 * (b * b * b - a * a * a);
        }
        grad_diff += Mi * Mi / ss.r_edges[Nr];
        grad_diff /= kFourPi;
    }

    double K0 = std::min(ss.K.value, ss.k_bound);
    double bracket = dH + 2.0 * std::abs(ss.field0.phi0) * rearr + grad_diff;
    if (bracket < 0.0) {
        c.caveats.push_back("energy bracket negative (" + std::to_string(bracket) +
                            "), clamped to zero");
        bracket = 0.0;
    }
    c.lhs = l1;
    c.rhs = rearr + std::sqrt(K0 * bracket);
    c.slack = c.rhs - c.lhs;
    c.status = status_from_slack(c.lhs, c.rhs);
    if (!ss.K.finite()) {
        c.status = Certificate::Status::inconclusive;
        c.caveats.push_back("K inconclusive");
    }

    c.component("K0", K0);
    c.component("K_computed", ss.K.value);
    c.component("K_bound", ss.k_bound);
    c.component("H_f", ff.hamiltonian);
    c.component("H_f0", ss.field0.hamiltonian);
    c.component("rearranged_l1", rearr);
    c.component("grad_diff_sq", grad_diff);
    c.component("abs_phi0_center", std::abs(ss.field0.phi0));
    c.component("bracket", bracket);
    // intermediate inequality: (||f-f0|| - ||f*-f0*||)^2 <= K0 [dH + grad/2 + 2|phi0| rearr]
    double h3_lhs = (l1 - rearr) * (l1 - rearr);
    double h3_rhs = K0 * (dH + 0.5 * grad_diff + 2.0 * std::abs(ss.field0.phi0) * rearr);
    c.component("intermediate_lhs", h3_lhs);
    c.component("intermediate_rhs", h3_rhs);
    c.component("intermediate_slack", h3_rhs - h3_lhs);
    c.component("truncated_tail_measure",
                ss.carrier->domain.total_measure - ss.carrier->total_weight);
    return c;
}

InterpolationReport interpolation_diag(const SteadyStateVP& ss, const AtomicFunction& f) {
    InterpolationReport rep;
    VpField ff = vp_solve_field(ss, f);
    rep.grad_sq = ff.grad_sq;
    double kin1 = 2.0 * ff.kinetic;  // || |v|^2 f ||_1
    double n1 = l1_norm(f);
    double ninf = sup_value(f);
    rep.bound_factor = std::sqrt(kin1) * std::pow(n1, 7.0 / 6.0) * std::cbrt(ninf);
    rep.ratio = rep.bound_factor > 0.0 ? rep.grad_sq / rep.bound_factor : 0.0;
    return rep;
}

JDiagnostics j_functional(const SteadyStateVP& ss, const AtomicFunction& f) {
    JDiagnostics out;
    VpField ff = vp_solve_field(ss, f);
    out.phi_sup = -ff.phi0;

    // a_{e_phi}(s) table for the perturbed potential
    const double c_a = 32.0 * std::numbers::sqrt2 * kPi * kPi / 3.0;
    const std::size_t Nr = ss.Nr;
    const std::size_t ns = 1024;
    double e_top = 0.0;
    for (std::size_t i = 0; i < Nr; ++i)
        e_top = std::max(e_top, 0.5 * ss.vbar2[i * ss.Nv + ss.Nv - 1] + ff.phibar[i] + out.phi_sup);
    e_top *= 1.05;
    MonotoneCurve a_tab;
    a_tab.x.resize(ns + 1);
    a_tab.y.resize(ns + 1);
    for (std::size_t m = 0; m <= ns; ++m) {
        double s = e_top * static_cast<double>(m) / static_cast<double>(ns);
        double acc = 0.0;
        for (std::size_t i = 0; i < Nr; ++i) {
            double a = ss.r_edges[i], b = ss.r_edges[i + 1];
            double q = s - out.phi_sup - ff.phibar[i];
            if (q > 0.0) acc += std::pow(q, 1.5) * (b * b * b - a * a * a) / 3.0;
        }
        a_tab.x[m] = s;
        a_tab.y[m] = c_a * acc;
    }
    // cumulative integral of b = a^{-1} over measure
    MonotoneCurve b_tab;
    b_tab.x = a_tab.y;
    b_tab.y = a_tab.x;

    // int e_phi f0^{* e_phi} = int f0_sharp(s) b(s) ds (exact stepwise against
    // the piecewise-linear b)
    StepProfile f0s = sharp_of(mu_of(ss.f0));
    double Jmain = 0.0;
    {
        const auto& bp = f0s.breakpoints();
        const auto& pv = f0s.piece_values();
        double lo = 0.0;
        for (std::size_t i = 0; i < bp.size(); ++i) {
            double t = pv[i];
            if (t > 0.0) Jmain += t * (b_tab.integral_to(bp[i]) - b_tab.integral_to(lo));
            lo = bp[i];
        }
    }
    out.J = Jmain + 0.5 * ff.grad_sq;

    // HL gap int e_phi (f - f^{* e_phi}) via the same pseudo-inverse identity
    double e_f = 0.0;
    for (std::size_t i = 0; i < Nr; ++i)
        for (std::size_t j = 0; j < ss.Nv; ++j) {
            std::size_t idx = i * ss.Nv + j;
            double ephi = 0.5 * ss.vbar2[idx] + ff.phibar[i] + out.phi_sup;
            e_f += f.weight(idx) * ephi * f.value(idx);
        }
    StepProfile fs = sharp_of(mu_of(f));
    double e_fstar = 0.0;
    {
        const auto& bp = fs.breakpoints();
        const auto& pv = fs.piece_values();
        double lo = 0.0;
        for (std::size_t i = 0; i < bp.size(); ++i) {
            double t = pv[i];
            if (t > 0.0) e_fstar += t * (b_tab.integral_to(bp[i]) - b_tab.integral_to(lo));
            lo = bp[i];
        }
    }
    out.hl_term = e_f - e_fstar;
    return out;
}

}  // namespace rlab
