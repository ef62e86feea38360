#include "doctest.h"
#include "rlab/rearrange.hpp"
#include "rlab/rng.hpp"
#include "rlab/vlasov_poisson.hpp"

#include <cmath>
#include <numbers>

using namespace rlab;

namespace {

// small grid for unit tests; the acceptance suite runs the full 2048 x 512
VpGridParams small_grid() {
    VpGridParams g;
    g.Nr = 256;
    g.Nv = 96;
    g.ode_steps = 2048;
    return g;
}

const SteadyStateVP& default_state() {
    static SteadyStateVP ss = build_steady_vp(1.5, 1.0, -0.1, small_grid());
    return ss;
}

}  // namespace

TEST_CASE("velocity reduction constant c_k matches a quadrature oracle") {
    // c_k = 4 sqrt(2) pi B(k+1, 3/2); oracle: direct quadrature of
    // int (s - v^2/2)_+^k v^2 dv = c_k / (4 pi) s^{k+3/2}
    for (double k : {1.5, 2.0, 2.75}) {
        const double s = 0.37;
        const int n = 200000;
        const double vmax = std::sqrt(2.0 * s);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            double v = (i + 0.5) * vmax / n;
            acc += std::pow(s - 0.5 * v * v, k) * v * v;
        }
        acc *= vmax / n * 4.0 * std::numbers::pi;
        double logB = std::lgamma(k + 1.0) + std::lgamma(1.5) - std::lgamma(k + 2.5);
        double ck = 4.0 * std::numbers::sqrt2 * std::numbers::pi * std::exp(logB);
        CHECK(acc == doctest::Approx(ck * std::pow(s, k + 1.5)).epsilon(1e-6));
    }
    // k = 3/2: Beta(5/2, 3/2) = pi/16, so c_k = sqrt(2) pi^2 / 4
    const SteadyStateVP& ss = default_state();
    double closed = std::numbers::sqrt2 * std::numbers::pi * std::numbers::pi / 4.0;
    CHECK(ss.c_k == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS(build_steady_vp(0.9, 1.0, -0.1, small_grid()));
    CHECK_THROWS(build_steady_vp(1.5, -1.0, -0.1, small_grid()));
    CHECK_THROWS(build_steady_vp(1.5, 1.0, 0.1, small_grid()));
}

TEST_CASE("steady state: support inside the box, shooting matched") {
    const SteadyStateVP& ss = default_state();
    CHECK(ss.phi.phi0 < ss.cutoff_e0);
    CHECK(ss.support_radius > 0.0);
    CHECK(ss.support_radius < ss.r_edges.back());
    // exterior matching: phi(r_s) = e0 = -r_s phi'(r_s); check through the
    // stored potential via finite differences just outside the edge
    double rs_ = ss.support_radius;
    double phi_edge = ss.phi.eval(rs_);
    CHECK(phi_edge == doctest::Approx(ss.cutoff_e0).epsilon(1e-8));
}

TEST_CASE("rho scales linearly in kappa at fixed potential") {
    const SteadyStateVP& ss = default_state();
    SteadyStateVP two = ss;
    two.kappa = 2.0 * ss.kappa;
    for (double p : {-0.15, -0.12, -0.11})
        CHECK(vp_rho_of_phi(two, p) == doctest::Approx(2.0 * vp_rho_of_phi(ss, p)).epsilon(1e-14));
}

TEST_CASE("f0 is an exact fixed point of its energy rearrangement") {
    const SteadyStateVP& ss = default_state();
    Rearranged rr = sigma_rearrange_full(ss.f0, ss.e0_field);
    AtomicFunction lifted = rr.lift(ss.f0);
    double dist = l1_distance(lifted, rr.value);
    CHECK(dist <= 1e-6 * l1_norm(ss.f0));
}

TEST_CASE("a_e0: zero at zero, monotone, saturates at the support measure") {
    const SteadyStateVP& ss = default_state();
    CHECK(ss.e0_field.a(0.0) == 0.0);
    double top = ss.cutoff_e0 - ss.phi.phi0;
    double prev = -1.0;
    for (int i = 1; i <= 16; ++i) {
        double s = top * i / 16.0;
        double a = ss.e0_field.a(s);
        CHECK(a > prev);
        prev = a;
    }
    CHECK(ss.e0_field.a(top) == doctest::Approx(ss.support_measure).epsilon(1e-12));
    StepProfile curve = a_e0_curve(ss);
    CHECK(curve.nondecreasing(1e-12));
}

TEST_CASE("a_e0 closed form matches the empirical energy CDF at percentiles") {
    const SteadyStateVP& ss = default_state();
    const auto& sig = ss.e0_field.values();
    for (double frac : {0.1, 0.5, 0.9}) {
        double target = frac * ss.support_measure;
        double s = ss.e0_field.b(target);
        // empirical CDF: weighted mass of atoms with e0 below s
        double mass = 0.0;
        for (std::size_t i = 0; i < sig.size(); ++i)
            if (sig[i] < s) mass += ss.carrier->weight[i];
        CHECK(mass == doctest::Approx(target).epsilon(0.01));
    }
}

TEST_CASE("K is finite and dominated by the explicit bound") {
    const SteadyStateVP& ss = default_state();
    CHECK(ss.K.finite());
    CHECK(ss.K.value > 0.0);
    CHECK(ss.k_bound > 0.0);
    CHECK(ss.K.value <= ss.k_bound * (1.0 + 1e-6));
    // doubling ||f0||_inf doubles the bound
    SteadyStateVP two = ss;
    two.f0_sup = 2.0 * ss.f0_sup;
    CHECK(vp_k_bound(two) == doctest::Approx(2.0 * ss.k_bound).epsilon(1e-12));
}

TEST_CASE("hamiltonian: zero function, oracle value, scaling laws") {
    // near-default resolution so the discretization error sits inside the
    // oracle tolerance
    VpGridParams g;
    g.Nr = 1024;
    g.Nv = 512;
    g.ode_steps = 2048;
    SteadyStateVP ss = build_steady_vp(1.5, 1.0, -0.1, g);
    AtomicFunction z(ss.carrier, std::vector<double>(ss.carrier->size(), 0.0));
    CHECK(hamiltonian_vp(ss, z) == 0.0);

    // independent dense-grid oracle for H(f0) using the shot potential
    const int NR = 1600, NV = 1000;
    const double rmax = ss.r_edges.back(), vmax = ss.v_edges.back();
    double kin = 0.0, mass = 0.0;
    for (int i = 0; i < NR; ++i) {
        double r = (i + 0.5) * rmax / NR;
        double phir = ss.phi.eval(r);
        for (int j = 0; j < NV; ++j) {
            double v = (j + 0.5) * vmax / NV;
            double e = 0.5 * v * v + phir;
            double f = e < ss.cutoff_e0 ? ss.kappa * std::pow(ss.cutoff_e0 - e, ss.k) : 0.0;
            double w = 16.0 * std::numbers::pi * std::numbers::pi * r * r * v * v *
                       (rmax / NR) * (vmax / NV);
            kin += w * 0.5 * v * v * f;
            mass += w * f;
        }
    }
    // field energy oracle: grad phi = M(r)/(4 pi r^2), exterior included
    double gsq = 0.0, M = 0.0;
    for (int i = 0; i < NR; ++i) {
        double r = (i + 0.5) * rmax / NR;
        double phir = ss.phi.eval(r);
        double rho = vp_rho_of_phi(ss, phir);
        double dM = rho * 4.0 * std::numbers::pi * r * r * (rmax / NR);
        double gr = (M + 0.5 * dM) / (4.0 * std::numbers::pi * r * r);
        gsq += gr * gr * 4.0 * std::numbers::pi * r * r * (rmax / NR);
        M += dM;
    }
    gsq += M * M / (4.0 * std::numbers::pi * rmax);
    double oracle = kin - 0.5 * gsq;
    double computed = ss.field0.hamiltonian;
    CHECK(computed == doctest::Approx(oracle).epsilon(1e-4));

    // scaling: kinetic term linear, field term quadratic
    std::vector<double> v2 = ss.f0.values();
    for (double& x : v2) x *= 2.0;
    VpField f2 = vp_solve_field(ss, AtomicFunction(ss.carrier, v2));
    CHECK(f2.kinetic == doctest::Approx(2.0 * ss.field0.kinetic).epsilon(1e-12));
    CHECK(f2.grad_sq == doctest::Approx(4.0 * ss.field0.grad_sq).epsilon(1e-12));
}

TEST_CASE("global control certificate") {
    const SteadyStateVP& ss = default_state();

    // f = f0: both sides vanish
    Certificate c0 = certify_vp_global(ss, ss.f0);
    CHECK(c0.lhs == 0.0);
    CHECK(c0.rhs == doctest::Approx(0.0));
    CHECK(c0.status == Certificate::Status::holds);

    // scaling by 1.05
    std::vector<double> v = ss.f0.values();
    for (double& x : v) x *= 1.05;
    Certificate cs = certify_vp_global(ss, AtomicFunction(ss.carrier, v));
    CHECK(cs.status == Certificate::Status::holds);
    CHECK(std::isfinite(cs.rhs));

    // random perturbations
    RandomStream rs(606);
    for (int t = 0; t < 12; ++t) {
        AtomicFunction f = additive_perturbation(rs, ss.f0, 0.05 * ss.f0_sup);
        Certificate c = certify_vp_global(ss, f);
        CHECK(c.status == Certificate::Status::holds);
        CHECK(c.find_component("intermediate_slack") >= -1e-9);
    }
}

TEST_CASE("interpolation diagnostic is scale-invariant") {
    const SteadyStateVP& ss = default_state();
    InterpolationReport r1 = interpolation_diag(ss, ss.f0);
    CHECK(r1.ratio > 0.0);
    std::vector<double> v = ss.f0.values();
    for (double& x : v) x *= 3.0;
    InterpolationReport r3 = interpolation_diag(ss, AtomicFunction(ss.carrier, v));
    CHECK(r3.ratio == doctest::Approx(r1.ratio).epsilon(1e-10));
    AtomicFunction z(ss.carrier, std::vector<double>(ss.carrier->size(), 0.0));
    InterpolationReport rz = interpolation_diag(ss, z);
    CHECK(rz.grad_sq == 0.0);
    CHECK(rz.ratio == 0.0);
}

TEST_CASE("J functional bookkeeping on equimeasurable transports") {
    const SteadyStateVP& ss = default_state();
    JDiagnostics j0 = j_functional(ss, ss.f0);
    CHECK(j0.phi_sup == doctest::Approx(-ss.field0.phi0).epsilon(1e-12));
    CHECK(j0.hl_term >= -1e-6 * l1_norm(ss.f0));

    RandomStream rs(42);
    for (int t = 0; t < 4; ++t) {
        // measure-preserving transport along a noisy energy ordering
        std::vector<double> sig = ss.e0_field.values();
        double top = *std::max_element(sig.begin(), sig.end());
        for (double& s : sig) s += 0.02 * top * (rs.uniform() - 0.5);
        SigmaField noisy = SigmaField::empirical(ss.carrier, std::move(sig));
        Rearranged rr = sigma_rearrange_full(ss.f0, noisy);
        std::vector<double> v(ss.carrier->size(), 0.0);
        for (std::size_t p = 0; p < rr.carrier->size(); ++p)
            v[rr.parent[p]] += rr.carrier->weight[p] * rr.value.value(p);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] /= ss.carrier->weight[i];
        AtomicFunction f(ss.carrier, std::move(v));

        double dH = hamiltonian_vp(ss, f) - ss.field0.hamiltonian;
        JDiagnostics jf = j_functional(ss, f);
        double rearr = rearranged_l1_distance(f, ss.f0);
        double lhs = dH + jf.phi_sup * rearr;
        double rhs = jf.J - j0.J;
        double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        CHECK(lhs >= rhs - 1e-4 * scale);
    }
}
