#pragma once

// Radial gravitational Vlasov-Poisson: polytrope steady states built by
// shooting on the central potential, the micro-energy Jacobian a_e0, the
// Hamiltonian, and the global L1 control certificate.

#include <cstddef>
#include <vector>

#include "rlab/certify.hpp"
#include "rlab/measure_core.hpp"
#include "rlab/sigma_field.hpp"

namespace rlab {

struct VpGridParams {
    std::size_t Nr = 2048;   // log-spaced radial cells
    std::size_t Nv = 512;    // uniform speed cells per radius
    double r_pad = 1.6;      // r_max = r_pad * support radius
    double v_pad = 1.05;     // v_max = v_pad * max support speed
    double shoot_tol = 1e-10;
    std::size_t ode_steps = 4096;  // integration steps per unit scale length
};

struct RadialPotential {
    std::vector<double> r;    // strictly increasing, r.front() = 0
    std::vector<double> phi;  // negative, nondecreasing
    double phi0 = 0.0;        // phi(0)

    double eval(double rr) const;  // linear interpolation, clamped
};

// Field solve of one atomic phase-space function on the steady-state grid.
struct VpField {
    std::vector<double> rho;      // shell-averaged spatial density
    std::vector<double> mass;     // cumulative mass at shell edges
    std::vector<double> phi_edge; // potential at shell edges
    std::vector<double> phibar;   // shell averages of the potential
    double phi0 = 0.0;
    double grad_sq = 0.0;         // || grad phi ||_L2^2 including exterior tail
    double kinetic = 0.0;         // int |v|^2/2 f
    double hamiltonian = 0.0;     // kinetic - grad_sq / 2
    double total_mass = 0.0;
};

struct SteadyStateVP {
    // profile F(e) = kappa (e0 - e)_+^k
    double k = 1.5;
    double kappa = 1.0;
    double cutoff_e0 = -0.1;
    double c_k = 0.0;  // velocity-reduction constant 4 sqrt(2) pi Beta(k+1, 3/2)

    RadialPotential phi;
    double support_radius = 0.0;
    double support_measure = 0.0;

    // phase-space carrier and cached geometry
    CarrierPtr carrier;
    std::size_t Nr = 0, Nv = 0;
    std::vector<double> r_edges, v_edges;
    std::vector<double> vbar2;    // per-atom exact mean of v^2
    std::vector<double> phibar0;  // per-shell mean of phi_{f0}

    AtomicFunction f0;
    double f0_sup = 0.0;
    SigmaField e0_field;  // MicroEnergy sigma with quadrature tables
    VpField field0;       // self-consistent field of f0
    KConstant K;          // K(f0*, e0)
    double k_bound = 0.0; // explicit upper bound 8 ||f0||_inf a' o a^{-1}(supp)
};

// Closed-form radial density rho(phi) = c_k kappa (e0 - phi)_+^{k+3/2}.
double vp_rho_of_phi(const SteadyStateVP& ss, double phi);

SteadyStateVP build_steady_vp(double k, double kappa, double e0, VpGridParams grid = {});

// Field solve for any co-atomic phase function (rho, phi, energies).
VpField vp_solve_field(const SteadyStateVP& ss, const AtomicFunction& f);

double hamiltonian_vp(const SteadyStateVP& ss, const AtomicFunction& f);

// Sampled StepProfile view of the a_e0 table (for serialization and tests).
StepProfile a_e0_curve(const SteadyStateVP& ss, std::size_t samples = 512);

double vp_k_bound(const SteadyStateVP& ss);

// Global L1 control certificate:
// ||f - f0||_1 <= ||f* - f0*||_1 + sqrt(K0 [ H(f)-H(f0) + 2|phi0(0)| ||f*-f0*||_1
//                                            + ||grad phi_f - grad phi_f0||^2 ])
Certificate certify_vp_global(const SteadyStateVP& ss, const AtomicFunction& f);

struct InterpolationReport {
    double grad_sq = 0.0;       // || grad phi_f ||^2
    double bound_factor = 0.0;  // |||v|^2 f||^{1/2} ||f||_1^{7/6} ||f||_inf^{1/3}
    double ratio = 0.0;         // grad_sq / bound_factor (scale-invariant)
};
InterpolationReport interpolation_diag(const SteadyStateVP& ss, const AtomicFunction& f);

// J(phi) = int e_phi f0^{* e_phi} + (1/2) ||grad phi||^2 evaluated through the
// pseudo-inverse identity int e_phi f0^{*e_phi} = int f0_sharp(s) b_{e_phi}(s) ds.
struct JDiagnostics {
    double J = 0.0;
    double hl_term = 0.0;        // int e_phi (f - f^{*e_phi}) >= 0 for the same f
    double phi_sup = 0.0;        // || phi ||_inf
};
JDiagnostics j_functional(const SteadyStateVP& ss, const AtomicFunction& f);

}  // namespace rlab
