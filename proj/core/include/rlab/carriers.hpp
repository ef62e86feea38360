#pragma once

// Stratified atom carriers: one atom per sigma-level band with the band's
// exact measure and the exact band-average sigma value. On such carriers the
// atom sums of the certificates coincide with the continuum integrals of
// genuine step functions, so the continuum inequalities apply verbatim.

#include "rlab/measure_core.hpp"
#include "rlab/sigma_field.hpp"

namespace rlab {

struct StratifiedCarrier {
    CarrierPtr carrier;
    SigmaField sigma;
};

// Equal-area annuli on the disc, sigma = |x|^2.
StratifiedCarrier make_disc_radius2(std::size_t n_bands, double R);

// Equal-height rows on the rectangle, sigma = x2.
StratifiedCarrier make_strip_x2(std::size_t n_bands, double L1, double L2, bool truncated = false);

// Equal-measure radial shells in truncated R^d, sigma = |x|^m. Atoms cover
// [0, support_radius]; the domain extends to cutoff_radius so sigma's range
// has headroom around the atomized support.
StratifiedCarrier make_powerlaw_shells(std::size_t n_bands, double m, int d, double cutoff_radius,
                                       double support_radius);

// Uniform cell grid on the rectangle (Euler strip fields).
CarrierPtr make_rect_grid(std::size_t N1, std::size_t N2, double L1, double L2);

// Equal-area shell carrier on the disc without a sigma field (radial Euler).
CarrierPtr make_disc_shells(std::size_t n_shells, double R);

// Phase-space (r, |v|) cells; weights are the exact 6-D shell volumes
// (4pi/3 d(r^3)) * (4pi/3 d(v^3)). Radii log-spaced from r_min.
CarrierPtr make_phase_grid(std::size_t Nr, std::size_t Nv, double r_max, double v_max,
                           double r_min_factor = 1e-4);

// Shell mid radii / edge radii helpers for the disc shell carrier.
std::vector<double> disc_shell_edges(std::size_t n_shells, double R);

}  // namespace rlab
