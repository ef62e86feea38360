#pragma once

// B_sigma as a piecewise-linear convex curve, the convexity modulus H_sigma,
// and the stability constant K(q*, sigma) = 4 * integral dt / H(mu_q(t)).

#include <string>
#include <vector>

#include "rlab/measure_core.hpp"
#include "rlab/sigma_field.hpp"

namespace rlab {

struct ConvexCurve {
    enum class Extension { forbidden, linear };

    std::vector<double> mu;   // increasing knot abscissae
    std::vector<double> val;  // knot values
    Extension ext = Extension::linear;

    double eval(double m) const;
    double max_knot() const { return mu.back(); }

    // B curves are convex by construction: second differences across
    // consecutive knot triples stay above -tol * local scale.
    bool discretely_convex(double tol = 1e-12) const;

    // Smallest slope increment between consecutive segments (strict convexity
    // check for Psi_0).
    double min_slope_increment() const;
};

// Exact B curve. Empirical fields produce their exact piecewise-linear
// integral knots; closed-form families are sampled at a uniform measure grid
// plus midpoints. Pass with_midpoints = false when the knot structure itself
// is under test (strict convexity of Psi0): midpoints sit on exactly linear
// pieces and carry zero slope increments.
ConvexCurve b_sigma_curve(const SigmaField& sigma, std::size_t analytic_samples = 64,
                          bool with_midpoints = true);

double h_sigma(const SigmaField& sigma, double mu);

struct KConstant {
    enum class Method { closed_form, piecewise_exact, inconclusive };
    double value = 0.0;
    Method method = Method::inconclusive;
    double h_floor = 0.0;

    bool finite() const { return method != Method::inconclusive; }
    static const char* method_name(Method m);
};

KConstant k_constant(const AtomicFunction& q, const SigmaField& sigma);

}  // namespace rlab
