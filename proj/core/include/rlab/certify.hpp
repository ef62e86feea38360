#pragma once

// Machine-checkable certificates for the refined Hardy-Littlewood
// inequalities: both sides evaluated by exact piecewise integration, slack
// and a full component breakdown recorded, plus an independent layer-cake
// enumeration oracle for cross-validation.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rlab/convexity.hpp"
#include "rlab/measure_core.hpp"
#include "rlab/rearrange.hpp"
#include "rlab/sigma_field.hpp"

namespace rlab {

struct Certificate {
    enum class Status { holds, violated, inconclusive };

    std::string inequality_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs for "lhs <= rhs" statements
    Status status = Status::inconclusive;
    std::vector<std::pair<std::string, double>> components;
    std::vector<std::string> caveats;

    static const char* status_name(Status s);
    nlohmann::ordered_json to_json() const;

    void component(const std::string& name, double v) { components.emplace_back(name, v); }
    double find_component(const std::string& name) const;
};

// status from slack under the standard tolerance 1e-9 * max(|lhs|,|rhs|,1)
Certificate::Status status_from_slack(double lhs, double rhs);

// Main refined inequality (id thm1_ineq1):
//   (||f - q*s||_1 + ||q||_1 - ||f||_1)^2
//     <= K(q*,s) [ int s (f - q*s) + int (b_{f*,q*} b(2 mu_q) - b_{q*,f*} b(mu_q)) ]
Certificate certify_thm1(const AtomicFunction& f, const AtomicFunction& q,
                         const SigmaField& sigma);

// Self-comparison form (id thm1_ineq2): ||f - f*s||_1^2 <= K(f*,s) int s (f - f*s)
Certificate certify_refined(const AtomicFunction& f, const SigmaField& sigma);

// K-free convexity estimate (id remark3_ineq11), valid when K is infinite.
// The beta in the convexity term is beta(t) = meas{f <= t < q*s}; the
// variant built from q itself admits discrete counterexamples when q is not
// sigma-monotone.
Certificate certify_remark3(const AtomicFunction& f, const AtomicFunction& q,
                            const SigmaField& sigma);

// Radial bathtub estimate (id corollary1) with sigma = |x|^m, 0 < m <= d.
Certificate certify_corollary1(const AtomicFunction& u, double m);

// Brute-force layer-cake enumeration: alpha/beta from the D1/D2 sets by
// direct atom membership tests at level midpoints. Returns every quantity the
// production path computes through StepProfiles, for equality checks.
struct LayerCakeOracle {
    double base0_value = 0.0;       // int [B(mu+alpha) + B(mu-beta) - 2B(mu)]
    double remark3_lhs = 0.0;       // K-free estimate's convexity side, enumerated
    double convexity_term = 0.0;    // int [B(mu+beta) + B(mu-beta) - 2B(mu)]
    double bstar_term = 0.0;        // int [beta_{q*,f*} b(mu) - beta_{f*,q*} b(2mu)]
    double alpha_plus_beta = 0.0;   // == ||f - q*s||_1
    double sigma_energy = 0.0;      // int sigma (f - q*s)
    double max_levelwise_gap = 0.0; // max |(beta-alpha) - (mu_q - mu_f)| over levels
};

LayerCakeOracle oracle_layer_cake(const AtomicFunction& f, const AtomicFunction& q,
                                  const SigmaField& sigma);

// Classical Hardy-Littlewood sanity gap: int f* g* - int f g  (>= 0).
double hl_classic_gap(const AtomicFunction& f, const AtomicFunction& g);

// Generalized HL positivity: atom sum of sigma * (f - f^{*sigma}).
double hl_theta_gap(const AtomicFunction& f, const SigmaField& sigma);

// Certificate wrappers for the two classical inequalities
// (ids hl_classic and hl_theta).
Certificate certify_hl_classic(const AtomicFunction& f, const AtomicFunction& g);
Certificate certify_hl_theta(const AtomicFunction& f, const SigmaField& sigma);

}  // namespace rlab
