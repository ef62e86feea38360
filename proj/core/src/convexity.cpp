#include "rlab/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rlab {

double ConvexCurve::eval(double m) const {
    if (mu.size() < 2) throw std::logic_error("ConvexCurve: need at least two knots");
    if (m <= mu.front()) {
        double s = (val[1] - val[0]) / (mu[1] - mu[0]);
        return val.front() + s * (m - mu.front());
    }
    if (m >= mu.back()) {
        if (ext == Extension::forbidden && m > mu.back() * (1.0 + 1e-12))
            throw std::out_of_range("ConvexCurve: evaluation beyond the last knot");
        std::size_t n = mu.size();
        double s = (val[n - 1] - val[n - 2]) / (mu[n - 1] - mu[n - 2]);
        return val.back() + s * (m - mu.back());
    }
    auto it = std::upper_bound(mu.begin(), mu.end(), m);
    std::size_t i = static_cast<std::size_t>(it - mu.begin()) - 1;
    double t = (m - mu[i]) / (mu[i + 1] - mu[i]);
    return val[i] + t * (val[i + 1] - val[i]);
}

bool ConvexCurve::discretely_convex(double tol) const {
    for (std::size_t i = 1; i + 1 < mu.size(); ++i) {
        double sl = (val[i] - val[i - 1]) / (mu[i] - mu[i - 1]);
        double sr = (val[i + 1] - val[i]) / (mu[i + 1] - mu[i]);
        double scale = std::max({std::abs(sl), std::abs(sr), 1.0});
        if (sr - sl < -tol * scale) return false;
    }
    return true;
}

double ConvexCurve::min_slope_increment() const {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < mu.size(); ++i) {
        double sl = (val[i] - val[i - 1]) / (mu[i] - mu[i - 1]);
        double sr = (val[i + 1] - val[i]) / (mu[i + 1] - mu[i]);
        best = std::min(best, sr - sl);
    }
    return best;
}

ConvexCurve b_sigma_curve(const SigmaField& sigma, std::size_t analytic_samples,
                          bool with_midpoints) {
    if (std::isinf(sigma.e_min()) && !sigma.analytic_closed_form() &&
        sigma.kind() != SigmaKind::MicroEnergy)
        throw std::invalid_argument("b_sigma_curve: e_min = -inf without a closed form");
    ConvexCurve c;
    c.ext = ConvexCurve::Extension::linear;
    const double M = sigma.total_measure();
    std::vector<double> knots;
    if (sigma.analytic_closed_form() || sigma.kind() == SigmaKind::MicroEnergy) {
        std::size_t n = std::max<std::size_t>(analytic_samples, 4);
        for (std::size_t i = 0; i <= n; ++i)
            knots.push_back(M * static_cast<double>(i) / static_cast<double>(n));
    } else {
        knots.push_back(0.0);
        for (double b : sigma.b_profile().breakpoints()) knots.push_back(b);
        knots.push_back(M);
        knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    }
    c.mu.reserve(2 * knots.size());
    for (std::size_t i = 0; i < knots.size(); ++i) {
        c.mu.push_back(knots[i]);
        if (with_midpoints && i + 1 < knots.size())
            c.mu.push_back(0.5 * (knots[i] + knots[i + 1]));
    }
    c.val.reserve(c.mu.size());
    for (double m : c.mu) c.val.push_back(sigma.B(m));
    return c;
}

double h_sigma(const SigmaField& sigma, double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("h_sigma: mu in (0, meas) required");
    return sigma.H(mu);
}

const char* KConstant::method_name(Method m) {
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::piecewise_exact: return "piecewise_exact";
        default: return "inconclusive";
    }
}

KConstant k_constant(const AtomicFunction& q, const SigmaField& sigma) {
    if (l1_norm(q) <= 0.0) throw std::invalid_argument("k_constant: q must be nonzero");
    StepProfile mu = mu_of(q);
    const auto& t = mu.breakpoints();
    const auto& m = mu.piece_values();
    KConstant k;
    k.h_floor = std::numeric_limits<double>::infinity();
    double acc = 0.0;
    // plateaus of mu_q over [0, ||q||_inf); the interval [t_{i-1}, t_i)
    // carries mass m[i-1] (m[0] is the plateau on [0, t_0))
    double lo = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double len = t[i] - lo;
        double mass = m[i];
        if (len > 0.0 && mass > 0.0) {
            double h = sigma.H(mass);
            k.h_floor = std::min(k.h_floor, h);
            if (h <= 1e-14) {
                k.value = std::numeric_limits<double>::infinity();
                k.method = KConstant::Method::inconclusive;
                return k;
            }
            acc += len / h;
        }
        lo = t[i];
    }
    k.value = 4.0 * acc;
    k.method = sigma.analytic_closed_form() ? KConstant::Method::closed_form
                                            : KConstant::Method::piecewise_exact;
    return k;
}

}  // namespace rlab
