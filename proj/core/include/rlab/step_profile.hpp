#pragma once

// Right/left-continuous piecewise-constant functions with exact closed-form
// integration. These carry every one-dimensional object of the rearrangement
// machinery: distribution functions mu_q, pseudo-inverses q_sharp, the level
// profiles beta_{f,g}, and the empirical Jacobians a_sigma / b_sigma.

#include <functional>
#include <vector>

namespace rlab {

enum class Side { right, left };

class StepProfile {
public:
    // Identically-zero profile.
    StepProfile() = default;

    // `piece_values` has one entry more than `breakpoints`: piece_values[i]
    // is the value on (breakpoints[i-1], breakpoints[i]); the first and last
    // entries are the tail values. Breakpoints must be strictly increasing.
    static StepProfile from_pieces(std::vector<double> breakpoints,
                                   std::vector<double> piece_values,
                                   Side side = Side::right);

    // Evaluation returns the declared-side limit at breakpoints.
    double operator()(double x) const;
    double value_left(double x) const;
    double value_right(double x) const;

    const std::vector<double>& breakpoints() const { return bp_; }
    const std::vector<double>& piece_values() const { return val_; }
    Side side() const { return side_; }

    bool empty() const { return bp_.empty(); }
    std::size_t piece_count() const { return val_.size(); }

    double min_breakpoint() const;
    double max_breakpoint() const;
    double max_value() const;

    bool nonincreasing(double tol = 0.0) const;
    bool nondecreasing(double tol = 0.0) const;

    // Exact integral over [a, b]; sum of plateau * length.
    double integrate(double a, double b) const;

    // Pointwise combination on the merged breakpoint set.
    static StepProfile combine(const StepProfile& a, const StepProfile& b,
                               const std::function<double(double, double)>& fn);

    // Exact integral of fn(a(x), b(x)) over [lo, hi].
    static double integrate_combined(const StepProfile& a, const StepProfile& b,
                                     const std::function<double(double, double)>& fn,
                                     double lo, double hi);

    bool operator==(const StepProfile& other) const = default;

private:
    std::vector<double> bp_;   // strictly increasing
    std::vector<double> val_;  // bp_.size() + 1 piece values; both empty => zero
    Side side_ = Side::right;
};

}  // namespace rlab
