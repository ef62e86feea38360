#include "rlab/step_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rlab {

StepProfile StepProfile::from_pieces(std::vector<double> breakpoints,
                                     std::vector<double> piece_values,
                                     Side side) {
    if (piece_values.size() != breakpoints.size() + 1)
        throw std::invalid_argument("StepProfile: need breakpoints.size()+1 piece values");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw std::invalid_argument("StepProfile: breakpoints must be strictly increasing");
    StepProfile p;
    p.bp_ = std::move(breakpoints);
    p.val_ = std::move(piece_values);
    p.side_ = side;
    if (p.bp_.empty() && p.val_.size() == 1 && p.val_[0] == 0.0) p.val_.clear();
    return p;
}

double StepProfile::value_right(double x) const {
    if (val_.empty()) return 0.0;
    // first piece whose interval lies to the right of x, treating x itself as
    // belonging to the piece on its right
    auto it = std::upper_bound(bp_.begin(), bp_.end(), x);
    return val_[static_cast<std::size_t>(it - bp_.begin())];
}

double StepProfile::value_left(double x) const {
    if (val_.empty()) return 0.0;
    auto it = std::lower_bound(bp_.begin(), bp_.end(), x);
    return val_[static_cast<std::size_t>(it - bp_.begin())];
}

double StepProfile::operator()(double x) const {
    return side_ == Side::right ? value_right(x) : value_left(x);
}

double StepProfile::min_breakpoint() const {
    if (bp_.empty()) throw std::logic_error("StepProfile: no breakpoints");
    return bp_.front();
}

double StepProfile::max_breakpoint() const {
    if (bp_.empty()) throw std::logic_error("StepProfile: no breakpoints");
    return bp_.back();
}

double StepProfile::max_value() const {
    if (val_.empty()) return 0.0;
    return *std::max_element(val_.begin(), val_.end());
}

bool StepProfile::nonincreasing(double tol) const {
    for (std::size_t i = 1; i < val_.size(); ++i)
        if (val_[i] > val_[i - 1] + tol) return false;
    return true;
}

bool StepProfile::nondecreasing(double tol) const {
    for (std::size_t i = 1; i < val_.size(); ++i)
        if (val_[i] < val_[i - 1] - tol) return false;
    return true;
}

double StepProfile::integrate(double a, double b) const {
    if (b <= a) return 0.0;
    if (val_.empty()) return 0.0;
    double acc = 0.0;
    double lo = a;
    // index of piece containing lo (breakpoint itself irrelevant for measure)
    std::size_t i = static_cast<std::size_t>(
        std::upper_bound(bp_.begin(), bp_.end(), lo) - bp_.begin());
    while (lo < b) {
        double hi = (i < bp_.size()) ? std::min(bp_[i], b) : b;
        acc += val_[i] * (hi - lo);
        lo = hi;
        ++i;
    }
    return acc;
}

static std::vector<double> merged_breakpoints(const StepProfile& a, const StepProfile& b) {
    std::vector<double> m;
    m.reserve(a.breakpoints().size() + b.breakpoints().size());
    std::merge(a.breakpoints().begin(), a.breakpoints().end(),
               b.breakpoints().begin(), b.breakpoints().end(), std::back_inserter(m));
    m.erase(std::unique(m.begin(), m.end()), m.end());
    return m;
}

StepProfile StepProfile::combine(const StepProfile& a, const StepProfile& b,
                                 const std::function<double(double, double)>& fn) {
    std::vector<double> m = merged_breakpoints(a, b);
    std::vector<double> vals(m.size() + 1);
    for (std::size_t i = 0; i <= m.size(); ++i) {
        // sample each open interval strictly inside it: pick any point; use
        // right limits at the left edge (and left limit of the first tail)
        double probe;
        if (m.empty())
            probe = 0.0;
        else if (i == 0)
            probe = m.front();  // left tail: left limits at first breakpoint
        else
            probe = m[i - 1];  // right limits at the interval's left edge
        double va = (i == 0) ? a.value_left(probe) : a.value_right(probe);
        double vb = (i == 0) ? b.value_left(probe) : b.value_right(probe);
        vals[i] = fn(va, vb);
    }
    return from_pieces(std::move(m), std::move(vals), Side::right);
}

double StepProfile::integrate_combined(const StepProfile& a, const StepProfile& b,
                                       const std::function<double(double, double)>& fn,
                                       double lo, double hi) {
    if (hi <= lo) return 0.0;
    std::vector<double> m = merged_breakpoints(a, b);
    double acc = 0.0;
    double x = lo;
    auto it = std::upper_bound(m.begin(), m.end(), lo);
    while (x < hi) {
        double next = (it != m.end()) ? std::min(*it, hi) : hi;
        if (next > x) {
            double va = a.value_right(x);
            double vb = b.value_right(x);
            acc += fn(va, vb) * (next - x);
        }
        x = next;
        if (it != m.end() && *it <= x) ++it;
    }
    return acc;
}

}  // namespace rlab
