#include "rlab/sigma_field.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace rlab {

// ---------------------------------------------------------------------------
// MonotoneCurve

static std::size_t segment_index(const std::vector<double>& xs, double q) {
    if (xs.size() < 2) throw std::logic_error("MonotoneCurve: need at least two points");
    auto it = std::upper_bound(xs.begin(), xs.end(), q);
    std::size_t i = static_cast<std::size_t>(it - xs.begin());
    if (i == 0) return 0;
    if (i >= xs.size()) return xs.size() - 2;
    return i - 1;
}

double MonotoneCurve::eval(double q) const {
    if (x.empty()) return 0.0;
    if (q <= x.front()) return y.front();
    if (q >= x.back()) return y.back();
    std::size_t i = segment_index(x, q);
    double t = (q - x[i]) / (x[i + 1] - x[i]);
    return y[i] + t * (y[i + 1] - y[i]);
}

double MonotoneCurve::inverse(double q) const {
    if (y.empty()) return 0.0;
    if (q <= y.front()) return x.front();
    if (q >= y.back()) return x.back();
    auto it = std::upper_bound(y.begin(), y.end(), q);
    std::size_t i = static_cast<std::size_t>(it - y.begin());
    if (i == 0) return x.front();
    if (i >= y.size()) return x.back();
    --i;
    double dy = y[i + 1] - y[i];
    if (dy <= 0.0) return x[i];
    double t = (q - y[i]) / dy;
    return x[i] + t * (x[i + 1] - x[i]);
}

double MonotoneCurve::slope_at(double q) const {
    std::size_t i = segment_index(x, q);
    double dx = x[i + 1] - x[i];
    return dx > 0 ? (y[i + 1] - y[i]) / dx : 0.0;
}

double MonotoneCurve::integral_to(double q) const {
    if (x.size() < 2) return 0.0;
    double qq = std::min(std::max(q, x.front()), x.back());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size() && x[i] < qq; ++i) {
        double hi = std::min(x[i + 1], qq);
        double t0 = y[i];
        double t1 = (x[i + 1] > x[i]) ? y[i] + (y[i + 1] - y[i]) * (hi - x[i]) / (x[i + 1] - x[i])
                                      : y[i];
        acc += 0.5 * (t0 + t1) * (hi - x[i]);
    }
    if (q > x.back()) acc += y.back() * (q - x.back());
    return acc;
}

double MonotoneCurve::mean_over(double a, double b) const {
    if (!(b > a)) return eval(a);
    return (integral_to(b) - integral_to(a)) / (b - a);
}

// ---------------------------------------------------------------------------
// SigmaField construction

void SigmaField::finish_common() {
    const std::size_t n = values_.size();
    if (n == 0) throw std::invalid_argument("SigmaField: carrier has zero atoms");
    if (values_.size() != carrier_->size())
        throw std::invalid_argument("SigmaField: sigma value count != atom count");
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    std::sort(order_.begin(), order_.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (values_[a] != values_[b]) return values_[a] < values_[b];
        return a < b;
    });
    rank_.resize(n);
    for (std::uint32_t r = 0; r < n; ++r) rank_[order_[r]] = r;
    // tie diagnostic: mass of atoms sharing a sigma value with another atom
    tie_mass_ = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        double w = 0.0;
        while (j < n && values_[order_[j]] == values_[order_[i]]) {
            w += carrier_->weight[order_[j]];
            ++j;
        }
        if (j - i > 1) tie_mass_ += w;
        i = j;
    }
}

void SigmaField::build_empirical_curves() {
    const std::size_t n = values_.size();
    // group equal sigma values along the sorted order
    std::vector<double> sig;    // distinct sigma values ascending
    std::vector<double> mass;   // group masses
    std::size_t i = 0;
    while (i < n) {
        double v = values_[order_[i]];
        double w = 0.0;
        while (i < n && values_[order_[i]] == v) {
            w += carrier_->weight[order_[i]];
            ++i;
        }
        sig.push_back(v);
        mass.push_back(w);
    }
    total_measure_ = std::accumulate(mass.begin(), mass.end(), 0.0);
    e_min_ = sig.front();
    e_max_ = sig.back();

    // a(e) = mass strictly below e: left-continuous step with jumps at sig
    std::vector<double> avals(sig.size() + 1);
    double cum = 0.0;
    for (std::size_t k = 0; k < sig.size(); ++k) {
        avals[k] = cum;
        cum += mass[k];
    }
    avals.back() = cum;
    a_profile_ = StepProfile::from_pieces(sig, avals, Side::left);

    // b(mu) = sigma_(k) on [W_{k-1}, W_k): right-continuous over measures.
    // Groups whose mass rounds away (split-piece residues) occupy zero
    // measure and drop out of the curve.
    std::vector<double> w_knots;   // strictly increasing prefix measures
    std::vector<double> b_values;  // sigma value carried on each interval
    double acc = 0.0;
    for (std::size_t k = 0; k < sig.size(); ++k) {
        double next = acc + mass[k];
        if (next > acc) {
            w_knots.push_back(next);
            b_values.push_back(sig[k]);
        } else if (!w_knots.empty()) {
            w_knots.back() = next;  // keep the exact running sum
        }
        acc = next;
    }
    std::vector<double> bp(w_knots.begin(), w_knots.end() - 1);
    b_profile_ = StepProfile::from_pieces(std::move(bp), b_values, Side::right);
    last_b_ = b_values.back();
    ext_slope_ = 0.0;
    if (b_values.size() >= 2) {
        std::size_t n = b_values.size();
        double m1 = 0.5 * (w_knots[n - 2] + (n >= 3 ? w_knots[n - 3] : 0.0));
        double m2 = 0.5 * (w_knots[n - 1] + w_knots[n - 2]);
        if (m2 > m1)
            ext_slope_ = std::max((b_values[n - 1] - b_values[n - 2]) / (m2 - m1), 0.0);
    }

    // exact B at the measure knots
    knot_mu_.assign(1, 0.0);
    knot_B_.assign(1, 0.0);
    double Bacc = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < w_knots.size(); ++k) {
        Bacc += b_values[k] * (w_knots[k] - prev);
        knot_mu_.push_back(w_knots[k]);
        knot_B_.push_back(Bacc);
        prev = w_knots[k];
    }
}

SigmaField SigmaField::power_law(CarrierPtr carrier, double m, int d) {
    if (!carrier) throw std::invalid_argument("SigmaField::power_law: null carrier");
    if (!(m > 0.0) || d < 1 || m > static_cast<double>(d))
        throw std::invalid_argument("SigmaField::power_law: need 0 < m <= d");
    const Domain& dom = carrier->domain;
    if (dom.kind != Domain::Kind::TruncatedRd && dom.kind != Domain::Kind::Disc)
        throw std::invalid_argument("SigmaField::power_law: needs a radial domain");
    SigmaField f;
    f.kind_ = SigmaKind::PowerLaw;
    f.carrier_ = std::move(carrier);
    f.m_ = m;
    f.d_ = d;
    f.kd_ = unit_ball_volume(d);
    double R = dom.R;
    f.e_min_ = 0.0;
    f.e_max_ = std::pow(R, m);
    f.total_measure_ = dom.total_measure;
    // sigma atom values: exact band averages of |x|^m over the radial bands
    const auto& c = *f.carrier_;
    f.values_.resize(c.size());
    std::vector<std::uint32_t> idx(c.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(),
              [&](std::uint32_t a, std::uint32_t b) { return c.pos[a][0] < c.pos[b][0]; });
    double W = 0.0;
    for (std::uint32_t i : idx) {
        double w = c.weight[i];
        f.values_[i] = f.mean_b(W, W + w);
        W += w;
    }
    f.finish_common();
    return f;
}

SigmaField SigmaField::radius_squared(CarrierPtr carrier) {
    if (!carrier) throw std::invalid_argument("SigmaField::radius_squared: null carrier");
    if (carrier->domain.kind != Domain::Kind::Disc)
        throw std::invalid_argument("SigmaField::radius_squared: requires a Disc domain");
    SigmaField f;
    f.kind_ = SigmaKind::RadiusSquared;
    f.carrier_ = std::move(carrier);
    const Domain& dom = f.carrier_->domain;
    f.m_ = 2.0;
    f.d_ = 2;
    f.kd_ = std::numbers::pi;
    f.e_min_ = 0.0;
    f.e_max_ = dom.R * dom.R;
    f.total_measure_ = dom.total_measure;
    const auto& c = *f.carrier_;
    f.values_.resize(c.size());
    std::vector<std::uint32_t> idx(c.size());
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(),
              [&](std::uint32_t a, std::uint32_t b) { return c.pos[a][0] < c.pos[b][0]; });
    double W = 0.0;
    for (std::uint32_t i : idx) {
        double w = c.weight[i];
        f.values_[i] = (2.0 * W + w) / (2.0 * std::numbers::pi);  // mean of s/pi over [W, W+w]
        W += w;
    }
    f.finish_common();
    return f;
}

SigmaField SigmaField::coord_x2(CarrierPtr carrier) {
    if (!carrier) throw std::invalid_argument("SigmaField::coord_x2: null carrier");
    if (carrier->domain.kind != Domain::Kind::Rectangle)
        throw std::invalid_argument("SigmaField::coord_x2: requires a Rectangle domain");
    SigmaField f;
    f.kind_ = SigmaKind::CoordX2;
    f.carrier_ = std::move(carrier);
    const Domain& dom = f.carrier_->domain;
    f.L1_ = dom.L1;
    f.e_min_ = 0.0;
    f.e_max_ = dom.L2;
    f.total_measure_ = dom.total_measure;
    const auto& c = *f.carrier_;
    f.values_.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) f.values_[i] = c.pos[i][1];
    f.finish_common();
    return f;
}

SigmaField SigmaField::empirical(CarrierPtr carrier, std::vector<double> values) {
    if (!carrier) throw std::invalid_argument("SigmaField::empirical: null carrier");
    SigmaField f;
    f.kind_ = SigmaKind::Empirical;
    f.carrier_ = std::move(carrier);
    f.values_ = std::move(values);
    f.finish_common();
    f.build_empirical_curves();
    return f;
}

SigmaField SigmaField::stream_function(CarrierPtr carrier, std::vector<double> psi0_values) {
    SigmaField f = empirical(std::move(carrier), std::move(psi0_values));
    f.kind_ = SigmaKind::StreamFunction;
    f.ext_slope_ = 0.0;  // keep b capped by sup psi0
    return f;
}

SigmaField SigmaField::micro_energy(CarrierPtr carrier, std::vector<double> values,
                                    MonotoneCurve a_table, MonotoneCurve a_slope, double e_max) {
    if (!carrier) throw std::invalid_argument("SigmaField::micro_energy: null carrier");
    SigmaField f;
    f.kind_ = SigmaKind::MicroEnergy;
    f.carrier_ = std::move(carrier);
    f.values_ = std::move(values);
    f.e_min_ = 0.0;
    f.e_max_ = e_max;
    f.a_table_ = std::move(a_table);
    f.a_slope_ = std::move(a_slope);
    f.total_measure_ = f.a_table_.y.back();
    // inverse table on a measure grid dense where a is steep
    f.b_table_.x = f.a_table_.y;
    f.b_table_.y = f.a_table_.x;
    f.B_table_.x = f.b_table_.x;
    f.B_table_.y.resize(f.b_table_.x.size());
    double acc = 0.0;
    f.B_table_.y[0] = 0.0;
    for (std::size_t i = 1; i < f.b_table_.x.size(); ++i) {
        acc += 0.5 * (f.b_table_.y[i - 1] + f.b_table_.y[i]) *
               (f.b_table_.x[i] - f.b_table_.x[i - 1]);
        f.B_table_.y[i] = acc;
    }
    f.finish_common();
    return f;
}

SigmaField SigmaField::refine(CarrierPtr refined, std::vector<double> refined_values) const {
    SigmaField f = *this;
    f.carrier_ = std::move(refined);
    f.values_ = std::move(refined_values);
    f.order_.clear();
    f.rank_.clear();
    f.finish_common();
    if (!f.analytic_closed_form() && f.kind_ != SigmaKind::MicroEnergy) f.build_empirical_curves();
    return f;
}

void SigmaField::write_csv(std::ostream& os) const {
    os << "atom_index,sigma_value\n";
    os.precision(17);
    for (std::size_t i = 0; i < values_.size(); ++i) os << i << ',' << values_[i] << '\n';
}

SigmaField SigmaField::read_csv(std::istream& is, CarrierPtr carrier) {
    std::string header;
    if (!std::getline(is, header) || header.rfind("atom_index,sigma_value", 0) != 0)
        throw std::invalid_argument("SigmaField::read_csv: bad header");
    std::vector<double> vals(carrier->size(), 0.0);
    std::vector<bool> seen(carrier->size(), false);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("SigmaField::read_csv: bad row: " + line);
        std::size_t idx = static_cast<std::size_t>(std::stoull(line.substr(0, comma)));
        if (idx >= vals.size())
            throw std::invalid_argument("SigmaField::read_csv: atom index out of range");
        vals[idx] = std::stod(line.substr(comma + 1));
        seen[idx] = true;
    }
    for (bool s : seen)
        if (!s) throw std::invalid_argument("SigmaField::read_csv: missing atom rows");
    return empirical(std::move(carrier), std::move(vals));
}

// ---------------------------------------------------------------------------
// Curve evaluation

double SigmaField::a(double e) const {
    switch (kind_) {
        case SigmaKind::PowerLaw:
        case SigmaKind::RadiusSquared: {
            if (e <= 0.0) return 0.0;
            double ec = std::min(e, e_max_);
            return kd_ * std::pow(ec, static_cast<double>(d_) / m_);
        }
        case SigmaKind::CoordX2: {
            if (e <= 0.0) return 0.0;
            return L1_ * std::min(e, e_max_);
        }
        case SigmaKind::MicroEnergy:
            return a_table_.eval(e);
        default:
            return a_profile_(e);
    }
}

double SigmaField::b(double mu) const {
    if (mu < 0.0) throw std::invalid_argument("SigmaField::b: mu >= 0 required");
    switch (kind_) {
        case SigmaKind::PowerLaw:
        case SigmaKind::RadiusSquared:
            // untruncated pseudo-inverse; beyond the domain measure this is
            // the natural power extension used by the certificates
            return std::pow(mu / kd_, m_ / static_cast<double>(d_));
        case SigmaKind::CoordX2:
            return mu / L1_;
        case SigmaKind::MicroEnergy:
            return mu >= total_measure_ ? b_table_.y.back() : b_table_.eval(mu);
        default:
            return mu >= total_measure_ ? last_b_ + ext_slope_ * (mu - total_measure_)
                                        : b_profile_(mu);
    }
}

double SigmaField::B(double mu) const {
    if (mu < 0.0) throw std::invalid_argument("SigmaField::B: mu >= 0 required");
    switch (kind_) {
        case SigmaKind::PowerLaw:
        case SigmaKind::RadiusSquared: {
            double g = m_ / static_cast<double>(d_);
            return std::pow(kd_, -g) * std::pow(mu, 1.0 + g) / (1.0 + g);
        }
        case SigmaKind::CoordX2:
            return mu * mu / (2.0 * L1_);
        case SigmaKind::MicroEnergy: {
            if (mu <= total_measure_) return B_table_.eval(mu);
            return B_table_.y.back() + b_table_.y.back() * (mu - total_measure_);
        }
        default: {
            // exact piecewise-linear interpolation of the step integral,
            // convex extension past the last knot
            if (mu >= knot_mu_.back()) {
                double d = mu - knot_mu_.back();
                return knot_B_.back() + last_b_ * d + 0.5 * ext_slope_ * d * d;
            }
            auto it = std::upper_bound(knot_mu_.begin(), knot_mu_.end(), mu);
            std::size_t i = static_cast<std::size_t>(it - knot_mu_.begin());
            if (i == 0) return 0.0;
            --i;
            return knot_B_[i] + b_profile_.value_right(knot_mu_[i]) * (mu - knot_mu_[i]);
        }
    }
}

double SigmaField::H(double mu) const {
    if (!(mu > 0.0)) throw std::invalid_argument("SigmaField::H: mu > 0 required");
    switch (kind_) {
        case SigmaKind::PowerLaw:
        case SigmaKind::RadiusSquared: {
            double g = m_ / static_cast<double>(d_);
            return g * std::pow(kd_, -g) * std::pow(mu, g - 1.0);
        }
        case SigmaKind::CoordX2:
            return 1.0 / L1_;
        case SigmaKind::MicroEnergy: {
            // Taylor lower bound H >= (1/2) (a^{-1})'(mu); the quotient's true
            // infimum is sandwiched between this and (a^{-1})'(mu) because
            // a_e0 is increasing and convex. Using the lower bound keeps the
            // resulting K an upper bound of the true constant.
            double s = b(std::min(mu, total_measure_));
            double ap = a_slope_.eval(s);
            if (!(ap > 0.0)) return 0.0;
            return 0.5 / ap;
        }
        default: {
            // exact infimum for a piecewise-linear convex B: the quotient is
            // monotone between knot offsets, so scanning offsets suffices;
            // a geometric grid is added for the contract's sake. Measures that
            // land on a knot up to rounding are snapped to it, otherwise the
            // infimum is legitimately zero inside a linear segment.
            const double snap = 1e-12 * std::max(total_measure_, 1.0);
            auto nearest = std::lower_bound(knot_mu_.begin(), knot_mu_.end(), mu);
            if (nearest != knot_mu_.end() && std::abs(*nearest - mu) <= snap) mu = *nearest;
            else if (nearest != knot_mu_.begin() && std::abs(*(nearest - 1) - mu) <= snap)
                mu = *(nearest - 1);
            double Bmu = B(mu);
            double best = std::numeric_limits<double>::infinity();
            auto quotient = [&](double s) {
                if (!(s > snap) || s > mu) return std::numeric_limits<double>::infinity();
                return (B(mu + s) + B(mu - s) - 2.0 * Bmu) / (s * s);
            };
            bool on_knot = false;
            for (double k : knot_mu_) {
                double off = std::abs(mu - k);
                if (off <= snap) {
                    on_knot = true;
                    continue;
                }
                best = std::min(best, quotient(off));
                double off2 = k - mu;  // knots to the right reached by mu + s
                if (off2 > snap) best = std::min(best, quotient(off2));
            }
            best = std::min(best, quotient(mu));
            if (!on_knot) return 0.0;  // interior of a linear segment
            double s = mu * 1e-6;
            for (int i = 0; i < 64; ++i) {
                if (s > snap) best = std::min(best, quotient(s));
                s *= std::pow(1e6, 1.0 / 63.0);
            }
            if (!std::isfinite(best)) return 0.0;
            return std::max(best, 0.0);
        }
    }
}

double SigmaField::mean_b(double s0, double s1) const {
    if (!(s1 > s0)) return b(std::max(s0, 0.0));
    switch (kind_) {
        case SigmaKind::PowerLaw:
        case SigmaKind::RadiusSquared: {
            double g = m_ / static_cast<double>(d_);
            return std::pow(kd_, -g) * (std::pow(s1, 1.0 + g) - std::pow(s0, 1.0 + g)) /
                   ((1.0 + g) * (s1 - s0));
        }
        case SigmaKind::CoordX2:
            return (s0 + s1) / (2.0 * L1_);
        case SigmaKind::MicroEnergy:
            return (B(s1) - B(s0)) / (s1 - s0);
        default: {
            // exact: constant pieces evaluated without a divide when the
            // interval sits inside one piece
            double v0 = b_profile_.value_right(s0);
            double v1 = b_profile_.value_left(std::min(s1, total_measure_));
            if (v0 == v1 && s1 <= total_measure_) return v0;
            if (s0 >= total_measure_) return last_b_;
            return (B(s1) - B(s0)) / (s1 - s0);
        }
    }
}

}  // namespace rlab
