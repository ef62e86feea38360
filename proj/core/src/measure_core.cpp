#include "rlab/measure_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rlab {

double unit_ball_volume(int d) {
    if (d < 1) throw std::invalid_argument("unit_ball_volume: d >= 1 required");
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

Domain Domain::disc(double R) {
    if (!(R > 0)) throw std::invalid_argument("Domain::disc: R > 0 required");
    Domain d;
    d.kind = Kind::Disc;
    d.R = R;
    d.dim = 2;
    d.total_measure = std::numbers::pi * R * R;
    return d;
}

Domain Domain::rectangle(double L1, double L2, bool truncated) {
    if (!(L1 > 0 && L2 > 0)) throw std::invalid_argument("Domain::rectangle: L1, L2 > 0 required");
    Domain d;
    d.kind = Kind::Rectangle;
    d.L1 = L1;
    d.L2 = L2;
    d.dim = 2;
    d.truncated = truncated;
    d.total_measure = L1 * L2;
    return d;
}

Domain Domain::truncated_rd(int dd, double cutoff_radius) {
    if (!(cutoff_radius > 0)) throw std::invalid_argument("Domain::truncated_rd: cutoff > 0 required");
    Domain d;
    d.kind = Kind::TruncatedRd;
    d.R = cutoff_radius;
    d.dim = dd;
    d.truncated = true;
    d.total_measure = unit_ball_volume(dd) * std::pow(cutoff_radius, dd);
    return d;
}

Domain Domain::phase_space_radial(double r_max, double v_max) {
    if (!(r_max > 0 && v_max > 0))
        throw std::invalid_argument("Domain::phase_space_radial: r_max, v_max > 0 required");
    Domain d;
    d.kind = Kind::PhaseSpaceRadial;
    d.r_max = r_max;
    d.v_max = v_max;
    d.dim = 6;
    d.truncated = true;
    const double c = 4.0 * std::numbers::pi / 3.0;
    d.total_measure = c * r_max * r_max * r_max * c * v_max * v_max * v_max;
    return d;
}

CarrierPtr make_carrier(Domain domain, std::vector<std::array<double, 2>> pos,
                        std::vector<double> weight) {
    if (pos.size() != weight.size())
        throw std::invalid_argument("make_carrier: pos/weight size mismatch");
    auto c = std::make_shared<Carrier>();
    c->domain = domain;
    c->pos = std::move(pos);
    c->weight = std::move(weight);
    double tot = 0.0;
    for (double w : c->weight) {
        if (!(w > 0)) throw std::invalid_argument("make_carrier: weights must be positive");
        tot += w;
    }
    c->total_weight = tot;
    if (tot > domain.total_measure * (1.0 + 1e-12))
        throw std::invalid_argument("make_carrier: atom mass exceeds domain measure");
    return c;
}

bool co_atomic(const CarrierPtr& a, const CarrierPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->size() != b->size()) return false;
    return a->weight == b->weight && a->pos == b->pos;
}

AtomicFunction::AtomicFunction(CarrierPtr carrier, std::vector<double> values)
    : carrier_(std::move(carrier)), values_(std::move(values)) {
    if (!carrier_) throw std::invalid_argument("AtomicFunction: null carrier");
    if (values_.size() != carrier_->size())
        throw std::invalid_argument("AtomicFunction: value count != atom count");
    for (double v : values_)
        if (!(v >= 0.0)) throw std::invalid_argument("AtomicFunction: values must be >= 0");
}

StepProfile mu_of(const AtomicFunction& f) {
    const std::size_t n = f.size();
    std::vector<std::pair<double, double>> vw;
    vw.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        if (f.value(i) > 0.0) vw.emplace_back(f.value(i), f.weight(i));
    if (vw.empty()) return StepProfile{};
    // canonical order: value desc then weight desc, so equal multisets give
    // bit-identical accumulation
    std::sort(vw.begin(), vw.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    std::vector<double> bp;    // ascending thresholds (distinct values)
    std::vector<double> mass;  // mass strictly above each threshold-interval
    double cum = 0.0;
    std::size_t i = 0;
    std::vector<double> rev_bp, rev_mass;  // built in descending order
    while (i < vw.size()) {
        double v = vw[i].first;
        while (i < vw.size() && vw[i].first == v) {
            cum += vw[i].second;
            ++i;
        }
        rev_bp.push_back(v);
        rev_mass.push_back(cum);  // mu on [next_lower_value, v)
    }
    bp.assign(rev_bp.rbegin(), rev_bp.rend());
    std::vector<double> vals(bp.size() + 1);
    for (std::size_t k = 0; k < bp.size(); ++k) vals[k] = rev_mass[rev_mass.size() - 1 - k];
    vals.back() = 0.0;
    return StepProfile::from_pieces(std::move(bp), std::move(vals), Side::right);
}

StepProfile sharp_of(const StepProfile& mu) {
    if (!mu.nonincreasing(0.0))
        throw std::invalid_argument("sharp_of: profile must be nonincreasing");
    if (mu.empty()) return StepProfile{};
    const auto& t = mu.breakpoints();   // ascending value thresholds
    const auto& m = mu.piece_values();  // nonincreasing masses, m.back() = tail
    const std::size_t n = t.size();
    // q_sharp(s) = inf{ t >= 0 : mu(t) <= s }: equal to t[i] on [m[i+1], m[i])
    // and 0 beyond m[0]. Coinciding masses merge.
    std::vector<double> sp;
    std::vector<double> vals;
    sp.reserve(n + 1);
    vals.reserve(n + 2);
    vals.push_back(t.back());  // left tail (s below the smallest mass): sup value
    for (std::size_t i = n; i-- > 0;) {
        if (m[i] > m[i + 1]) {
            sp.push_back(m[i + 1]);
            vals.push_back(t[i]);
        }
    }
    if (sp.empty() || m[0] > sp.back()) {
        sp.push_back(m[0]);
        vals.push_back(0.0);
    } else {
        vals.back() = 0.0;
    }
    return StepProfile::from_pieces(std::move(sp), std::move(vals), Side::right);
}

StepProfile beta_of(const AtomicFunction& f, const AtomicFunction& g) {
    if (!f.co_atomic_with(g)) throw std::invalid_argument("beta_of: non-co-atomic inputs");
    struct Ev {
        double s;
        double dw;
    };
    std::vector<Ev> ev;
    ev.reserve(2 * f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double a = f.value(i), b = g.value(i);
        if (a < b) {
            ev.push_back({a, f.weight(i)});
            ev.push_back({b, -f.weight(i)});
        }
    }
    if (ev.empty()) return StepProfile{};
    std::sort(ev.begin(), ev.end(), [](const Ev& x, const Ev& y) {
        if (x.s != y.s) return x.s < y.s;
        return x.dw < y.dw;  // removals first at equal s keeps sums tight
    });
    std::vector<double> bp, vals;
    vals.push_back(0.0);
    double cur = 0.0;
    std::size_t i = 0;
    while (i < ev.size()) {
        double s = ev[i].s;
        while (i < ev.size() && ev[i].s == s) {
            cur += ev[i].dw;
            ++i;
        }
        bp.push_back(s);
        vals.push_back(cur);
    }
    vals.back() = 0.0;  // guard against rounding residue in the final plateau
    return StepProfile::from_pieces(std::move(bp), std::move(vals), Side::right);
}

double lp_norm(const AtomicFunction& f, double p) {
    if (std::isinf(p)) return sup_value(f);
    if (p < 1.0) throw std::invalid_argument("lp_norm: p >= 1 required");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f.weight(i) * std::pow(f.value(i), p);
    return std::pow(acc, 1.0 / p);
}

double l1_norm(const AtomicFunction& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f.weight(i) * f.value(i);
    return acc;
}

double l1_distance(const AtomicFunction& f, const AtomicFunction& g) {
    if (!f.co_atomic_with(g)) throw std::invalid_argument("l1_distance: non-co-atomic inputs");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
        acc += f.weight(i) * std::abs(f.value(i) - g.value(i));
    return acc;
}

double sup_value(const AtomicFunction& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, v);
    return m;
}

double rearranged_l1_distance(const AtomicFunction& f, const AtomicFunction& g) {
    StepProfile fs = sharp_of(mu_of(f));
    StepProfile gs = sharp_of(mu_of(g));
    if (fs.empty() && gs.empty()) return 0.0;
    double hi = 0.0;
    if (!fs.empty()) hi = std::max(hi, fs.max_breakpoint());
    if (!gs.empty()) hi = std::max(hi, gs.max_breakpoint());
    return StepProfile::integrate_combined(
        fs, gs, [](double a, double b) { return std::abs(a - b); }, 0.0, hi);
}

double sharp_pairing(const AtomicFunction& f, const AtomicFunction& g) {
    StepProfile fs = sharp_of(mu_of(f));
    StepProfile gs = sharp_of(mu_of(g));
    if (fs.empty() || gs.empty()) return 0.0;
    double hi = std::min(fs.max_breakpoint(), gs.max_breakpoint());
    return StepProfile::integrate_combined(
        fs, gs, [](double a, double b) { return a * b; }, 0.0, hi);
}

double atom_pairing(const AtomicFunction& f, const AtomicFunction& g) {
    if (!f.co_atomic_with(g)) throw std::invalid_argument("atom_pairing: non-co-atomic inputs");
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += f.weight(i) * f.value(i) * g.value(i);
    return acc;
}

void write_atoms_csv(std::ostream& os, const AtomicFunction& f) {
    const Carrier& c = *f.carrier();
    const bool phase = c.domain.kind == Domain::Kind::PhaseSpaceRadial;
    os << (phase ? "x1,x2,v1,v2,v3,weight,value\n" : "x1,x2,weight,value\n");
    os.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (phase)
            os << c.pos[i][0] << ",0,"<< c.pos[i][1] << ",0,0," << c.weight[i] << ','
               << f.value(i) << '\n';
        else
            os << c.pos[i][0] << ',' << c.pos[i][1] << ',' << c.weight[i] << ',' << f.value(i)
               << '\n';
    }
}

std::string atoms_csv(const AtomicFunction& f) {
    std::ostringstream ss;
    write_atoms_csv(ss, f);
    return ss.str();
}

AtomicFunction read_atoms_csv(std::istream& is, const Domain& domain) {
    std::string header;
    if (!std::getline(is, header)) throw std::invalid_argument("read_atoms_csv: empty input");
    const bool phase = header.rfind("x1,x2,v1", 0) == 0;
    if (!phase && header.rfind("x1,x2,weight,value", 0) != 0)
        throw std::invalid_argument("read_atoms_csv: unrecognized header: " + header);
    std::vector<std::array<double, 2>> pos;
    std::vector<double> weight, values;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<double> cols;
        std::string cell;
        while (std::getline(row, cell, ',')) cols.push_back(std::stod(cell));
        const std::size_t expect = phase ? 7 : 4;
        if (cols.size() != expect)
            throw std::invalid_argument("read_atoms_csv: bad column count in: " + line);
        if (phase)
            pos.push_back({cols[0], cols[2]});
        else
            pos.push_back({cols[0], cols[1]});
        weight.push_back(cols[expect - 2]);
        values.push_back(cols[expect - 1]);
    }
    CarrierPtr c = make_carrier(domain, std::move(pos), std::move(weight));
    return AtomicFunction(std::move(c), std::move(values));
}

}  // namespace rlab
