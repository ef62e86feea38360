#pragma once

// Discrete measure-space representation of nonnegative integrable functions:
// a carrier of weighted atoms plus one value per atom. All measure
// computations are exact finite sums, so equimeasurability statements can be
// tested as exact equalities.

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "rlab/step_profile.hpp"

namespace rlab {

struct Domain {
    enum class Kind { Disc, Rectangle, TruncatedRd, PhaseSpaceRadial };
    Kind kind = Kind::Disc;

    double R = 0.0;        // Disc / TruncatedRd cutoff radius
    double L1 = 0.0;       // Rectangle
    double L2 = 0.0;       // Rectangle height (cutoff when truncated)
    double r_max = 0.0;    // PhaseSpaceRadial
    double v_max = 0.0;    // PhaseSpaceRadial
    int dim = 2;           // ambient dimension (TruncatedRd); 2 for Disc/Rectangle, 6 for phase space
    bool truncated = false;

    double total_measure = 0.0;

    static Domain disc(double R);
    static Domain rectangle(double L1, double L2, bool truncated = false);
    static Domain truncated_rd(int d, double cutoff_radius);
    static Domain phase_space_radial(double r_max, double v_max);
};

// Measure of the unit ball in R^d.
double unit_ball_volume(int d);

// Shared atom structure: positions (interpreted per domain kind), positive
// weights (= cell measures). Functions on the same carrier are "co-atomic".
struct Carrier {
    Domain domain;
    std::vector<std::array<double, 2>> pos;  // (x1,x2), (r,0) or (r,v) per kind
    std::vector<double> weight;
    double total_weight = 0.0;

    std::size_t size() const { return weight.size(); }
};

using CarrierPtr = std::shared_ptr<const Carrier>;

CarrierPtr make_carrier(Domain domain, std::vector<std::array<double, 2>> pos,
                        std::vector<double> weight);

bool co_atomic(const CarrierPtr& a, const CarrierPtr& b);

class AtomicFunction {
public:
    AtomicFunction() = default;
    AtomicFunction(CarrierPtr carrier, std::vector<double> values);

    const CarrierPtr& carrier() const { return carrier_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& mutable_values() { return values_; }
    std::size_t size() const { return values_.size(); }

    double value(std::size_t i) const { return values_[i]; }
    double weight(std::size_t i) const { return carrier_->weight[i]; }

    bool co_atomic_with(const AtomicFunction& other) const {
        return rlab::co_atomic(carrier_, other.carrier_);
    }

private:
    CarrierPtr carrier_;
    std::vector<double> values_;
};

// Distribution function mu_f(t) = sum of weights of atoms with value > t.
// Nonincreasing, right-continuous, zero beyond the maximum value. The
// accumulation order is canonical (value desc, weight desc) so equal
// (value, weight) multisets produce bit-identical profiles.
StepProfile mu_of(const AtomicFunction& f);

// Pseudo-inverse q_sharp(s) = inf{t >= 0 : mu(t) <= s}. Rejects profiles that
// are not nonincreasing.
StepProfile sharp_of(const StepProfile& mu);

// beta_{f,g}(s) = meas{ f <= s < g } as an exact step profile.
StepProfile beta_of(const AtomicFunction& f, const AtomicFunction& g);

// L^p norm via exact atom sums; p = inf returns the max value. p < 1 rejected.
double lp_norm(const AtomicFunction& f, double p);

double l1_norm(const AtomicFunction& f);
double l1_distance(const AtomicFunction& f, const AtomicFunction& g);
double sup_value(const AtomicFunction& f);

// || f* - g* ||_L1 computed as the exact integral of |f_sharp - g_sharp|.
double rearranged_l1_distance(const AtomicFunction& f, const AtomicFunction& g);

// Hardy-Littlewood pairing: integral of f_sharp * g_sharp over measure space,
// an upper bound for the atom sum of f*g.
double sharp_pairing(const AtomicFunction& f, const AtomicFunction& g);
double atom_pairing(const AtomicFunction& f, const AtomicFunction& g);

// CSV: header `x1,x2[,v1,v2,v3],weight,value`, one atom per row.
void write_atoms_csv(std::ostream& os, const AtomicFunction& f);
std::string atoms_csv(const AtomicFunction& f);
// Rebuild an atomic function from the CSV onto a fresh carrier of `domain`.
AtomicFunction read_atoms_csv(std::istream& is, const Domain& domain);

}  // namespace rlab
