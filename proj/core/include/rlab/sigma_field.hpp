#pragma once

// Generalized radial variables sigma and their measure-theoretic companions:
// the Jacobian a_sigma(e) = meas{sigma < e}, its pseudo-inverse b_sigma, the
// convex primitive B_sigma and the convexity modulus H_sigma. Analytic
// families carry closed forms; empirical fields carry exact step curves built
// from the atoms.

#include <cstdint>
#include <optional>
#include <vector>

#include "rlab/measure_core.hpp"
#include "rlab/step_profile.hpp"

namespace rlab {

enum class SigmaKind { PowerLaw, CoordX2, RadiusSquared, MicroEnergy, StreamFunction, Empirical };

// Piecewise-linear monotone table (used by the MicroEnergy family, whose
// Jacobian comes from a radial quadrature rather than a closed form).
struct MonotoneCurve {
    std::vector<double> x;
    std::vector<double> y;

    double eval(double q) const;             // clamped linear interpolation
    double inverse(double q) const;          // requires nondecreasing y
    double slope_at(double q) const;         // slope of the containing segment
    double integral_to(double q) const;      // exact integral of the interpolant from x.front()
    double mean_over(double a, double b) const;
};

class SigmaField {
public:
    SigmaField() = default;  // empty; populate through the factories

    static SigmaField power_law(CarrierPtr carrier, double m, int d);
    static SigmaField coord_x2(CarrierPtr carrier);
    static SigmaField radius_squared(CarrierPtr carrier);
    static SigmaField empirical(CarrierPtr carrier, std::vector<double> values);
    static SigmaField stream_function(CarrierPtr carrier, std::vector<double> psi0_values);
    // a_table maps energy -> measure, a_slope its derivative; e_max is the
    // right end of the invertible range.
    static SigmaField micro_energy(CarrierPtr carrier, std::vector<double> values,
                                   MonotoneCurve a_table, MonotoneCurve a_slope, double e_max);

    SigmaKind kind() const { return kind_; }
    bool analytic_closed_form() const {
        return kind_ == SigmaKind::PowerLaw || kind_ == SigmaKind::CoordX2 ||
               kind_ == SigmaKind::RadiusSquared;
    }

    const CarrierPtr& carrier() const { return carrier_; }
    const std::vector<double>& values() const { return values_; }
    double value(std::size_t i) const { return values_[i]; }

    double e_min() const { return e_min_; }
    double e_max() const { return e_max_; }
    double total_measure() const { return total_measure_; }

    double power_m() const { return m_; }
    int power_d() const { return d_; }

    // a_sigma(e) = meas{sigma < e}. Empirical kinds evaluate the exact
    // left-continuous step; analytic kinds the closed form (with domain
    // truncation where the domain is finite).
    double a(double e) const;

    // b_sigma(mu) = sup{ t < e_max : a_sigma(t) <= mu }. Beyond the total
    // measure, empirical kinds extend by the last value; the analytic
    // power-law/linear families extend by their untruncated closed form.
    double b(double mu) const;

    // B_sigma(mu) = integral of b over [0, mu], convex.
    double B(double mu) const;

    // Convexity modulus H_sigma(mu) = inf over s in (0, mu] of the symmetric
    // second difference quotient of B_sigma. Closed form for the analytic
    // families; exact knot-offset minimum for step-built fields (the quotient
    // of a piecewise-linear convex function attains its infimum at segment
    // endpoints); Taylor lower bound for MicroEnergy.
    double H(double mu) const;

    // Mean of b over a measure interval; used to assign exact band-average
    // sigma values to atoms and split pieces.
    double mean_b(double s0, double s1) const;

    // Total weight caught in sigma-value ties (discrete violation of the
    // zero-level-set hypothesis); reported as a certificate caveat.
    double tie_mass() const { return tie_mass_; }

    // Atom indices sorted by (sigma value, construction index).
    const std::vector<std::uint32_t>& ascending_order() const { return order_; }
    // Rank of each atom in that order.
    const std::vector<std::uint32_t>& ascending_rank() const { return rank_; }

    // Empirical step curves (empty for closed-form analytic kinds).
    const StepProfile& a_profile() const { return a_profile_; }
    const StepProfile& b_profile() const { return b_profile_; }

    // Re-host the field on a refined carrier produced by atom splitting.
    SigmaField refine(CarrierPtr refined, std::vector<double> refined_values) const;

    // Empirical-field CSV: `atom_index,sigma_value`, one atom per row.
    void write_csv(std::ostream& os) const;
    static SigmaField read_csv(std::istream& is, CarrierPtr carrier);

private:
    void finish_common();
    void build_empirical_curves();

    SigmaKind kind_ = SigmaKind::Empirical;
    CarrierPtr carrier_;
    std::vector<double> values_;
    double e_min_ = 0.0;
    double e_max_ = 0.0;
    double total_measure_ = 0.0;
    double tie_mass_ = 0.0;

    // PowerLaw parameters (also used by RadiusSquared as m=2,d=2 and by
    // CoordX2 through L1)
    double m_ = 0.0;
    int d_ = 0;
    double kd_ = 0.0;
    double L1_ = 0.0;

    std::vector<std::uint32_t> order_;
    std::vector<std::uint32_t> rank_;

    // empirical machinery
    StepProfile a_profile_;
    StepProfile b_profile_;
    std::vector<double> knot_mu_;  // prefix measures 0=W0 < ... < Wn
    std::vector<double> knot_B_;   // exact integrals of b at the knots
    double last_b_ = 0.0;
    // slope of the convex extension of b beyond the total measure. Generic
    // empirical fields continue with the last secant slope (the discrete
    // counterpart of the analytic families' untruncated forms); stream
    // functions stay capped at the last value because the certificates bound
    // b by the sup of psi0.
    double ext_slope_ = 0.0;

    // micro-energy machinery
    MonotoneCurve a_table_;
    MonotoneCurve a_slope_;
    MonotoneCurve b_table_;   // inverse of a_table_
    MonotoneCurve B_table_;   // cumulative integral of b_table_
};

}  // namespace rlab
