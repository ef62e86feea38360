#include "doctest.h"
#include "rlab/carriers.hpp"
#include "rlab/convexity.hpp"
#include "rlab/rng.hpp"

#include <cmath>
#include <numbers>

using namespace rlab;

static constexpr double kPi = std::numbers::pi;

TEST_CASE("B closed forms: disc and strip") {
    auto disc = make_disc_radius2(32, 1.0);
    for (double s : {0.1, 0.5, 1.0, 2.0})
        CHECK(disc.sigma.B(s) == doctest::Approx(s * s / (2.0 * kPi)).epsilon(1e-14));
    CHECK(disc.sigma.B(0.0) == 0.0);

    auto strip = make_strip_x2(32, 2.0, 1.0);
    for (double s : {0.1, 0.5, 1.0})
        CHECK(strip.sigma.B(s) == doctest::Approx(s * s / (2.0 * 2.0)).epsilon(1e-14));
    CHECK(strip.sigma.B(0.0) == 0.0);

    auto pl = make_powerlaw_shells(32, 1.0, 3, 2.0, 1.0);
    double kd = unit_ball_volume(3);
    for (double s : {0.2, 1.0}) {
        double expect = (3.0 / 4.0) * std::pow(kd, -1.0 / 3.0) * std::pow(s, 4.0 / 3.0);
        CHECK(pl.sigma.B(s) == doctest::Approx(expect).epsilon(1e-13));
    }
}

TEST_CASE("H closed forms") {
    auto disc = make_disc_radius2(32, 1.5);
    for (double mu : {0.1, 1.0, 3.0}) CHECK(disc.sigma.H(mu) == doctest::Approx(1.0 / kPi));
    auto strip = make_strip_x2(32, 2.5, 1.0);
    for (double mu : {0.1, 1.0}) CHECK(strip.sigma.H(mu) == doctest::Approx(1.0 / 2.5));
    // m = d consistency: H == 1/K_d, constant
    auto pl = make_powerlaw_shells(32, 2.0, 2, 2.0, 1.0);
    double kd = unit_ball_volume(2);
    for (double mu : {0.3, 1.0, 2.0}) CHECK(pl.sigma.H(mu) == doctest::Approx(1.0 / kd));
    // general power law
    auto pl13 = make_powerlaw_shells(32, 1.0, 3, 2.0, 1.0);
    double kd3 = unit_ball_volume(3);
    double mu = 0.7;
    double expect = (1.0 / 3.0) * std::pow(kd3, -1.0 / 3.0) * std::pow(mu, 1.0 / 3.0 - 1.0);
    CHECK(pl13.sigma.H(mu) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("b_sigma_curve is discretely convex") {
    auto disc = make_disc_radius2(64, 1.0);
    ConvexCurve c = b_sigma_curve(disc.sigma);
    CHECK(c.discretely_convex());
    CHECK(c.eval(0.0) == doctest::Approx(0.0));
    // exact at the sample knots, chord-accurate between them
    double knot = disc.sigma.total_measure() * 0.5;
    CHECK(c.eval(knot) == doctest::Approx(disc.sigma.B(knot)).epsilon(1e-14));
    CHECK(c.eval(1.0) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(5e-4));

    auto base = make_disc_shells(32, 1.0);
    RandomStream rs(4);
    std::vector<double> sig(32);
    for (auto& s : sig) s = rs.uniform(0.0, 2.0);
    SigmaField emp = SigmaField::empirical(base, sig);
    ConvexCurve ce = b_sigma_curve(emp);
    CHECK(ce.discretely_convex());
    // exact match with the exact integral of the step b
    for (double m : {0.3, 1.1, 2.0})
        CHECK(ce.eval(m) == doctest::Approx(emp.B(m)).epsilon(1e-13));
}

TEST_CASE("empirical H agrees with the closed form on a fine atomization") {
    // power-law sigma on a fine stratified carrier spanning the whole domain
    for (auto [m, d] : {std::pair{1.0, 2}, std::pair{2.0, 3}}) {
        auto sc = make_powerlaw_shells(512, m, d, 1.0, 1.0);
        SigmaField emp = SigmaField::empirical(sc.carrier, sc.sigma.values());
        double M = sc.carrier->total_weight;
        for (double frac : {0.1, 0.5, 0.9}) {
            // evaluate at the nearest measure knot (empirical H is designed
            // for achieved measures)
            double mu = std::round(frac * 512.0) / 512.0 * M;
            double h_emp = emp.H(mu);
            double h_cf = sc.sigma.H(mu);
            CHECK(h_emp == doctest::Approx(h_cf).epsilon(0.02));
        }
    }
}

TEST_CASE("closed-form H equals a brute-force infimum of the quotient") {
    // for the pure power-law B the infimum of [B(mu+s)+B(mu-s)-2B(mu)]/s^2
    // over s in (0, mu] is (m/d) K_d^{-m/d} mu^{m/d-1}
    for (auto [m, d] : {std::pair{0.5, 2}, std::pair{1.0, 2}, std::pair{1.0, 3},
                        std::pair{2.0, 3}, std::pair{2.0, 2}}) {
        double g = m / d;
        double kd = unit_ball_volume(d);
        auto B = [&](double x) { return std::pow(kd, -g) * std::pow(x, 1.0 + g) / (1.0 + g); };
        for (double mu : {0.3, 1.0, 2.7}) {
            double inf = std::numeric_limits<double>::infinity();
            for (int i = 1; i <= 4000; ++i) {
                double s = mu * i / 4000.0;
                inf = std::min(inf, (B(mu + s) + B(mu - s) - 2.0 * B(mu)) / (s * s));
            }
            double closed = g * std::pow(kd, -g) * std::pow(mu, g - 1.0);
            CHECK(inf == doctest::Approx(closed).epsilon(1e-5));
            // the sampled inf only undercuts by cancellation noise at small s
            CHECK(inf >= closed * (1.0 - 1e-6));
        }
    }
}

TEST_CASE("K constant: disc, strip, and the Jensen bound") {
    auto disc = make_disc_radius2(64, 1.0);
    RandomStream rs(12);
    AtomicFunction q = random_bumps(rs, disc.carrier);
    KConstant K = k_constant(q, disc.sigma);
    CHECK(K.method == KConstant::Method::closed_form);
    CHECK(K.value == doctest::Approx(4.0 * kPi * sup_value(q)).epsilon(1e-12));

    auto strip = make_strip_x2(64, 1.7, 1.0);
    AtomicFunction qs = random_bumps(rs, strip.carrier);
    KConstant Ks = k_constant(qs, strip.sigma);
    CHECK(Ks.value == doctest::Approx(4.0 * 1.7 * sup_value(qs)).epsilon(1e-12));

    // Jensen chain for |x|^m
    for (auto [m, d] : {std::pair{1.0, 2}, std::pair{2.0, 3}}) {
        auto pl = make_powerlaw_shells(64, m, d, 2.0, 1.0);
        for (int t = 0; t < 25; ++t) {
            AtomicFunction f = random_bumps(rs, pl.carrier);
            if (l1_norm(f) <= 0.0) continue;
            KConstant Kf = k_constant(f, pl.sigma);
            double kd = unit_ball_volume(d);
            double bound = 4.0 * (d / m) * std::pow(kd, m / d) *
                           std::pow(sup_value(f), m / d) *
                           std::pow(l1_norm(f), 1.0 - m / d);
            CHECK(Kf.value <= bound * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("K rejects the zero function") {
    auto disc = make_disc_radius2(8, 1.0);
    AtomicFunction z(disc.carrier, std::vector<double>(8, 0.0));
    CHECK_THROWS(k_constant(z, disc.sigma));
}

TEST_CASE("empirical K is finite at achieved measures and bounded by theory") {
    auto base = make_disc_shells(64, 1.0);
    RandomStream rs(3);
    std::vector<double> sig(64);
    for (auto& s : sig) s = rs.uniform(0.0, 1.0);
    SigmaField emp = SigmaField::empirical(base, sig);
    for (int t = 0; t < 10; ++t) {
        AtomicFunction q = random_bumps(rs, base);
        if (l1_norm(q) <= 0.0) continue;
        KConstant K = k_constant(q, emp);
        CHECK(K.method == KConstant::Method::piecewise_exact);
        CHECK(K.value > 0.0);
        CHECK(std::isfinite(K.value));
        CHECK(K.h_floor > 0.0);
    }
}

TEST_CASE("h_sigma rejects out-of-range mu") {
    auto disc = make_disc_radius2(8, 1.0);
    CHECK_THROWS(h_sigma(disc.sigma, 0.0));
    CHECK_THROWS(h_sigma(disc.sigma, -1.0));
}
