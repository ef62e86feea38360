#include "doctest.h"
#include "rlab/carriers.hpp"
#include "rlab/certify.hpp"
#include "rlab/rearrange.hpp"
#include "rlab/rng.hpp"

#include <cmath>
#include <numbers>

using namespace rlab;

static constexpr double kPi = std::numbers::pi;

TEST_CASE("analytic Jacobians") {
    auto disc = make_disc_radius2(16, 2.0);
    // a(e) = pi min(e, R^2)
    CHECK(disc.sigma.a(1.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(disc.sigma.a(4.0) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(disc.sigma.a(9.0) == doctest::Approx(4.0 * kPi).epsilon(1e-15));
    CHECK(disc.sigma.a(-1.0) == 0.0);

    auto strip = make_strip_x2(16, 3.0, 2.0);
    CHECK(strip.sigma.a(1.0) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(strip.sigma.a(5.0) == doctest::Approx(6.0).epsilon(1e-15));

    auto pl = make_powerlaw_shells(16, 1.0, 2, 2.0, 1.0);
    // a(s) = K_d s^{d/m} = pi s^2
    CHECK(pl.sigma.a(0.5) == doctest::Approx(kPi * 0.25).epsilon(1e-14));
    CHECK(pl.sigma.b(kPi * 0.25) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("power-law parameter validation") {
    auto c = make_disc_shells(8, 1.0);
    CHECK_THROWS(SigmaField::power_law(c, -1.0, 2));
    CHECK_THROWS(SigmaField::power_law(c, 3.0, 2));  // m > d
    CHECK_THROWS(SigmaField::power_law(nullptr, 1.0, 2));
}

TEST_CASE("sigma-rearrangement: rectangle worked example") {
    auto sc = make_strip_x2(4, 1.0, 2.0);
    AtomicFunction f(sc.carrier, {1.0, 3.0, 0.0, 2.0});
    AtomicFunction r = sigma_rearrange(f, sc.sigma);
    CHECK(r.value(0) == 3.0);
    CHECK(r.value(1) == 2.0);
    CHECK(r.value(2) == 1.0);
    CHECK(r.value(3) == 0.0);
}

TEST_CASE("already nonincreasing in sigma: identity atom-by-atom") {
    auto sc = make_strip_x2(6, 1.0, 1.0);
    AtomicFunction f(sc.carrier, {5.0, 4.0, 4.0, 2.5, 1.0, 0.0});
    AtomicFunction r = sigma_rearrange(f, sc.sigma);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(r.value(i) == f.value(i));
}

TEST_CASE("equimeasurability is bit-exact") {
    auto sc = make_disc_radius2(128, 1.0);
    RandomStream rs(99);
    for (int trial = 0; trial < 100; ++trial) {
        AtomicFunction f = random_bumps(rs, sc.carrier);
        AtomicFunction r = sigma_rearrange(f, sc.sigma);
        CHECK(mu_of(r) == mu_of(f));
    }
}

TEST_CASE("idempotence") {
    auto sc = make_powerlaw_shells(64, 1.0, 2, 2.0, 1.0);
    RandomStream rs(5);
    for (int trial = 0; trial < 20; ++trial) {
        AtomicFunction f = random_bumps(rs, sc.carrier);
        AtomicFunction r1 = sigma_rearrange(f, sc.sigma);
        AtomicFunction r2 = sigma_rearrange(r1, sc.sigma);
        for (std::size_t i = 0; i < r1.size(); ++i) CHECK(r1.value(i) == r2.value(i));
    }
}

TEST_CASE("schwarz rearrangement") {
    auto sc = make_disc_radius2(4, 1.0);
    AtomicFunction f(sc.carrier, {0.0, 2.0, 1.0, 3.0});
    AtomicFunction star = schwarz_rearrange(f);
    CHECK(star.value(0) == 3.0);
    CHECK(star.value(1) == 2.0);
    CHECK(star.value(2) == 1.0);
    CHECK(star.value(3) == 0.0);
    // radial nonincreasing data is untouched
    AtomicFunction g(sc.carrier, {4.0, 3.0, 2.0, 1.0});
    AtomicFunction gs = schwarz_rearrange(g);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(gs.value(i) == g.value(i));
    // Lp preservation
    for (double p : {1.0, 2.0}) CHECK(lp_norm(star, p) == doctest::Approx(lp_norm(f, p)));
    CHECK(sup_value(star) == sup_value(f));
    // unsupported domain
    auto strip = make_strip_x2(4, 1.0, 1.0);
    AtomicFunction h(strip.carrier, {1.0, 0.0, 0.0, 0.0});
    CHECK_THROWS(schwarz_rearrange(h));
}

TEST_CASE("HL positivity per sigma family") {
    RandomStream rs(31337);
    auto run = [&](const StratifiedCarrier& sc, int trials) {
        for (int t = 0; t < trials; ++t) {
            AtomicFunction f = random_bumps(rs, sc.carrier);
            double gap = hl_theta_gap(f, sc.sigma);
            double bound = -1e-12 * (sc.sigma.e_max() + 1.0) * l1_norm(f);
            CHECK(gap >= bound);
        }
    };
    run(make_disc_radius2(64, 1.0), 120);
    run(make_strip_x2(64, 1.0, 2.0), 120);
    run(make_powerlaw_shells(64, 1.0, 2, 2.0, 1.0), 120);
    run(make_powerlaw_shells(64, 2.0, 3, 2.0, 1.0), 120);
}

TEST_CASE("empirical sigma: ties are diagnosed") {
    auto base = make_disc_shells(4, 1.0);
    SigmaField sig = SigmaField::empirical(base, {0.5, 0.5, 1.0, 2.0});
    const double w = base->weight[0];
    CHECK(sig.tie_mass() == doctest::Approx(2.0 * w));
    SigmaField clean = SigmaField::empirical(base, {0.5, 0.6, 1.0, 2.0});
    CHECK(clean.tie_mass() == 0.0);
}

TEST_CASE("empirical a and b are exact pseudo-inverses at knots") {
    auto base = make_disc_shells(16, 1.0);
    RandomStream rs(8);
    std::vector<double> sig(16);
    for (auto& s : sig) s = rs.uniform(-1.0, 3.0);
    SigmaField field = SigmaField::empirical(base, sig);
    // a o b = id at achieved measures
    const auto& bprof = field.b_profile();
    std::vector<double> knots{0.0};
    for (double b : bprof.breakpoints()) knots.push_back(b);
    for (double mu : knots) CHECK(field.a(field.b(mu)) == doctest::Approx(mu).epsilon(1e-13));
    // equivalence a(e) <= mu <=> e <= b(mu) on knot pairs
    for (double e : sig)
        for (double mu : knots) {
            bool lhs = field.a(e) <= mu + 1e-15;
            bool rhs = e <= field.b(mu) + 1e-15;
            CHECK(lhs == rhs);
        }
}

TEST_CASE("splitting: unequal weights still give exact equimeasurability") {
    // two atoms with weights 1 and 2; sigma ranks them in reverse
    Domain dom = Domain::rectangle(1.0, 3.0);
    CarrierPtr c = make_carrier(dom, {{0.5, 0.5}, {0.5, 2.0}}, {1.0, 2.0});
    SigmaField sig = SigmaField::coord_x2(c);
    AtomicFunction f(c, {1.0, 5.0});
    Rearranged rr = sigma_rearrange_full(f, sig);
    CHECK(rr.split);
    // mass{value 5} must stay exactly 2, mass{1} exactly 1
    StepProfile mu = mu_of(rr.value);
    CHECK(mu(4.0) == 2.0);
    CHECK(mu(0.5) == 3.0);
    // the rearranged function is nonincreasing along sigma
    const auto& order = rr.sigma.ascending_order();
    for (std::size_t i = 1; i < order.size(); ++i)
        CHECK(rr.value.value(order[i]) <= rr.value.value(order[i - 1]));
}
