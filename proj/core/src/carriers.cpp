#include "rlab/carriers.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rlab {

std::vector<double> disc_shell_edges(std::size_t n_shells, double R) {
    std::vector<double> r(n_shells + 1);
    for (std::size_t k = 0; k <= n_shells; ++k)
        r[k] = R * std::sqrt(static_cast<double>(k) / static_cast<double>(n_shells));
    return r;
}

StratifiedCarrier make_disc_radius2(std::size_t n_bands, double R) {
    if (n_bands == 0) throw std::invalid_argument("make_disc_radius2: need at least one band");
    Domain dom = Domain::disc(R);
    const double w = dom.total_measure / static_cast<double>(n_bands);
    std::vector<double> edges = disc_shell_edges(n_bands, R);
    std::vector<std::array<double, 2>> pos(n_bands);
    std::vector<double> weight(n_bands, w);
    for (std::size_t k = 0; k < n_bands; ++k) pos[k] = {0.5 * (edges[k] + edges[k + 1]), 0.0};
    CarrierPtr c = make_carrier(dom, std::move(pos), std::move(weight));
    SigmaField sig = SigmaField::radius_squared(c);
    return {c, std::move(sig)};
}

StratifiedCarrier make_strip_x2(std::size_t n_bands, double L1, double L2, bool truncated) {
    if (n_bands == 0) throw std::invalid_argument("make_strip_x2: need at least one band");
    Domain dom = Domain::rectangle(L1, L2, truncated);
    const double h = L2 / static_cast<double>(n_bands);
    std::vector<std::array<double, 2>> pos(n_bands);
    std::vector<double> weight(n_bands, L1 * h);
    for (std::size_t k = 0; k < n_bands; ++k)
        pos[k] = {0.5 * L1, (static_cast<double>(k) + 0.5) * h};
    CarrierPtr c = make_carrier(dom, std::move(pos), std::move(weight));
    SigmaField sig = SigmaField::coord_x2(c);
    return {c, std::move(sig)};
}

StratifiedCarrier make_powerlaw_shells(std::size_t n_bands, double m, int d, double cutoff_radius,
                                       double support_radius) {
    if (n_bands == 0) throw std::invalid_argument("make_powerlaw_shells: need at least one band");
    if (!(support_radius > 0.0) || support_radius > cutoff_radius)
        throw std::invalid_argument("make_powerlaw_shells: 0 < support_radius <= cutoff required");
    Domain dom = Domain::truncated_rd(d, cutoff_radius);
    const double kd = unit_ball_volume(d);
    const double Ws = kd * std::pow(support_radius, d);
    std::vector<std::array<double, 2>> pos(n_bands);
    std::vector<double> weight(n_bands, Ws / static_cast<double>(n_bands));
    for (std::size_t k = 0; k < n_bands; ++k) {
        double W0 = Ws * static_cast<double>(k) / static_cast<double>(n_bands);
        double W1 = Ws * static_cast<double>(k + 1) / static_cast<double>(n_bands);
        double r0 = std::pow(W0 / kd, 1.0 / d);
        double r1 = std::pow(W1 / kd, 1.0 / d);
        pos[k] = {0.5 * (r0 + r1), 0.0};
    }
    CarrierPtr c = make_carrier(dom, std::move(pos), std::move(weight));
    SigmaField sig = SigmaField::power_law(c, m, d);
    return {c, std::move(sig)};
}

CarrierPtr make_rect_grid(std::size_t N1, std::size_t N2, double L1, double L2) {
    if (N1 == 0 || N2 == 0) throw std::invalid_argument("make_rect_grid: empty grid");
    Domain dom = Domain::rectangle(L1, L2);
    const double dx = L1 / static_cast<double>(N1);
    const double dy = L2 / static_cast<double>(N2);
    std::vector<std::array<double, 2>> pos;
    pos.reserve(N1 * N2);
    std::vector<double> weight(N1 * N2, dx * dy);
    for (std::size_t j = 0; j < N2; ++j)
        for (std::size_t i = 0; i < N1; ++i)
            pos.push_back({(static_cast<double>(i) + 0.5) * dx,
                           (static_cast<double>(j) + 0.5) * dy});
    return make_carrier(dom, std::move(pos), std::move(weight));
}

CarrierPtr make_disc_shells(std::size_t n_shells, double R) {
    if (n_shells == 0) throw std::invalid_argument("make_disc_shells: empty mesh");
    Domain dom = Domain::disc(R);
    const double w = dom.total_measure / static_cast<double>(n_shells);
    std::vector<double> edges = disc_shell_edges(n_shells, R);
    std::vector<std::array<double, 2>> pos(n_shells);
    std::vector<double> weight(n_shells, w);
    for (std::size_t k = 0; k < n_shells; ++k) pos[k] = {0.5 * (edges[k] + edges[k + 1]), 0.0};
    return make_carrier(dom, std::move(pos), std::move(weight));
}

CarrierPtr make_phase_grid(std::size_t Nr, std::size_t Nv, double r_max, double v_max,
                           double r_min_factor) {
    if (Nr < 2 || Nv < 1) throw std::invalid_argument("make_phase_grid: grid too small");
    Domain dom = Domain::phase_space_radial(r_max, v_max);
    const double c43 = 4.0 * std::numbers::pi / 3.0;
    // log-spaced radii from r_min to r_max, first cell reaching down to 0
    std::vector<double> re(Nr + 1), ve(Nv + 1);
    re[0] = 0.0;
    const double r_min = r_max * r_min_factor;
    for (std::size_t i = 1; i <= Nr; ++i)
        re[i] = r_min * std::pow(r_max / r_min,
                                 static_cast<double>(i - 1) / static_cast<double>(Nr - 1));
    for (std::size_t j = 0; j <= Nv; ++j)
        ve[j] = v_max * static_cast<double>(j) / static_cast<double>(Nv);
    std::vector<std::array<double, 2>> pos;
    std::vector<double> weight;
    pos.reserve(Nr * Nv);
    weight.reserve(Nr * Nv);
    for (std::size_t i = 0; i < Nr; ++i) {
        double wx = c43 * (re[i + 1] * re[i + 1] * re[i + 1] - re[i] * re[i] * re[i]);
        double rc = 0.5 * (re[i] + re[i + 1]);
        for (std::size_t j = 0; j < Nv; ++j) {
            double wv = c43 * (ve[j + 1] * ve[j + 1] * ve[j + 1] - ve[j] * ve[j] * ve[j]);
            pos.push_back({rc, 0.5 * (ve[j] + ve[j + 1])});
            weight.push_back(wx * wv);
        }
    }
    return make_carrier(dom, std::move(pos), std::move(weight));
}

}  // namespace rlab
