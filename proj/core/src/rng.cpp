#include "rlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rlab {

AtomicFunction random_bumps(RandomStream& rs, const CarrierPtr& carrier) {
    const std::size_t n = carrier->size();
    std::vector<double> vals(n, 0.0);
    const int blocks = 2 + static_cast<int>(rs.uniform_index(5));
    for (int b = 0; b < blocks; ++b) {
        std::size_t lo = static_cast<std::size_t>(rs.uniform_index(n));
        std::size_t span = 1 + static_cast<std::size_t>(rs.uniform_index(n - lo > n / 3 ? n / 3 : n - lo));
        double level = rs.uniform(0.0, 2.0);
        if (rs.uniform() < 0.15) level *= 1.0 / std::max(rs.uniform(), 1e-3);  // heavy tail
        for (std::size_t i = lo; i < std::min(lo + span, n); ++i) vals[i] += level;
    }
    return AtomicFunction(carrier, std::move(vals));
}

AtomicFunction equimeasurable_shuffle(RandomStream& rs, const AtomicFunction& q) {
    // Fisher-Yates restricted to equal-weight groups: the (value, weight)
    // multiset, hence mu_q, is untouched.
    const CarrierPtr& c = q.carrier();
    const std::size_t n = c->size();
    std::vector<std::uint32_t> idx(n);
    for (std::uint32_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (c->weight[a] != c->weight[b]) return c->weight[a] < c->weight[b];
        return a < b;
    });
    std::vector<double> vals = q.values();
    std::size_t g = 0;
    while (g < n) {
        std::size_t h = g;
        while (h < n && c->weight[idx[h]] == c->weight[idx[g]]) ++h;
        for (std::size_t i = h - 1; i > g; --i) {
            std::size_t j = g + static_cast<std::size_t>(rs.uniform_index(i - g + 1));
            std::swap(vals[idx[i]], vals[idx[j]]);
        }
        g = h;
    }
    return AtomicFunction(c, std::move(vals));
}

AtomicFunction additive_perturbation(RandomStream& rs, const AtomicFunction& q,
                                     double amplitude) {
    if (amplitude == 0.0) return q;
    const std::size_t n = q.size();
    std::vector<double> vals = q.values();
    // smooth-ish nonnegative bump over a random index window
    std::size_t lo = static_cast<std::size_t>(rs.uniform_index(n));
    std::size_t span = 1 + static_cast<std::size_t>(rs.uniform_index(std::max<std::size_t>(n / 4, 1)));
    std::size_t hi = std::min(lo + span, n);
    for (std::size_t i = lo; i < hi; ++i) {
        double t = (static_cast<double>(i - lo) + 0.5) / static_cast<double>(hi - lo);
        vals[i] += amplitude * std::sin(t * 3.14159265358979323846) *
                   std::sin(t * 3.14159265358979323846);
    }
    return AtomicFunction(q.carrier(), std::move(vals));
}

}  // namespace rlab
