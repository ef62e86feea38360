#include "rlab/rearrange.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rlab {

AtomicFunction Rearranged::lift(const AtomicFunction& g) const {
    if (!split) return g;
    std::vector<double> vals(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) vals[i] = g.value(parent[i]);
    return AtomicFunction(carrier, std::move(vals));
}

Rearranged sigma_rearrange_full(const AtomicFunction& f, const SigmaField& sigma) {
    if (!co_atomic(f.carrier(), sigma.carrier()))
        throw std::invalid_argument("sigma_rearrange: function and sigma field carrier mismatch");
    const Carrier& c = *f.carrier();
    const std::size_t n = c.size();
    const auto& order = sigma.ascending_order();
    const auto& rank = sigma.ascending_rank();

    // descending value stream; ties follow the ascending-sigma rank so that a
    // function already nonincreasing in sigma is its own rearrangement
    std::vector<std::uint32_t> stream(n);
    std::iota(stream.begin(), stream.end(), 0u);
    std::sort(stream.begin(), stream.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (f.value(a) != f.value(b)) return f.value(a) > f.value(b);
        return rank[a] < rank[b];
    });

    Rearranged out;

    // fast path: the k-th value chunk exactly fills the k-th destination atom
    // (always true on equal-weight carriers and for sigma-monotone functions)
    bool one_to_one = true;
    for (std::uint32_t k = 0; k < n; ++k)
        if (c.weight[order[k]] != c.weight[stream[k]]) {
            one_to_one = false;
            break;
        }
    if (one_to_one) {
        std::vector<double> vals(n);
        for (std::uint32_t k = 0; k < n; ++k) vals[order[k]] = f.value(stream[k]);
        out.carrier = f.carrier();
        out.value = AtomicFunction(out.carrier, std::move(vals));
        out.sigma = sigma;
        out.parent.resize(n);
        std::iota(out.parent.begin(), out.parent.end(), 0u);
        out.split = false;
        return out;
    }

    struct Piece {
        std::uint32_t parent;
        double weight;
        double value;
        double s0, s1;  // measure interval along the sigma order
    };
    std::vector<std::vector<Piece>> per_atom(n);
    bool split = false;

    std::size_t si = 0;
    double s_rem = c.weight[stream[0]];
    double offset = 0.0;
    for (std::uint32_t k = 0; k < n; ++k) {
        std::uint32_t dst = order[k];
        double cap = c.weight[dst];
        while (cap > 0.0) {
            double take = std::min(cap, s_rem);
            per_atom[dst].push_back(
                {dst, take, f.value(stream[si]), offset, offset + take});
            offset += take;
            cap -= take;
            s_rem -= take;
            if (s_rem <= 0.0 && si + 1 < n) {
                ++si;
                s_rem = c.weight[stream[si]];
            } else if (s_rem <= 0.0) {
                s_rem = 0.0;
                if (cap > 0.0) {
                    // only rounding residue can land here; absorb it
                    per_atom[dst].back().weight += cap;
                    per_atom[dst].back().s1 += cap;
                    offset += cap;
                    cap = 0.0;
                }
            }
        }
        if (per_atom[dst].size() > 1) split = true;
    }

    if (!split) {
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) vals[i] = per_atom[i].front().value;
        out.carrier = f.carrier();
        out.value = AtomicFunction(out.carrier, std::move(vals));
        out.sigma = sigma;
        out.parent.resize(n);
        std::iota(out.parent.begin(), out.parent.end(), 0u);
        out.split = false;
        return out;
    }

    // refined carrier: children replace their parent in construction order
    std::vector<std::array<double, 2>> pos;
    std::vector<double> weight, vals, sig;
    std::vector<std::uint32_t> parent;
    for (std::size_t i = 0; i < n; ++i) {
        for (const Piece& p : per_atom[i]) {
            pos.push_back(c.pos[i]);
            weight.push_back(p.weight);
            vals.push_back(p.value);
            sig.push_back(sigma.mean_b(p.s0, p.s1));
            parent.push_back(p.parent);
        }
    }
    out.carrier = make_carrier(c.domain, std::move(pos), std::move(weight));
    out.value = AtomicFunction(out.carrier, std::move(vals));
    out.sigma = sigma.refine(out.carrier, std::move(sig));
    out.parent = std::move(parent);
    out.split = true;
    return out;
}

AtomicFunction sigma_rearrange(const AtomicFunction& f, const SigmaField& sigma) {
    return sigma_rearrange_full(f, sigma).value;
}

AtomicFunction schwarz_rearrange(const AtomicFunction& f) {
    const Domain& dom = f.carrier()->domain;
    if (dom.kind != Domain::Kind::Disc && dom.kind != Domain::Kind::TruncatedRd)
        throw std::invalid_argument("schwarz_rearrange: needs a Disc or truncated R^d domain");
    SigmaField sig = SigmaField::power_law(f.carrier(), 1.0, dom.dim);
    return sigma_rearrange(f, sig);
}

}  // namespace rlab
