#pragma once

// The sigma-rearrangement f^{*sigma}: stack the multiset of (value, weight)
// in descending value order onto the atoms in ascending sigma order. Exactly
// equimeasurable by construction. Atoms are split when weights mismatch, so
// the result is the measure-exact rearrangement even on unequal-weight
// carriers.

#include <cstdint>
#include <vector>

#include "rlab/measure_core.hpp"
#include "rlab/sigma_field.hpp"

namespace rlab {

struct Rearranged {
    CarrierPtr carrier;                 // == input carrier unless split
    AtomicFunction value;               // f^{*sigma} on `carrier`
    SigmaField sigma;                   // sigma re-hosted on `carrier`
    std::vector<std::uint32_t> parent;  // refined atom -> original atom (identity if !split)
    bool split = false;

    // Express a function co-atomic with the original carrier on the refined
    // one (values copy to child atoms).
    AtomicFunction lift(const AtomicFunction& g) const;
};

Rearranged sigma_rearrange_full(const AtomicFunction& f, const SigmaField& sigma);

// Convenience: just the rearranged function (on a possibly refined carrier).
AtomicFunction sigma_rearrange(const AtomicFunction& f, const SigmaField& sigma);

// Schwarz rearrangement = sigma-rearrangement under |x| (PowerLaw m=1).
AtomicFunction schwarz_rearrange(const AtomicFunction& f);

}  // namespace rlab
