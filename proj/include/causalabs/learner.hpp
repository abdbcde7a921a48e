#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "causalabs/measures.hpp"

namespace causalabs {

// All surjective functions {0..m-1} -> {0..n-1} as n x m binary matrices,
// ordered lexicographically by the length-m column-assignment word.
// Count is the inclusion-exclusion surjection number.
std::vector<Mat> enumerate_surjections(std::size_t m, std::size_t n);

// Admissible candidates per slot. Mechanism slots replace a high-level
// mechanism matrix (the nu candidates); alpha slots fill a missing alpha.
// Defaults for alpha slots are all surjections onto the high-level domain.
struct MechanismSlot {
    std::string variable;        // high-level variable whose mechanism varies
    std::vector<Mat> candidates; // column-stochastic, shape of the mechanism
};

struct AlphaSlot {
    std::string variable;        // high-level variable missing its alpha
    std::vector<Mat> candidates; // binary surjections of the right shape
};

struct CandidateSpace {
    std::vector<MechanismSlot> mechanism_slots;
    std::vector<AlphaSlot> alpha_slots;

    std::size_t total() const;
};

inline constexpr std::size_t kDefaultMaxCandidates = 1000000;

// Default space: no mechanism slots; one alpha slot per missing alpha with
// every admissible surjection.
CandidateSpace default_candidate_space(const Scm& base, const Scm& high,
                                       const Abstraction& partial);

struct RankedCandidate {
    std::size_t index = 0; // enumeration index over the Cartesian product
    std::vector<std::size_t> mech_choice;
    std::vector<std::size_t> alpha_choice;
    MaybeInfiniteError error;
};

struct LearnResult {
    bool none = false; // order-preservation failed: no candidate evaluated
    Abstraction best;
    Scm best_high; // high model with the chosen mechanism candidates applied
    std::vector<std::size_t> best_mech_choice;
    MaybeInfiniteError best_error;
    std::vector<RankedCandidate> ranking; // sorted by (error, enumeration index)
};

// Exhaustive enumeration over the Cartesian product of the slots; strict-<
// improvement with earliest-enumeration tie-break. Returns a none-result
// without evaluating anything when the variable map violates order
// preservation. `max_candidates` guards the product size.
LearnResult learn(const Scm& base, const Scm& high_template, const Abstraction& partial,
                  MeasureKind kind, const AssessmentSet& set, Aggregator agg,
                  const CandidateSpace& space, std::size_t max_candidates = kDefaultMaxCandidates);

} // namespace causalabs
