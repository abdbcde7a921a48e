#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "causalabs/abstraction.hpp"
#include "causalabs/causal.hpp"

namespace causalabs {

// PRNG algorithm identifier recorded in sampling reports. Draws from discrete
// distributions use inverse-CDF on 53-bit uniforms, so results do not depend
// on implementation-defined stdlib distributions.
inline constexpr const char* kRngId = "mt19937_64-icdf53";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Index draw by inverse CDF over (possibly unnormalized up to fp error)
    // probabilities.
    int draw(std::span<const double> probs);

private:
    std::mt19937_64 gen_;
};

// Ancestral sampling in topological order; counts over the full outcome space
// in canonical order. Reproducible for a fixed seed.
std::vector<std::uint64_t> forward_sample(const Scm& scm, const std::optional<Intervention>& iv,
                                          std::size_t n, std::uint64_t seed);

// Per sample: draw a low-level intervention uniformly from the alpha-preimage
// of the high-level intervention value, then forward-sample the base model
// under it.
std::vector<std::uint64_t> pullback_intervention_sample(const Scm& base, const Abstraction& abs,
                                                        const Scm& high, const Intervention& high_iv,
                                                        std::size_t n, std::uint64_t seed);

// Hybrid pipeline: sample the base model outside the replaced block, read the
// driver values, push them through alpha, draw the high-level replaced_y from
// nu_do(driver_x), pull the result back uniformly over the alpha-preimage,
// then resume base sampling downstream of the replaced block.
// Severability is checked structurally up front; failures name the conflict.
std::vector<std::uint64_t> hybrid_sample(const Scm& base, const Abstraction& abs, const Scm& high,
                                         const std::vector<std::string>& replaced_y,
                                         const std::vector<std::string>& driver_x,
                                         const std::optional<Intervention>& base_iv, std::size_t n,
                                         std::uint64_t seed);

} // namespace causalabs
