#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "causalabs/scm.hpp"

namespace causalabs {

// Abstraction tuple (R, a, alpha): relevant base variables, a surjective
// variable map onto the high-level variables, and one binary surjection
// matrix per high-level variable over the flat outcomes of its preimage
// (preimage ordered canonically in the base model). Alphas may be missing
// for a partially specified abstraction; the learner fills them.
struct Abstraction {
    std::vector<std::string> relevant;
    std::map<std::string, std::string> var_map; // base -> high
    std::map<std::string, Mat> alphas;          // high var -> matrix

    // Preimage a^-1(high_var) in canonical base order.
    std::vector<std::string> preimage(const Scm& base, const std::string& high_var) const;

    bool operator==(const Abstraction& o) const {
        return relevant == o.relevant && var_map == o.var_map && alphas == o.alphas;
    }
};

// Non-surjectivity, shape mismatches, unknown variables, missing alphas.
// Violations are data, not failures; empty means fully specified and valid.
std::vector<std::string> validate_abstraction(const Abstraction& abs, const Scm& base,
                                              const Scm& high);

// Like validate_abstraction but missing alphas are allowed.
std::vector<std::string> validate_partial_abstraction(const Abstraction& abs, const Scm& base,
                                                      const Scm& high);

// Lifted alpha for a set of high-level variables: the Kronecker product of
// the per-variable alphas in canonical high-level order. The low-level input
// ordering is the group-by-group concatenation of the preimages.
struct LiftedAlpha {
    Mat m;
    std::vector<std::string> low_order;  // base variables, group-concat order
    std::vector<std::string> high_order; // high variables, canonical order
};
LiftedAlpha alpha_for_set(const Abstraction& abs, const Scm& base, const Scm& high,
                          const std::vector<std::string>& x_set);

// Moore-Penrose pullback of a binary surjection: transpose with each column
// scaled by the inverse of the matching row sum. Column-stochastic; satisfies
// alpha * pinv(alpha) = I and spreads mass uniformly over each preimage.
Mat pseudo_inverse(const Mat& alpha);

// Composite abstraction base -> high of (beta: mid -> high) after
// (alpha: base -> mid).
Abstraction compose_abstractions(const Abstraction& beta, const Abstraction& alpha,
                                 const Scm& base, const Scm& mid, const Scm& high);

// True iff no pair X, Y of relevant base variables has X strictly before Y
// (base reachability) while a(Y) is strictly before a(X) in the high DAG.
// Full transitive reachability on both DAGs: O(|V|*(|V|+|E|)).
bool is_order_preserving(const Abstraction& abs, const Scm& base, const Scm& high);

// Finite non-negative error or the infinite sentinel (Prop-2 order violation).
struct MaybeInfiniteError {
    bool infinite = false;
    double value = 0.0;

    static MaybeInfiniteError finite(double v) { return {false, v}; }
    static MaybeInfiniteError inf() { return {true, 0.0}; }
};

} // namespace causalabs
