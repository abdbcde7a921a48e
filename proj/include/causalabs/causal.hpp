#pragma once

#include <string>
#include <vector>

#include "causalabs/scm.hpp"

namespace causalabs {

// do(targets = values); values are outcome labels.
struct Intervention {
    std::vector<std::string> targets;
    std::vector<std::string> values;
};

// Surgery: replaces each target's mechanism by a point mass on the chosen
// value and removes its incoming edges. Other mechanisms are untouched.
Scm intervene(const Scm& scm, const Intervention& iv);

// Exact post-interventional stochastic function: column j is
// P(y_vars | do(x_vars = decode(j))), with flat indices first-slowest in the
// given tuple orders.
StochasticMatrix interventional_matrix(const Scm& scm,
                                       const std::vector<std::string>& x_vars,
                                       const std::vector<std::string>& y_vars);

} // namespace causalabs
