#pragma once

// Test-only reference implementations, computationally independent of the
// library's inference and matrix-composition paths: assignment-by-assignment
// enumeration, naive loops, own JSD. Used to cross-check interventional
// matrices, measure errors and learner minima.

#include <map>
#include <string>
#include <vector>

#include "causalabs/abstraction.hpp"
#include "causalabs/measures.hpp"
#include "causalabs/scm.hpp"

namespace refcheck {

using causalabs::Abstraction;
using causalabs::Mat;
using causalabs::MeasureKind;
using causalabs::Scm;

// P(ys | do(xs)) by enumerating complete assignments of the intervened model.
Mat interventional_matrix_bruteforce(const Scm& scm, const std::vector<std::string>& xs,
                                     const std::vector<std::string>& ys);

double jsd_ref(const std::vector<double>& p, const std::vector<double>& q);

// Per-pair error recomputed from scratch (own matmul / kron / pinv / sup).
double pair_error_bruteforce(MeasureKind kind, const Scm& base, const Scm& high,
                             const Abstraction& abs, const std::vector<std::string>& x_set,
                             const std::vector<std::string>& y_set);

// Minimum overall error over a candidate grid, recomputed from scratch.
// alphas_per_slot[i] are candidates for slot_vars[i]; mech candidates apply to
// mech_var's mechanism in `high` (empty = keep as is). Sup aggregation.
double learner_minimum_bruteforce(const Scm& base, const Scm& high, const Abstraction& partial,
                                  MeasureKind kind,
                                  const std::vector<std::pair<std::vector<std::string>,
                                                              std::vector<std::string>>>& pairs,
                                  const std::vector<std::string>& slot_vars,
                                  const std::vector<std::vector<Mat>>& alphas_per_slot,
                                  const std::string& mech_var,
                                  const std::vector<Mat>& mech_candidates);

} // namespace refcheck
