#pragma once

#include <map>
#include <string>
#include <vector>

#include "causalabs/learner.hpp"

namespace causalabs {

// Reference value for one published observable, used by the golden tests.
struct ReferenceValue {
    std::string key;   // stable identifier, e.g. "health.learn.iil.optimum"
    double value;      // published value
    double tolerance;  // assertion half-width
};

// Everything one evaluation scenario needs: the base and high models, the
// (possibly partial) abstraction, the candidate space for learning, the
// assessment sets of interest, and the reference values.
struct ScenarioBundle {
    Scm base;
    Scm high; // template when mechanism slots are present
    Abstraction abstraction;
    CandidateSpace space;
    std::map<std::string, AssessmentSet> assessments;
    std::vector<ReferenceValue> references;
};

struct Fig1Models {
    Scm chain;     // Sm -> Tar -> LC, all binary
    Scm pair;      // Sm' -> Hea', binary
    Scm fork;      // Env''(3), Gen''(2) -> LC''(2)
    Scm singleton; // one variable, one outcome
};

// The four sample models, built programmatically with their exact published
// mechanism matrices.
Fig1Models build_fig1_models();

// The identity-alphas abstraction between chain and pair
// (R = {Sm, LC}, Sm -> Sm', LC -> Hea').
Abstraction build_fig1_abstraction();

// Scenario data directory: the ABSTRACTION_DATA_DIR environment variable when
// set, otherwise the compiled-in default.
std::string data_dir();

// 12 binary variables, 12 edges, column-stochastic CPTs.
Scm ingest_lucas(const std::string& path);

// Learning the pair-model abstraction of the LUCAS base: 3 candidate
// mechanisms for Sm' -> Hea' and all surjection alphas.
ScenarioBundle build_health_scenario(const std::string& dir = data_dir());

// Evaluating the fork-model abstraction of the LUCAS base: all surjection
// alphas, assessment sets causal / parental / custom.
ScenarioBundle build_lungcancer_scenario(const std::string& dir = data_dir());

} // namespace causalabs
