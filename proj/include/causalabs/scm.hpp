#pragma once

#include <map>
#include <string>
#include <vector>

#include "causalabs/outcome_space.hpp"

namespace causalabs {

struct Variable {
    std::string name;
    std::vector<std::string> outcomes; // ordered labels, size >= 1
};

// Conditional stochastic matrix for one variable: rows = own outcomes,
// columns = flat joint outcomes of the declared parent tuple (1 for roots).
struct Mechanism {
    std::vector<std::string> parents; // fixes the column ordering
    Mat matrix;
};

// Finite discrete SCM. Declaration order of variables is the canonical order
// used for every flat index over multi-variable outcome spaces.
class Scm {
public:
    Scm() = default;
    Scm(std::vector<Variable> variables,
        std::vector<std::pair<std::string, std::string>> edges,
        std::map<std::string, Mechanism> mechanisms);

    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<std::pair<std::string, std::string>>& edges() const { return edges_; }
    const std::map<std::string, Mechanism>& mechanisms() const { return mechanisms_; }

    int index_of(const std::string& name) const; // -1 when absent
    const Variable& variable(const std::string& name) const;
    const Mechanism& mechanism(const std::string& name) const;
    int domain_size(const std::string& name) const;
    int outcome_index(const std::string& var, const std::string& label) const; // -1 when absent

    // Canonical space over the given names (or all variables), in the order given.
    OutcomeSpace space(const std::vector<std::string>& names) const;
    OutcomeSpace full_space() const;

    // Names in canonical (declaration) order filtered to the given set.
    std::vector<std::string> canonical_sorted(const std::vector<std::string>& names) const;

    bool operator==(const Scm& o) const {
        return variables_equal(o) && edges_ == o.edges_ && mechanisms_equal(o);
    }

private:
    bool variables_equal(const Scm& o) const;
    bool mechanisms_equal(const Scm& o) const;

    std::vector<Variable> variables_;
    std::vector<std::pair<std::string, std::string>> edges_;
    std::map<std::string, Mechanism> mechanisms_;
};

// Every invariant breach, with the offending variable named. Empty when valid.
std::vector<std::string> validate_scm(const Scm& scm);

// Deterministic topological order (Kahn; ties broken by declaration order).
// Throws std::runtime_error naming a cycle member when the edges are cyclic.
std::vector<std::string> topological_order(const Scm& scm);

// Exact joint over the full outcome space in canonical order.
std::vector<double> joint_distribution(const Scm& scm);

// Marginalize `joint` over `from` down to `to` (any subset, any order).
std::vector<double> marginal(const std::vector<double>& joint, const OutcomeSpace& from,
                             const std::vector<std::string>& to);

} // namespace causalabs
