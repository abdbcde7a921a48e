#include "causalabs/scm.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "causalabs/kernels.hpp"

namespace causalabs {

Scm::Scm(std::vector<Variable> variables,
         std::vector<std::pair<std::string, std::string>> edges,
         std::map<std::string, Mechanism> mechanisms)
    : variables_(std::move(variables)),
      edges_(std::move(edges)),
      mechanisms_(std::move(mechanisms)) {}

int Scm::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name) return static_cast<int>(i);
    return -1;
}

const Variable& Scm::variable(const std::string& name) const {
    const int i = index_of(name);
    if (i < 0) throw std::invalid_argument("unknown variable: " + name);
    return variables_[static_cast<std::size_t>(i)];
}

const Mechanism& Scm::mechanism(const std::string& name) const {
    auto it = mechanisms_.find(name);
    if (it == mechanisms_.end()) throw std::invalid_argument("no mechanism for variable: " + name);
    return it->second;
}

int Scm::domain_size(const std::string& name) const {
    return static_cast<int>(variable(name).outcomes.size());
}

int Scm::outcome_index(const std::string& var, const std::string& label) const {
    const Variable& v = variable(var);
    for (std::size_t i = 0; i < v.outcomes.size(); ++i)
        if (v.outcomes[i] == label) return static_cast<int>(i);
    return -1;
}

OutcomeSpace Scm::space(const std::vector<std::string>& names) const {
    std::vector<int> sizes;
    sizes.reserve(names.size());
    for (const auto& n : names) sizes.push_back(domain_size(n));
    return OutcomeSpace(names, sizes);
}

OutcomeSpace Scm::full_space() const {
    std::vector<std::string> names;
    names.reserve(variables_.size());
    for (const auto& v : variables_) names.push_back(v.name);
    return space(names);
}

std::vector<std::string> Scm::canonical_sorted(const std::vector<std::string>& names) const {
    std::vector<std::string> out(names);
    std::sort(out.begin(), out.end(), [this](const std::string& a, const std::string& b) {
        return index_of(a) < index_of(b);
    });
    return out;
}

bool Scm::variables_equal(const Scm& o) const {
    if (variables_.size() != o.variables_.size()) return false;
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name != o.variables_[i].name ||
            variables_[i].outcomes != o.variables_[i].outcomes)
            return false;
    return true;
}

bool Scm::mechanisms_equal(const Scm& o) const {
    if (mechanisms_.size() != o.mechanisms_.size()) return false;
    for (const auto& [name, mech] : mechanisms_) {
        auto it = o.mechanisms_.find(name);
        if (it == o.mechanisms_.end()) return false;
        if (mech.parents != it->second.parents || !(mech.matrix == it->second.matrix))
            return false;
    }
    return true;
}

namespace {

// Kahn's algorithm over variable indices, smallest declaration index first.
// Returns empty when a cycle exists and reports a member via `cycle_member`.
std::vector<int> topo_indices(const Scm& scm, std::string* cycle_member) {
    const auto& vars = scm.variables();
    const std::size_t n = vars.size();
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (const auto& [p, c] : scm.edges()) {
        const int pi = scm.index_of(p);
        const int ci = scm.index_of(c);
        if (pi < 0 || ci < 0) continue; // unknown edge endpoints are reported by validate
        out[static_cast<std::size_t>(pi)].push_back(ci);
        ++indeg[static_cast<std::size_t>(ci)];
    }
    std::vector<int> order;
    std::vector<bool> done(n, false);
    order.reserve(n);
    for (std::size_t step = 0; step < n; ++step) {
        int pick = -1;
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i] && indeg[i] == 0) {
                pick = static_cast<int>(i);
                break;
            }
        if (pick < 0) {
            if (cycle_member) {
                for (std::size_t i = 0; i < n; ++i)
                    if (!done[i]) {
                        *cycle_member = vars[i].name;
                        break;
                    }
            }
            return {};
        }
        done[static_cast<std::size_t>(pick)] = true;
        order.push_back(pick);
        for (int c : out[static_cast<std::size_t>(pick)]) --indeg[static_cast<std::size_t>(c)];
    }
    return order;
}

} // namespace

std::vector<std::string> validate_scm(const Scm& scm) {
    std::vector<std::string> bad;
    const auto& vars = scm.variables();

    std::set<std::string> seen;
    for (const auto& v : vars) {
        if (!seen.insert(v.name).second) bad.push_back("duplicate variable name: " + v.name);
        if (v.outcomes.empty()) bad.push_back("empty outcome list: " + v.name);
        std::set<std::string> labels(v.outcomes.begin(), v.outcomes.end());
        if (labels.size() != v.outcomes.size())
            bad.push_back("duplicate outcome labels: " + v.name);
    }

    for (const auto& [p, c] : scm.edges()) {
        if (scm.index_of(p) < 0) bad.push_back("edge references unknown variable: " + p);
        if (scm.index_of(c) < 0) bad.push_back("edge references unknown variable: " + c);
    }

    std::string cyc;
    if (topo_indices(scm, &cyc).empty() && !vars.empty())
        bad.push_back("cycle detected involving variable: " + cyc);

    for (const auto& v : vars) {
        auto it = scm.mechanisms().find(v.name);
        if (it == scm.mechanisms().end()) {
            bad.push_back("missing mechanism: " + v.name);
            continue;
        }
        const Mechanism& mech = it->second;

        // Declared parents must be exactly the edge-declared parent set.
        std::set<std::string> edge_parents;
        for (const auto& [p, c] : scm.edges())
            if (c == v.name) edge_parents.insert(p);
        std::set<std::string> declared(mech.parents.begin(), mech.parents.end());
        if (declared.size() != mech.parents.size())
            bad.push_back("mechanism parents repeated: " + v.name);
        if (declared != edge_parents)
            bad.push_back("mechanism parents do not match edges: " + v.name);

        std::size_t cols = 1;
        bool shape_ok = true;
        for (const auto& p : mech.parents) {
            if (scm.index_of(p) < 0) {
                shape_ok = false;
                break;
            }
            cols *= static_cast<std::size_t>(scm.domain_size(p));
        }
        if (!shape_ok) continue;
        if (mech.matrix.rows != v.outcomes.size() || mech.matrix.cols != cols) {
            bad.push_back("mechanism shape mismatch: " + v.name);
            continue;
        }
        for (std::size_t c = 0; c < mech.matrix.cols; ++c) {
            double s = 0.0;
            bool neg = false;
            for (std::size_t r = 0; r < mech.matrix.rows; ++r) {
                const double x = mech.matrix.at(r, c);
                if (x < 0.0) neg = true;
                s += x;
            }
            if (neg)
                bad.push_back("mechanism has negative entry: " + v.name + " column " +
                              std::to_string(c));
            if (s < 1.0 - 1e-9 || s > 1.0 + 1e-9)
                bad.push_back("column not stochastic: " + v.name + " column " + std::to_string(c));
        }
    }
    for (const auto& [name, mech] : scm.mechanisms()) {
        (void)mech;
        if (scm.index_of(name) < 0) bad.push_back("mechanism for unknown variable: " + name);
    }
    return bad;
}

std::vector<std::string> topological_order(const Scm& scm) {
    std::string cyc;
    auto order = topo_indices(scm, &cyc);
    if (order.empty() && !scm.variables().empty())
        throw std::runtime_error("cycle detected involving variable: " + cyc);
    std::vector<std::string> names;
    names.reserve(order.size());
    for (int i : order) names.push_back(scm.variables()[static_cast<std::size_t>(i)].name);
    return names;
}

std::vector<double> joint_distribution(const Scm& scm) {
    {
        auto bad = validate_scm(scm);
        if (!bad.empty()) throw std::invalid_argument("joint_distribution: " + bad.front());
    }
    const auto& vars = scm.variables();
    const std::size_t n = vars.size();
    const OutcomeSpace full = scm.full_space();
    const std::size_t total = full.total();
    std::vector<double> joint(total, 1.0);
    const auto& ops = kernels::active();

    // Multiply in each variable's conditional weight. For a variable whose own
    // position and parent positions all lie within the first k axes, the weight
    // is constant over contiguous runs of the remaining axes, which keeps the
    // inner op a straight scale over a contiguous block.
    for (std::size_t v = 0; v < n; ++v) {
        const Mechanism& mech = scm.mechanism(vars[v].name);
        std::size_t maxpos = v;
        std::vector<std::size_t> ppos;
        ppos.reserve(mech.parents.size());
        for (const auto& p : mech.parents) {
            const auto q = static_cast<std::size_t>(scm.index_of(p));
            ppos.push_back(q);
            maxpos = std::max(maxpos, q);
        }
        std::size_t runlen = 1;
        for (std::size_t i = maxpos + 1; i < n; ++i)
            runlen *= vars[i].outcomes.size();
        const std::size_t nruns = total / runlen;

        std::vector<int> digits(maxpos + 1, 0);
        for (std::size_t run = 0; run < nruns; ++run) {
            std::size_t col = 0;
            for (std::size_t q : ppos)
                col = col * vars[q].outcomes.size() + static_cast<std::size_t>(digits[q]);
            const double w = mech.matrix.at(static_cast<std::size_t>(digits[v]), col);
            if (w != 1.0) ops.scale(joint.data() + run * runlen, w, runlen);
            for (std::size_t i = maxpos + 1; i-- > 0;) {
                if (++digits[i] < static_cast<int>(vars[i].outcomes.size())) break;
                digits[i] = 0;
            }
        }
    }
    return joint;
}

std::vector<double> marginal(const std::vector<double>& joint, const OutcomeSpace& from,
                             const std::vector<std::string>& to) {
    if (joint.size() != from.total())
        throw std::invalid_argument("marginal: joint length does not match space");
    std::set<std::string> want;
    for (const auto& t : to) {
        if (from.find(t) < 0) throw std::invalid_argument("marginal: unknown variable: " + t);
        if (!want.insert(t).second)
            throw std::invalid_argument("marginal: repeated variable: " + t);
    }

    std::vector<std::string> names = from.names();
    std::vector<int> sizes = from.sizes();
    std::vector<double> cur = joint;
    const auto& ops = kernels::active();

    // Sum out dropped axes innermost-first; each drop is a block-add.
    for (std::size_t k = names.size(); k-- > 0;) {
        if (want.count(names[k])) continue;
        std::size_t inner = 1;
        for (std::size_t i = k + 1; i < sizes.size(); ++i)
            inner *= static_cast<std::size_t>(sizes[i]);
        const auto d = static_cast<std::size_t>(sizes[k]);
        const std::size_t outer = cur.size() / (inner * d);
        std::vector<double> next(outer * inner, 0.0);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t j = 0; j < d; ++j)
                ops.add(next.data() + o * inner, cur.data() + (o * d + j) * inner, inner);
        cur = std::move(next);
        names.erase(names.begin() + static_cast<std::ptrdiff_t>(k));
        sizes.erase(sizes.begin() + static_cast<std::ptrdiff_t>(k));
    }

    if (names == to) return cur;

    // Reorder the surviving axes to the requested order.
    OutcomeSpace have(names, sizes);
    std::vector<int> to_sizes;
    to_sizes.reserve(to.size());
    std::vector<std::size_t> pick;
    pick.reserve(to.size());
    for (const auto& t : to) {
        const int i = have.find(t);
        pick.push_back(static_cast<std::size_t>(i));
        to_sizes.push_back(sizes[static_cast<std::size_t>(i)]);
    }
    OutcomeSpace target(to, to_sizes);
    std::vector<double> out(cur.size());
    std::vector<int> digits(names.size());
    std::vector<int> tdigits(to.size());
    for (std::size_t f = 0; f < cur.size(); ++f) {
        have.decode_into(f, digits);
        for (std::size_t i = 0; i < pick.size(); ++i) tdigits[i] = digits[pick[i]];
        out[target.encode(tdigits)] = cur[f];
    }
    return out;
}

} // namespace causalabs
