#include "causalabs/causal.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace causalabs {

Scm intervene(const Scm& scm, const Intervention& iv) {
    if (iv.targets.size() != iv.values.size())
        throw std::invalid_argument("intervene: targets/values length mismatch");
    std::set<std::string> seen;
    for (const auto& t : iv.targets)
        if (!seen.insert(t).second) throw std::invalid_argument("intervene: repeated target: " + t);

    auto variables = scm.variables();
    auto edges = scm.edges();
    auto mechanisms = scm.mechanisms();

    for (std::size_t i = 0; i < iv.targets.size(); ++i) {
        const std::string& t = iv.targets[i];
        if (scm.index_of(t) < 0) throw std::invalid_argument("intervene: unknown target: " + t);
        const int o = scm.outcome_index(t, iv.values[i]);
        if (o < 0)
            throw std::invalid_argument("intervene: value out of domain: " + t + "=" + iv.values[i]);
        Mat point(static_cast<std::size_t>(scm.domain_size(t)), 1);
        point.at(static_cast<std::size_t>(o), 0) = 1.0;
        mechanisms[t] = Mechanism{{}, std::move(point)};
        edges.erase(std::remove_if(edges.begin(), edges.end(),
                                   [&](const auto& e) { return e.second == t; }),
                    edges.end());
    }
    return Scm(std::move(variables), std::move(edges), std::move(mechanisms));
}

StochasticMatrix interventional_matrix(const Scm& scm,
                                       const std::vector<std::string>& x_vars,
                                       const std::vector<std::string>& y_vars) {
    if (x_vars.empty() || y_vars.empty())
        throw std::invalid_argument("interventional_matrix: empty variable set");
    std::set<std::string> xs(x_vars.begin(), x_vars.end());
    for (const auto& y : y_vars)
        if (xs.count(y))
            throw std::invalid_argument("interventional_matrix: sets overlap on " + y);

    const OutcomeSpace xspace = scm.space(x_vars);
    const OutcomeSpace yspace = scm.space(y_vars);
    Mat m(yspace.total(), xspace.total());

    std::vector<int> digits(x_vars.size());
    for (std::size_t col = 0; col < xspace.total(); ++col) {
        xspace.decode_into(col, digits);
        Intervention iv;
        iv.targets = x_vars;
        for (std::size_t i = 0; i < x_vars.size(); ++i)
            iv.values.push_back(scm.variable(x_vars[i]).outcomes[static_cast<std::size_t>(digits[i])]);
        const Scm cut = intervene(scm, iv);
        const std::vector<double> p = joint_distribution(cut);
        const std::vector<double> py = marginal(p, cut.full_space(), y_vars);
        for (std::size_t r = 0; r < py.size(); ++r) m.at(r, col) = py[r];
    }
    return StochasticMatrix{std::move(m), yspace, xspace};
}

} // namespace causalabs
