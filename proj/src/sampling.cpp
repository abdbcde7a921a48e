#include "causalabs/sampling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace causalabs {

int Rng::draw(std::span<const double> probs) {
    const double u = uniform01();
    double c = 0.0;
    int last = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        c += probs[i];
        last = static_cast<int>(i);
        if (u < c) return last;
    }
    return last; // u landed in the fp slack past the final cumulative step
}

namespace {

struct SamplerPlan {
    std::vector<int> order;                 // variable indices, topological
    std::vector<std::vector<int>> parents;  // parent indices per variable, declared order
    std::vector<int> forced;                // forced outcome or -1
};

SamplerPlan make_plan(const Scm& scm, const std::optional<Intervention>& iv) {
    {
        auto bad = validate_scm(scm);
        if (!bad.empty()) throw std::invalid_argument("sampling: " + bad.front());
    }
    SamplerPlan plan;
    const auto names = topological_order(scm);
    for (const auto& nm : names) plan.order.push_back(scm.index_of(nm));
    plan.parents.resize(scm.variables().size());
    plan.forced.assign(scm.variables().size(), -1);
    for (std::size_t i = 0; i < scm.variables().size(); ++i) {
        const auto& mech = scm.mechanism(scm.variables()[i].name);
        for (const auto& p : mech.parents) plan.parents[i].push_back(scm.index_of(p));
    }
    if (iv) {
        if (iv->targets.size() != iv->values.size())
            throw std::invalid_argument("sampling: targets/values length mismatch");
        for (std::size_t i = 0; i < iv->targets.size(); ++i) {
            const int vi = scm.index_of(iv->targets[i]);
            if (vi < 0) throw std::invalid_argument("sampling: unknown target " + iv->targets[i]);
            const int o = scm.outcome_index(iv->targets[i], iv->values[i]);
            if (o < 0)
                throw std::invalid_argument("sampling: value out of domain: " + iv->targets[i] +
                                            "=" + iv->values[i]);
            plan.forced[static_cast<std::size_t>(vi)] = o;
        }
    }
    return plan;
}

void draw_assignment(const Scm& scm, const SamplerPlan& plan, Rng& rng, std::vector<int>& digits,
                     std::vector<double>& colbuf) {
    for (int vi : plan.order) {
        const auto v = static_cast<std::size_t>(vi);
        if (plan.forced[v] >= 0) {
            digits[v] = plan.forced[v];
            continue;
        }
        const Mechanism& mech = scm.mechanism(scm.variables()[v].name);
        std::size_t col = 0;
        for (int q : plan.parents[v]) {
            const auto qq = static_cast<std::size_t>(q);
            col = col * scm.variables()[qq].outcomes.size() + static_cast<std::size_t>(digits[qq]);
        }
        colbuf.resize(mech.matrix.rows);
        for (std::size_t r = 0; r < mech.matrix.rows; ++r) colbuf[r] = mech.matrix.at(r, col);
        digits[v] = rng.draw(colbuf);
    }
}

} // namespace

std::vector<std::uint64_t> forward_sample(const Scm& scm, const std::optional<Intervention>& iv,
                                          std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("forward_sample: n must be >= 1");
    const SamplerPlan plan = make_plan(scm, iv);
    const OutcomeSpace full = scm.full_space();
    std::vector<std::uint64_t> counts(full.total(), 0);
    Rng rng(seed);
    std::vector<int> digits(scm.variables().size(), 0);
    std::vector<double> colbuf;
    for (std::size_t s = 0; s < n; ++s) {
        draw_assignment(scm, plan, rng, digits, colbuf);
        ++counts[full.encode(digits)];
    }
    return counts;
}

std::vector<std::uint64_t> pullback_intervention_sample(const Scm& base, const Abstraction& abs,
                                                        const Scm& high,
                                                        const Intervention& high_iv,
                                                        std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("pullback_intervention_sample: n must be >= 1");
    const LiftedAlpha lifted = alpha_for_set(abs, base, high, high_iv.targets);
    const OutcomeSpace hs = high.space(lifted.high_order);

    std::vector<int> hdigits(lifted.high_order.size());
    for (std::size_t i = 0; i < lifted.high_order.size(); ++i) {
        const auto& hv = lifted.high_order[i];
        // re-associate values with the canonical ordering of the target tuple
        std::size_t src = 0;
        while (src < high_iv.targets.size() && high_iv.targets[src] != hv) ++src;
        const int o = high.outcome_index(hv, high_iv.values[src]);
        if (o < 0)
            throw std::invalid_argument("pullback: value outside codomain: " + hv + "=" +
                                        high_iv.values[src]);
        hdigits[i] = o;
    }
    const std::size_t hflat = hs.encode(hdigits);

    std::vector<std::size_t> preimage;
    for (std::size_t c = 0; c < lifted.m.cols; ++c)
        if (lifted.m.at(hflat, c) == 1.0) preimage.push_back(c);
    if (preimage.empty()) throw std::invalid_argument("pullback: empty alpha preimage");

    const OutcomeSpace ls = base.space(lifted.low_order);
    const OutcomeSpace full = base.full_space();
    std::vector<std::uint64_t> counts(full.total(), 0);
    Rng rng(seed);
    std::vector<int> ldigits(lifted.low_order.size());
    std::vector<int> digits(base.variables().size(), 0);
    std::vector<double> colbuf;
    const std::vector<double> unif(preimage.size(), 1.0 / static_cast<double>(preimage.size()));

    // One intervened model and sampling plan per preimage element.
    std::vector<Scm> cut_models;
    std::vector<SamplerPlan> plans;
    cut_models.reserve(preimage.size());
    for (std::size_t pick : preimage) {
        ls.decode_into(pick, ldigits);
        Intervention low_iv;
        low_iv.targets = lifted.low_order;
        for (std::size_t i = 0; i < ldigits.size(); ++i)
            low_iv.values.push_back(
                base.variable(lifted.low_order[i]).outcomes[static_cast<std::size_t>(ldigits[i])]);
        cut_models.push_back(intervene(base, low_iv));
        plans.push_back(make_plan(cut_models.back(), std::nullopt));
    }

    for (std::size_t s = 0; s < n; ++s) {
        const auto k = static_cast<std::size_t>(rng.draw(unif));
        draw_assignment(cut_models[k], plans[k], rng, digits, colbuf);
        ++counts[full.encode(digits)];
    }
    return counts;
}

std::vector<std::uint64_t> hybrid_sample(const Scm& base, const Abstraction& abs, const Scm& high,
                                         const std::vector<std::string>& replaced_y,
                                         const std::vector<std::string>& driver_x,
                                         const std::optional<Intervention>& base_iv, std::size_t n,
                                         std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("hybrid_sample: n must be >= 1");
    {
        std::set<std::string> ry(replaced_y.begin(), replaced_y.end());
        for (const auto& d : driver_x)
            if (ry.count(d))
                throw std::invalid_argument("hybrid_sample: replaced and driver sets overlap on " + d);
    }
    const LiftedAlpha ax = alpha_for_set(abs, base, high, driver_x);
    const LiftedAlpha ay = alpha_for_set(abs, base, high, replaced_y);
    const StochasticMatrix nu = interventional_matrix(high, ax.high_order, ay.high_order);

    const std::size_t nb = base.variables().size();
    std::set<int> block; // replaced base variables
    for (const auto& v : ay.low_order) block.insert(base.index_of(v));

    // Reachability for the severability check and the phase split.
    std::vector<std::vector<int>> out(nb);
    for (const auto& [p, c] : base.edges())
        out[static_cast<std::size_t>(base.index_of(p))].push_back(base.index_of(c));
    std::vector<bool> desc(nb, false); // strict descendants of the block
    {
        std::vector<int> stack(block.begin(), block.end());
        std::vector<bool> seen(nb, false);
        while (!stack.empty()) {
            const auto v = static_cast<std::size_t>(stack.back());
            stack.pop_back();
            for (int w : out[v])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    if (!block.count(w)) desc[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
        }
    }
    // anc-of-block scan: a non-replaced descendant that feeds back into the
    // block would be consumed out of order.
    {
        std::vector<bool> anc(nb, false);
        std::vector<std::vector<int>> in(nb);
        for (const auto& [p, c] : base.edges())
            in[static_cast<std::size_t>(base.index_of(c))].push_back(base.index_of(p));
        std::vector<int> stack(block.begin(), block.end());
        std::vector<bool> seen(nb, false);
        while (!stack.empty()) {
            const auto v = static_cast<std::size_t>(stack.back());
            stack.pop_back();
            for (int w : in[v])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = true;
                    if (!block.count(w)) anc[static_cast<std::size_t>(w)] = true;
                    stack.push_back(w);
                }
        }
        for (std::size_t i = 0; i < nb; ++i)
            if (desc[i] && anc[i])
                throw std::invalid_argument(
                    "hybrid_sample: not severable, variable consumed out of order: " +
                    base.variables()[i].name);
    }
    for (const auto& d : ax.low_order)
        if (desc[static_cast<std::size_t>(base.index_of(d))])
            throw std::invalid_argument("hybrid_sample: driver is downstream of replaced block: " + d);
    if (base_iv)
        for (const auto& t : base_iv->targets)
            if (block.count(base.index_of(t)))
                throw std::invalid_argument("hybrid_sample: base intervention targets replaced variable: " + t);

    const SamplerPlan plan = make_plan(base_iv ? intervene(base, *base_iv) : base, std::nullopt);
    const Scm sampled_model = base_iv ? intervene(base, *base_iv) : base;

    // Phase split over the topological order: non-descendants, block, rest.
    std::vector<int> phase1, phase3;
    for (int vi : plan.order) {
        if (block.count(vi)) continue;
        (desc[static_cast<std::size_t>(vi)] ? phase3 : phase1).push_back(vi);
    }

    const OutcomeSpace lxs = base.space(ax.low_order);
    const OutcomeSpace lys = base.space(ay.low_order);
    const OutcomeSpace full = base.full_space();
    std::vector<std::uint64_t> counts(full.total(), 0);
    Rng rng(seed);
    std::vector<int> digits(nb, 0);
    std::vector<int> xdigits(ax.low_order.size());
    std::vector<int> ydigits(ay.low_order.size());
    std::vector<double> nucol(nu.m.rows);

    // Column -> high row map of the driver alpha (deterministic surjection).
    std::vector<std::size_t> xmap(ax.m.cols, 0);
    for (std::size_t c = 0; c < ax.m.cols; ++c)
        for (std::size_t r = 0; r < ax.m.rows; ++r)
            if (ax.m.at(r, c) == 1.0) xmap[c] = r;
    // Preimage lists per high row of the replaced alpha.
    std::vector<std::vector<std::size_t>> ypre(ay.m.rows);
    for (std::size_t c = 0; c < ay.m.cols; ++c)
        for (std::size_t r = 0; r < ay.m.rows; ++r)
            if (ay.m.at(r, c) == 1.0) ypre[r].push_back(c);

    std::vector<double> colbuf;
    auto draw_one = [&](int vi) {
        const auto v = static_cast<std::size_t>(vi);
        if (plan.forced[v] >= 0) {
            digits[v] = plan.forced[v];
            return;
        }
        const Mechanism& mech = sampled_model.mechanism(sampled_model.variables()[v].name);
        std::size_t col = 0;
        for (int q : plan.parents[v]) {
            const auto qq = static_cast<std::size_t>(q);
            col = col * sampled_model.variables()[qq].outcomes.size() +
                  static_cast<std::size_t>(digits[qq]);
        }
        colbuf.resize(mech.matrix.rows);
        for (std::size_t r = 0; r < mech.matrix.rows; ++r) colbuf[r] = mech.matrix.at(r, col);
        digits[v] = rng.draw(colbuf);
    };

    for (std::size_t s = 0; s < n; ++s) {
        for (int vi : phase1) draw_one(vi);
        for (std::size_t i = 0; i < ax.low_order.size(); ++i)
            xdigits[i] = digits[static_cast<std::size_t>(base.index_of(ax.low_order[i]))];
        const std::size_t xhigh = xmap[lxs.encode(xdigits)];
        for (std::size_t r = 0; r < nu.m.rows; ++r) nucol[r] = nu.m.at(r, xhigh);
        const auto yhigh = static_cast<std::size_t>(rng.draw(nucol));
        const auto& pre = ypre[yhigh];
        const std::vector<double> unif(pre.size(), 1.0 / static_cast<double>(pre.size()));
        const std::size_t ylow = pre[static_cast<std::size_t>(rng.draw(unif))];
        lys.decode_into(ylow, ydigits);
        for (std::size_t i = 0; i < ay.low_order.size(); ++i)
            digits[static_cast<std::size_t>(base.index_of(ay.low_order[i]))] = ydigits[i];
        for (int vi : phase3) draw_one(vi);
        ++counts[full.encode(digits)];
    }
    return counts;
}

} // namespace causalabs
