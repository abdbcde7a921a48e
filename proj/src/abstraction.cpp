#include "causalabs/abstraction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace causalabs {

std::vector<std::string> Abstraction::preimage(const Scm& base, const std::string& high_var) const {
    std::vector<std::string> pre;
    for (const auto& v : base.variables()) {
        auto it = var_map.find(v.name);
        if (it != var_map.end() && it->second == high_var) pre.push_back(v.name);
    }
    return pre;
}

namespace {

std::vector<std::string> validate_impl(const Abstraction& abs, const Scm& base, const Scm& high,
                                       bool require_alphas) {
    std::vector<std::string> bad;

    std::set<std::string> rel(abs.relevant.begin(), abs.relevant.end());
    if (rel.size() != abs.relevant.size()) bad.push_back("relevant set has repeated variables");
    for (const auto& r : abs.relevant)
        if (base.index_of(r) < 0) bad.push_back("relevant variable unknown in base: " + r);

    for (const auto& [lo, hi] : abs.var_map) {
        if (!rel.count(lo)) bad.push_back("mapped variable not in relevant set: " + lo);
        if (high.index_of(hi) < 0) bad.push_back("map target unknown in high model: " + hi);
    }
    for (const auto& r : abs.relevant)
        if (!abs.var_map.count(r)) bad.push_back("relevant variable unmapped: " + r);

    // a must be onto the high-level variable set.
    for (const auto& hv : high.variables()) {
        bool hit = false;
        for (const auto& [lo, hi] : abs.var_map)
            if (hi == hv.name) {
                hit = true;
                break;
            }
        if (!hit) bad.push_back("variable map not surjective onto: " + hv.name);
    }

    for (const auto& hv : high.variables()) {
        auto it = abs.alphas.find(hv.name);
        if (it == abs.alphas.end()) {
            if (require_alphas) bad.push_back("missing alpha: " + hv.name);
            continue;
        }
        const Mat& a = it->second;
        std::size_t low_total = 1;
        for (const auto& lo : abs.preimage(base, hv.name))
            low_total *= static_cast<std::size_t>(base.domain_size(lo));
        const auto high_sz = static_cast<std::size_t>(high.domain_size(hv.name));
        if (a.rows != high_sz || a.cols != low_total) {
            bad.push_back("alpha shape mismatch: " + hv.name);
            continue;
        }
        for (std::size_t c = 0; c < a.cols; ++c) {
            int ones = 0;
            bool binary = true;
            for (std::size_t r = 0; r < a.rows; ++r) {
                const double v = a.at(r, c);
                if (v == 1.0) ++ones;
                else if (v != 0.0) binary = false;
            }
            if (!binary || ones != 1)
                bad.push_back("alpha column not functional: " + hv.name + " column " +
                              std::to_string(c));
        }
        for (std::size_t r = 0; r < a.rows; ++r) {
            bool any = false;
            for (std::size_t c = 0; c < a.cols && !any; ++c) any = a.at(r, c) == 1.0;
            if (!any)
                bad.push_back("alpha row not surjective: " + hv.name + " row " + std::to_string(r));
        }
    }
    for (const auto& [hv, a] : abs.alphas) {
        (void)a;
        if (high.index_of(hv) < 0) bad.push_back("alpha for unknown high variable: " + hv);
    }
    return bad;
}

// Pairwise reachability over declared edges (strict: a node does not reach itself
// unless on a cycle).
std::vector<std::vector<bool>> reachability(const Scm& scm) {
    const std::size_t n = scm.variables().size();
    std::vector<std::vector<int>> out(n);
    for (const auto& [p, c] : scm.edges()) {
        const int pi = scm.index_of(p), ci = scm.index_of(c);
        if (pi >= 0 && ci >= 0) out[static_cast<std::size_t>(pi)].push_back(ci);
    }
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<int> stack(out[s].begin(), out[s].end());
        while (!stack.empty()) {
            const auto v = static_cast<std::size_t>(stack.back());
            stack.pop_back();
            if (reach[s][v]) continue;
            reach[s][v] = true;
            for (int w : out[v]) stack.push_back(w);
        }
    }
    return reach;
}

} // namespace

std::vector<std::string> validate_abstraction(const Abstraction& abs, const Scm& base,
                                              const Scm& high) {
    return validate_impl(abs, base, high, true);
}

std::vector<std::string> validate_partial_abstraction(const Abstraction& abs, const Scm& base,
                                                      const Scm& high) {
    return validate_impl(abs, base, high, false);
}

LiftedAlpha alpha_for_set(const Abstraction& abs, const Scm& base, const Scm& high,
                          const std::vector<std::string>& x_set) {
    if (x_set.empty()) throw std::invalid_argument("alpha_for_set: empty set");
    const std::vector<std::string> ordered = high.canonical_sorted(x_set);
    LiftedAlpha out;
    out.high_order = ordered;
    Mat acc;
    bool first = true;
    for (const auto& hv : ordered) {
        auto it = abs.alphas.find(hv);
        if (it == abs.alphas.end())
            throw std::invalid_argument("alpha_for_set: alpha not specified for " + hv);
        const auto pre = abs.preimage(base, hv);
        if (pre.empty())
            throw std::invalid_argument("pair touches unabstracted variables: " + hv);
        out.low_order.insert(out.low_order.end(), pre.begin(), pre.end());
        acc = first ? it->second : kron(acc, it->second);
        first = false;
    }
    out.m = std::move(acc);
    return out;
}

Mat pseudo_inverse(const Mat& alpha) {
    std::vector<double> row_sums(alpha.rows, 0.0);
    for (std::size_t r = 0; r < alpha.rows; ++r)
        for (std::size_t c = 0; c < alpha.cols; ++c) row_sums[r] += alpha.at(r, c);
    for (std::size_t r = 0; r < alpha.rows; ++r)
        if (row_sums[r] == 0.0)
            throw std::invalid_argument("pseudo_inverse: zero row (non-surjective) at row " +
                                        std::to_string(r));
    Mat out(alpha.cols, alpha.rows);
    for (std::size_t r = 0; r < alpha.rows; ++r)
        for (std::size_t c = 0; c < alpha.cols; ++c)
            if (alpha.at(r, c) != 0.0) out.at(c, r) = alpha.at(r, c) / row_sums[r];
    return out;
}

Abstraction compose_abstractions(const Abstraction& beta, const Abstraction& alpha,
                                 const Scm& base, const Scm& mid, const Scm& high) {
    {
        auto v1 = validate_abstraction(alpha, base, mid);
        if (!v1.empty()) throw std::invalid_argument("compose: inner abstraction invalid: " + v1.front());
        auto v2 = validate_abstraction(beta, mid, high);
        if (!v2.empty()) throw std::invalid_argument("compose: outer abstraction invalid: " + v2.front());
    }

    Abstraction out;
    std::set<std::string> beta_rel(beta.relevant.begin(), beta.relevant.end());
    for (const auto& v : base.variables()) {
        auto it = alpha.var_map.find(v.name);
        if (it == alpha.var_map.end()) continue;
        if (!beta_rel.count(it->second)) continue;
        out.relevant.push_back(v.name);
        out.var_map[v.name] = beta.var_map.at(it->second);
    }

    // Per high variable: beta's alpha composed with the lifted alpha of its
    // beta-preimage. The lifted low order is the group-concat over mid
    // variables; re-align its base columns to canonical base order.
    for (const auto& hv : high.variables()) {
        const auto mid_pre = beta.preimage(mid, hv.name);
        const LiftedAlpha lifted = alpha_for_set(alpha, base, mid, mid_pre);
        Mat composed = matmul(beta.alphas.at(hv.name), lifted.m);

        const std::vector<std::string> canonical = base.canonical_sorted(lifted.low_order);
        if (canonical != lifted.low_order) {
            const OutcomeSpace from = base.space(lifted.low_order);
            const OutcomeSpace to = base.space(canonical);
            std::vector<std::size_t> pos(canonical.size());
            for (std::size_t i = 0; i < canonical.size(); ++i)
                pos[i] = static_cast<std::size_t>(from.find(canonical[i]));
            Mat re(composed.rows, composed.cols);
            std::vector<int> digits(lifted.low_order.size());
            std::vector<int> tdigits(canonical.size());
            for (std::size_t c = 0; c < composed.cols; ++c) {
                from.decode_into(c, digits);
                for (std::size_t i = 0; i < pos.size(); ++i) tdigits[i] = digits[pos[i]];
                const std::size_t tc = to.encode(tdigits);
                for (std::size_t r = 0; r < composed.rows; ++r) re.at(r, tc) = composed.at(r, c);
            }
            composed = std::move(re);
        }
        out.alphas[hv.name] = std::move(composed);
    }
    return out;
}

bool is_order_preserving(const Abstraction& abs, const Scm& base, const Scm& high) {
    const auto base_reach = reachability(base);
    const auto high_reach = reachability(high);
    for (const auto& x : abs.relevant) {
        for (const auto& y : abs.relevant) {
            const auto xi = static_cast<std::size_t>(base.index_of(x));
            const auto yi = static_cast<std::size_t>(base.index_of(y));
            if (!base_reach[xi][yi]) continue;
            const auto& hx = abs.var_map.at(x);
            const auto& hy = abs.var_map.at(y);
            if (hx == hy) continue;
            const auto hxi = static_cast<std::size_t>(high.index_of(hx));
            const auto hyi = static_cast<std::size_t>(high.index_of(hy));
            if (high_reach[hyi][hxi]) return false;
        }
    }
    return true;
}

} // namespace causalabs
