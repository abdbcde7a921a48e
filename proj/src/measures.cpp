#include "causalabs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "causalabs/causal.hpp"

namespace causalabs {

const char* to_string(MeasureKind k) {
    switch (k) {
        case MeasureKind::IC: return "ic";
        case MeasureKind::IIL: return "iil";
        case MeasureKind::ISIL: return "isil";
        case MeasureKind::ISC: return "isc";
    }
    return "?";
}

const char* to_string(Aggregator a) { return a == Aggregator::Sup ? "sup" : "mean"; }

std::optional<MeasureKind> parse_measure(const std::string& s) {
    if (s == "ic") return MeasureKind::IC;
    if (s == "iil") return MeasureKind::IIL;
    if (s == "isil") return MeasureKind::ISIL;
    if (s == "isc") return MeasureKind::ISC;
    return std::nullopt;
}

std::optional<Aggregator> parse_aggregator(const std::string& s) {
    if (s == "sup") return Aggregator::Sup;
    if (s == "mean") return Aggregator::Mean;
    return std::nullopt;
}

const char* to_string(AssessmentKind k) {
    switch (k) {
        case AssessmentKind::Complete: return "complete";
        case AssessmentKind::Causal: return "causal";
        case AssessmentKind::Parental: return "parental";
        case AssessmentKind::Custom: return "custom";
    }
    return "?";
}

std::optional<AssessmentKind> parse_assessment(const std::string& s) {
    if (s == "complete") return AssessmentKind::Complete;
    if (s == "causal") return AssessmentKind::Causal;
    if (s == "parental") return AssessmentKind::Parental;
    if (s == "custom") return AssessmentKind::Custom;
    return std::nullopt;
}

double jsd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("jsd: length mismatch");
    // Inputs that agree to double precision are equal: the plain formula
    // would amplify ulp-level drift from upstream products into sqrt(eps)
    // noise, breaking exact-zero identities.
    double linf = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) linf = std::max(linf, std::abs(p[i] - q[i]));
    if (linf <= 1e-14) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0.0) acc += 0.5 * p[i] * std::log(p[i] / m);
        if (q[i] > 0.0) acc += 0.5 * q[i] * std::log(q[i] / m);
    }
    return std::sqrt(std::max(0.0, acc));
}

double matrix_distance(const Mat& a, const Mat& b) {
    if (a.rows != b.rows || a.cols != b.cols)
        throw std::invalid_argument("matrix_distance: shape mismatch");
    double worst = 0.0;
    std::vector<double> pc(a.rows), qc(a.rows);
    for (std::size_t c = 0; c < a.cols; ++c) {
        for (std::size_t r = 0; r < a.rows; ++r) {
            pc[r] = a.at(r, c);
            qc[r] = b.at(r, c);
        }
        worst = std::max(worst, jsd(pc, qc));
    }
    return worst;
}

namespace {

void check_pair(const VarSetPair& pr, const Scm& high) {
    if (pr.first.empty() || pr.second.empty())
        throw std::invalid_argument("assessment pair has an empty side");
    std::set<std::string> xs(pr.first.begin(), pr.first.end());
    if (xs.size() != pr.first.size())
        throw std::invalid_argument("assessment pair repeats a variable");
    for (const auto& y : pr.second)
        if (xs.count(y)) throw std::invalid_argument("assessment pair sides overlap on " + y);
    std::set<std::string> ys(pr.second.begin(), pr.second.end());
    if (ys.size() != pr.second.size())
        throw std::invalid_argument("assessment pair repeats a variable");
    for (const auto& v : pr.first)
        if (high.index_of(v) < 0) throw std::invalid_argument("assessment pair unknown variable " + v);
    for (const auto& v : pr.second)
        if (high.index_of(v) < 0) throw std::invalid_argument("assessment pair unknown variable " + v);
}

VarSetPair normalized(VarSetPair pr) {
    std::sort(pr.first.begin(), pr.first.end());
    std::sort(pr.second.begin(), pr.second.end());
    return pr;
}

// Reachability of every node of ys from some node of xs after cutting the
// edges into xs.
bool causally_reaches(const Scm& high, const std::vector<std::string>& xs,
                      const std::vector<std::string>& ys) {
    std::set<std::string> cut(xs.begin(), xs.end());
    const std::size_t n = high.variables().size();
    std::vector<std::vector<int>> out(n);
    for (const auto& [p, c] : high.edges()) {
        if (cut.count(c)) continue;
        out[static_cast<std::size_t>(high.index_of(p))].push_back(high.index_of(c));
    }
    std::vector<bool> seen(n, false);
    std::vector<int> stack;
    for (const auto& x : xs) stack.push_back(high.index_of(x));
    while (!stack.empty()) {
        const auto v = static_cast<std::size_t>(stack.back());
        stack.pop_back();
        for (int w : out[v])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
    }
    for (const auto& y : ys)
        if (!seen[static_cast<std::size_t>(high.index_of(y))]) return false;
    return true;
}

} // namespace

AssessmentSet build_assessment_set(AssessmentKind kind, const Scm& high,
                                   const std::vector<VarSetPair>& custom_pairs,
                                   std::size_t max_pairs) {
    AssessmentSet set;
    set.kind = kind;

    if (kind == AssessmentKind::Custom) {
        std::set<VarSetPair> dedup;
        for (const auto& pr : custom_pairs) {
            check_pair(pr, high);
            dedup.insert(normalized(pr));
        }
        set.pairs.assign(dedup.begin(), dedup.end());
        return set;
    }

    const auto& vars = high.variables();
    const std::size_t n = vars.size();

    if (kind == AssessmentKind::Parental) {
        for (const auto& v : vars) {
            std::vector<std::string> parents;
            for (const auto& [p, c] : high.edges())
                if (c == v.name) parents.push_back(p);
            if (parents.empty()) continue; // root: empty X' would break non-emptiness
            std::sort(parents.begin(), parents.end());
            parents.erase(std::unique(parents.begin(), parents.end()), parents.end());
            set.pairs.push_back({parents, {v.name}});
        }
        std::sort(set.pairs.begin(), set.pairs.end());
        return set;
    }

    // Complete or causal: enumerate disjoint non-empty subset pairs.
    if (n > 30) throw std::invalid_argument("assessment set: too many variables to enumerate");
    const std::size_t subsets = std::size_t{1} << n;
    for (std::size_t xm = 1; xm < subsets; ++xm) {
        for (std::size_t ym = 1; ym < subsets; ++ym) {
            if ((xm & ym) != 0) continue;
            std::vector<std::string> xs, ys;
            for (std::size_t i = 0; i < n; ++i) {
                if (xm & (std::size_t{1} << i)) xs.push_back(vars[i].name);
                if (ym & (std::size_t{1} << i)) ys.push_back(vars[i].name);
            }
            if (kind == AssessmentKind::Causal && !causally_reaches(high, xs, ys)) continue;
            set.pairs.push_back(normalized({std::move(xs), std::move(ys)}));
            if (set.pairs.size() > max_pairs)
                throw std::runtime_error("assessment set exceeds pair ceiling (" +
                                         std::to_string(max_pairs) +
                                         "); raise --max-pairs to override");
        }
    }
    std::sort(set.pairs.begin(), set.pairs.end());
    set.pairs.erase(std::unique(set.pairs.begin(), set.pairs.end()), set.pairs.end());
    return set;
}

double error_wrt_intervention(MeasureKind kind, const Scm& base, const Scm& high,
                              const Abstraction& abs, const std::vector<std::string>& x_set,
                              const std::vector<std::string>& y_set) {
    check_pair({x_set, y_set}, high);
    const LiftedAlpha ax = alpha_for_set(abs, base, high, x_set);
    const LiftedAlpha ay = alpha_for_set(abs, base, high, y_set);
    const StochasticMatrix mu = interventional_matrix(base, ax.low_order, ay.low_order);
    const StochasticMatrix nu = interventional_matrix(high, ax.high_order, ay.high_order);
    switch (kind) {
        case MeasureKind::IC:
            return matrix_distance(matmul(ay.m, mu.m), matmul(nu.m, ax.m));
        case MeasureKind::IIL:
            return matrix_distance(mu.m, matmul(pseudo_inverse(ay.m), matmul(nu.m, ax.m)));
        case MeasureKind::ISIL:
            return matrix_distance(nu.m, matmul(ay.m, matmul(mu.m, pseudo_inverse(ax.m))));
        case MeasureKind::ISC:
            return matrix_distance(matmul(pseudo_inverse(ay.m), nu.m),
                                   matmul(mu.m, pseudo_inverse(ax.m)));
    }
    throw std::logic_error("unreachable measure kind");
}

ErrorReport overall_error(MeasureKind kind, const Scm& base, const Scm& high,
                          const Abstraction& abs, const AssessmentSet& set, Aggregator agg) {
    {
        auto bad = validate_abstraction(abs, base, high);
        if (!bad.empty()) throw std::invalid_argument("overall_error: " + bad.front());
    }
    if (set.pairs.empty()) throw std::invalid_argument("overall_error: nothing to aggregate");

    ErrorReport report;
    if (!is_order_preserving(abs, base, high)) {
        report.overall = MaybeInfiniteError::inf();
        return report;
    }
    double sup = 0.0, sum = 0.0;
    for (const auto& pr : set.pairs) {
        const double e = error_wrt_intervention(kind, base, high, abs, pr.first, pr.second);
        report.breakdown.push_back({pr, e});
        sup = std::max(sup, e);
        sum += e;
    }
    report.overall = MaybeInfiniteError::finite(
        agg == Aggregator::Sup ? sup : sum / static_cast<double>(set.pairs.size()));
    return report;
}

} // namespace causalabs
