#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// gate. Each suite runs `iters` randomized instances and reports the number
// of failures with a short description of the first one.

#include <cmath>
#include <sstream>
#include <string>

#include "causalabs/causal.hpp"
#include "causalabs/measures.hpp"
#include "random_instances.hpp"

namespace propsuite {

using namespace causalabs;

struct SuiteResult {
    int run = 0;
    int failures = 0;
    std::string first_failure;

    void fail(const std::string& what) {
        ++failures;
        if (first_failure.empty()) first_failure = what;
    }
    bool ok() const { return run > 0 && failures == 0; }
};

inline SuiteResult check_jsd_axioms(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    for (int it = 0; it < iters; ++it) {
        const auto n = static_cast<std::size_t>(gen.uniform_int(2, 5));
        const auto p = gen.random_distribution(n);
        const auto q = gen.random_distribution(n);
        const auto r = gen.random_distribution(n);
        ++res.run;
        const double dpq = jsd(p, q);
        if (dpq < 0.0) res.fail("J1 negative distance");
        if (jsd(p, p) != 0.0) res.fail("J2 self-distance nonzero");
        double linf = 0.0;
        for (std::size_t i = 0; i < n; ++i) linf = std::max(linf, std::abs(p[i] - q[i]));
        if (linf > 1e-6 && dpq == 0.0) res.fail("J2 distinct distributions at distance 0");
        if (std::abs(dpq - jsd(q, p)) > 1e-9) res.fail("J3 asymmetric");
        if (dpq > jsd(p, r) + jsd(r, q) + 1e-9) res.fail("J4 triangle violated");
        if (dpq > std::sqrt(std::log(2.0)) + 1e-12) res.fail("range exceeds sqrt(ln 2)");
    }
    return res;
}

inline SuiteResult check_shortness(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    for (int it = 0; it < iters; ++it) {
        ++res.run;
        const auto m = static_cast<std::size_t>(gen.uniform_int(2, 5));
        const auto k = static_cast<std::size_t>(gen.uniform_int(1, 4));
        const auto p = gen.random_distribution(m);
        const auto q = gen.random_distribution(m);
        // deterministic post-processing: one 1 per column, rows may be empty
        Mat f(k, m);
        for (std::size_t c = 0; c < m; ++c)
            f.at(static_cast<std::size_t>(gen.uniform_int(0, static_cast<int>(k) - 1)), c) = 1.0;
        Mat pm(m, 1), qm(m, 1);
        for (std::size_t i = 0; i < m; ++i) {
            pm.at(i, 0) = p[i];
            qm.at(i, 0) = q[i];
        }
        const double lhs = matrix_distance(matmul(f, pm), matmul(f, qm));
        if (lhs > jsd(p, q) + 1e-12) res.fail("J5 left-composition increases distance");

        // right-composition on stochastic matrices
        const Mat a = gen.random_stochastic(static_cast<std::size_t>(gen.uniform_int(2, 4)), m);
        const Mat b = gen.random_stochastic(a.rows, m);
        const auto cols = static_cast<std::size_t>(gen.uniform_int(1, 4));
        Mat g(m, cols);
        for (std::size_t c = 0; c < cols; ++c)
            g.at(static_cast<std::size_t>(gen.uniform_int(0, static_cast<int>(m) - 1)), c) = 1.0;
        if (matrix_distance(matmul(a, g), matmul(b, g)) > matrix_distance(a, b) + 1e-12)
            res.fail("J5 right-composition increases distance");
    }
    return res;
}

// One random (base, high, abstraction) instance with a random disjoint pair.
struct RandomPairInstance {
    Scm base;
    Scm high;
    Abstraction abs;
    std::vector<std::string> x_set, y_set;
};

inline bool make_pair_instance(testgen::Gen& gen, RandomPairInstance& out, int identity_alphas) {
    out.base = gen.random_scm(4, 3);
    auto derived = gen.derive_abstraction(out.base, identity_alphas);
    out.high = std::move(derived.high);
    out.abs = std::move(derived.abs);
    const auto& hv = out.high.variables();
    if (hv.size() < 2) return false;
    // random non-empty disjoint pair
    out.x_set.clear();
    out.y_set.clear();
    for (const auto& v : hv) {
        const int where = gen.uniform_int(0, 2);
        if (where == 0) out.x_set.push_back(v.name);
        else if (where == 1) out.y_set.push_back(v.name);
    }
    return !out.x_set.empty() && !out.y_set.empty();
}

inline SuiteResult check_prop1_partial_order(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    while (res.run < iters) {
        RandomPairInstance inst;
        if (!make_pair_instance(gen, inst, 0)) continue;
        if (!validate_abstraction(inst.abs, inst.base, inst.high).empty()) continue;
        ++res.run;
        const double ic =
            error_wrt_intervention(MeasureKind::IC, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        const double iil =
            error_wrt_intervention(MeasureKind::IIL, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        const double isil =
            error_wrt_intervention(MeasureKind::ISIL, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        const double isc =
            error_wrt_intervention(MeasureKind::ISC, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        if (iil < ic - 1e-12) res.fail("IIL < IC");
        if (iil < isc - 1e-12) res.fail("IIL < ISC");
        if (ic < isil - 1e-12) res.fail("IC < ISIL");
        if (isc < isil - 1e-12) res.fail("ISC < ISIL");
    }
    return res;
}

inline SuiteResult check_triangle_inequality(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    while (res.run < iters) {
        const Scm base = gen.random_scm(4, 2);
        auto d1 = gen.derive_abstraction(base, 0);
        auto d2 = gen.derive_abstraction(d1.high, 0);
        if (d2.high.variables().size() < 2) continue;
        if (!validate_abstraction(d1.abs, base, d1.high).empty()) continue;
        if (!validate_abstraction(d2.abs, d1.high, d2.high).empty()) continue;

        std::vector<std::string> x2, y2;
        for (const auto& v : d2.high.variables()) {
            const int where = gen.uniform_int(0, 2);
            if (where == 0) x2.push_back(v.name);
            else if (where == 1) y2.push_back(v.name);
        }
        if (x2.empty() || y2.empty()) continue;
        ++res.run;

        const Abstraction composed =
            compose_abstractions(d2.abs, d1.abs, base, d1.high, d2.high);
        // preimages of the pair under the outer abstraction
        std::vector<std::string> x1, y1;
        for (const auto& hv : x2) {
            const auto pre = d2.abs.preimage(d1.high, hv);
            x1.insert(x1.end(), pre.begin(), pre.end());
        }
        for (const auto& hv : y2) {
            const auto pre = d2.abs.preimage(d1.high, hv);
            y1.insert(y1.end(), pre.begin(), pre.end());
        }
        for (auto kind : {MeasureKind::IC, MeasureKind::IIL, MeasureKind::ISIL, MeasureKind::ISC}) {
            const double composite =
                error_wrt_intervention(kind, base, d2.high, composed, x2, y2);
            const double inner = error_wrt_intervention(kind, base, d1.high, d1.abs, x1, y1);
            const double outer = error_wrt_intervention(kind, d1.high, d2.high, d2.abs, x2, y2);
            if (composite > inner + outer + 1e-9) {
                std::ostringstream os;
                os << "E1 violated for " << to_string(kind) << ": " << composite << " > "
                   << inner << " + " << outer;
                res.fail(os.str());
            }
        }
        // overall form over the singleton assessment sets
        const auto set2 = build_assessment_set(AssessmentKind::Custom, d2.high, {{x2, y2}});
        const auto set1 = build_assessment_set(AssessmentKind::Custom, d1.high, {{x1, y1}});
        for (auto kind : {MeasureKind::IC, MeasureKind::ISIL}) {
            const auto ec = overall_error(kind, base, d2.high, composed, set2, Aggregator::Sup);
            const auto e1 = overall_error(kind, base, d1.high, d1.abs, set1, Aggregator::Sup);
            const auto e2 = overall_error(kind, d1.high, d2.high, d2.abs, set2, Aggregator::Sup);
            if (!ec.overall.infinite && !e1.overall.infinite && !e2.overall.infinite &&
                ec.overall.value > e1.overall.value + e2.overall.value + 1e-9)
                res.fail("O1 violated");
        }
    }
    return res;
}

inline SuiteResult check_zero_at_identity(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    while (res.run < iters) {
        const Scm base = gen.random_scm(4, 3);
        if (base.variables().size() < 2) continue;
        ++res.run;
        Abstraction id;
        for (const auto& v : base.variables()) {
            id.relevant.push_back(v.name);
            id.var_map[v.name] = v.name;
            id.alphas[v.name] = Mat::identity(v.outcomes.size());
        }
        std::vector<std::string> xs = {base.variables()[0].name};
        std::vector<std::string> ys = {base.variables()[1].name};
        for (auto kind : {MeasureKind::IC, MeasureKind::IIL, MeasureKind::ISIL, MeasureKind::ISC}) {
            const double e = error_wrt_intervention(kind, base, base, id, xs, ys);
            if (!(std::abs(e) <= 1e-12)) res.fail("E3 nonzero at identity");
        }
    }
    return res;
}

inline SuiteResult check_ic_zero_at_singleton(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    while (res.run < iters) {
        const Scm base = gen.random_scm(4, 3);
        if (base.variables().size() < 2) continue;
        ++res.run;
        // two trivial high variables so a disjoint pair exists
        Scm star2({{"s", {"u"}}, {"t", {"u"}}}, {},
                  {{"s", {{}, Mat(1, 1, 1.0)}}, {"t", {{}, Mat(1, 1, 1.0)}}});
        Abstraction collapse;
        std::size_t m_s = 1, m_t = 1;
        for (std::size_t i = 0; i < base.variables().size(); ++i) {
            const auto& v = base.variables()[i];
            collapse.relevant.push_back(v.name);
            const bool to_s = i == 0;
            collapse.var_map[v.name] = to_s ? "s" : "t";
            (to_s ? m_s : m_t) *= v.outcomes.size();
        }
        collapse.alphas["s"] = Mat(1, m_s, 1.0);
        collapse.alphas["t"] = Mat(1, m_t, 1.0);
        const double e =
            error_wrt_intervention(MeasureKind::IC, base, star2, collapse, {"s"}, {"t"});
        if (!(std::abs(e) <= 1e-12)) res.fail("E4/O4 nonzero at singleton");
    }
    return res;
}

inline SuiteResult check_identity_proposition(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    while (res.run < iters) {
        RandomPairInstance inst;
        if (!make_pair_instance(gen, inst, 1)) continue;
        if (!validate_abstraction(inst.abs, inst.base, inst.high).empty()) continue;
        auto all_identity = [&](const std::vector<std::string>& set) {
            for (const auto& hv : set) {
                const Mat& a = inst.abs.alphas.at(hv);
                if (a.rows != a.cols || !(a == Mat::identity(a.rows))) return false;
            }
            return true;
        };
        const bool xid = all_identity(inst.x_set);
        const bool yid = all_identity(inst.y_set);
        if (!xid && !yid) continue;
        ++res.run;
        const double ic =
            error_wrt_intervention(MeasureKind::IC, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        const double iil =
            error_wrt_intervention(MeasureKind::IIL, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        const double isil =
            error_wrt_intervention(MeasureKind::ISIL, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        const double isc =
            error_wrt_intervention(MeasureKind::ISC, inst.base, inst.high, inst.abs, inst.x_set, inst.y_set);
        if (xid) {
            if (std::abs(ic - isil) > 1e-12) res.fail("identity-X: IC != ISIL");
            if (std::abs(iil - isc) > 1e-12) res.fail("identity-X: IIL != ISC");
        }
        if (yid) {
            if (std::abs(ic - iil) > 1e-12) res.fail("identity-Y: IC != IIL");
            if (std::abs(isil - isc) > 1e-12) res.fail("identity-Y: ISIL != ISC");
        }
    }
    return res;
}

inline SuiteResult check_moore_penrose(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    for (int it = 0; it < iters; ++it) {
        ++res.run;
        const auto n = static_cast<std::size_t>(gen.uniform_int(1, 4));
        const auto m = static_cast<std::size_t>(
            gen.uniform_int(static_cast<int>(n), static_cast<int>(n) + 4));
        const Mat a = gen.random_surjection(m, n);
        const Mat p = pseudo_inverse(a);
        const Mat prod = matmul(a, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (std::abs(prod.at(i, j) - (i == j ? 1.0 : 0.0)) > 1e-12)
                    res.fail("M2: alpha*pinv != I");
        if (!is_column_stochastic(p)) res.fail("pinv not column-stochastic");
        for (std::size_t c = 0; c < p.cols; ++c) {
            double nz = -1.0;
            for (std::size_t r = 0; r < p.rows; ++r) {
                const double v = p.at(r, c);
                if (v == 0.0) continue;
                if (nz < 0.0) nz = v;
                else if (v != nz) res.fail("M3: pullback column not uniform");
            }
        }
    }
    return res;
}

inline SuiteResult check_order_preservation_sentinel(std::uint64_t seed, int iters) {
    testgen::Gen gen(seed);
    SuiteResult res;
    while (res.run < iters) {
        // preserving instance: finite overall error
        RandomPairInstance inst;
        if (!make_pair_instance(gen, inst, 0)) continue;
        if (!validate_abstraction(inst.abs, inst.base, inst.high).empty()) continue;
        ++res.run;
        const auto set = build_assessment_set(AssessmentKind::Custom, inst.high,
                                              {{inst.x_set, inst.y_set}});
        const auto rep =
            overall_error(MeasureKind::ISC, inst.base, inst.high, inst.abs, set, Aggregator::Sup);
        if (rep.overall.infinite) res.fail("order-preserving abstraction reported infinite");

        // reversing instance: infinite sentinel, no pairs evaluated
        Scm chain2({{"A", {"0", "1"}}, {"B", {"0", "1"}}}, {{"A", "B"}},
                   {{"A", {{}, gen.random_stochastic(2, 1)}},
                    {"B", {{"A"}, gen.random_stochastic(2, 2)}}});
        Scm rev({{"A'", {"0", "1"}}, {"B'", {"0", "1"}}}, {{"B'", "A'"}},
                {{"B'", {{}, gen.random_stochastic(2, 1)}},
                 {"A'", {{"B'"}, gen.random_stochastic(2, 2)}}});
        Abstraction swap;
        swap.relevant = {"A", "B"};
        swap.var_map = {{"A", "A'"}, {"B", "B'"}};
        swap.alphas["A'"] = Mat::identity(2);
        swap.alphas["B'"] = Mat::identity(2);
        const auto set2 = build_assessment_set(AssessmentKind::Custom, rev, {{{"A'"}, {"B'"}}});
        const auto rep2 = overall_error(MeasureKind::IC, chain2, rev, swap, set2, Aggregator::Sup);
        if (!rep2.overall.infinite || !rep2.breakdown.empty())
            res.fail("order-violating abstraction not reported infinite");
    }
    return res;
}

} // namespace propsuite
