// causalabs: validate, evaluate, learn and sample finite discrete SCM
// abstractions from the command line.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "causalabs/kernels.hpp"
#include "causalabs/learner.hpp"
#include "causalabs/measures.hpp"
#include "causalabs/model_io.hpp"
#include "causalabs/sampling.hpp"
#include "causalabs/scenarios.hpp"

namespace {

using namespace causalabs;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) throw std::runtime_error("cannot write output file: " + path);
            os = &file;
        }
    }
    template <typename T>
    Output& operator<<(const T& v) {
        *os << v;
        return *this;
    }
};

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    in >> j;
    return j;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<VarSetPair> load_pairs_file(const std::string& path) {
    const json j = read_json(path);
    std::vector<VarSetPair> pairs;
    for (const auto& p : j.at("pairs")) {
        VarSetPair pr;
        for (const auto& x : p.at(0)) pr.first.push_back(x.get<std::string>());
        for (const auto& y : p.at(1)) pr.second.push_back(y.get<std::string>());
        pairs.push_back(std::move(pr));
    }
    return pairs;
}

struct CommonArgs {
    std::string base_path, high_path, abs_path, scenario;
    std::string measure = "ic";
    std::string assessment = "causal";
    std::string pairs_path;
    std::string agg = "sup";
    std::size_t n = 10000;
    std::size_t reps = 10;
    std::uint64_t seed = 0;
    std::string out;
    std::size_t max_pairs = kDefaultMaxPairs;
    std::size_t max_candidates = kDefaultMaxCandidates;
};

struct LoadedProblem {
    Scm base, high;
    Abstraction abs;
    std::optional<ScenarioBundle> bundle;
};

LoadedProblem load_problem(const CommonArgs& a, bool need_abs) {
    LoadedProblem p;
    if (!a.scenario.empty()) {
        ScenarioBundle b = a.scenario == "health"       ? build_health_scenario()
                           : a.scenario == "lungcancer" ? build_lungcancer_scenario()
                                                        : throw std::invalid_argument(
                                                              "unknown scenario: " + a.scenario);
        p.base = b.base;
        p.high = b.high;
        p.abs = b.abstraction;
        p.bundle = std::move(b);
        return p;
    }
    if (a.base_path.empty()) throw std::invalid_argument("--base is required");
    p.base = load_scm(a.base_path);
    if (!a.high_path.empty()) p.high = load_scm(a.high_path);
    if (need_abs) {
        if (a.abs_path.empty()) throw std::invalid_argument("--abs is required");
        p.abs = load_abstraction(a.abs_path, p.base);
    } else if (!a.abs_path.empty()) {
        p.abs = load_abstraction(a.abs_path, p.base);
    }
    return p;
}

AssessmentSet resolve_assessment(const CommonArgs& a, const LoadedProblem& p) {
    if (p.bundle) {
        auto it = p.bundle->assessments.find(a.assessment);
        if (it != p.bundle->assessments.end()) return it->second;
    }
    const auto kind = parse_assessment(a.assessment);
    if (!kind) throw std::invalid_argument("unknown assessment kind: " + a.assessment);
    std::vector<VarSetPair> custom;
    if (*kind == AssessmentKind::Custom) {
        if (a.pairs_path.empty()) throw std::invalid_argument("custom assessment requires --pairs");
        custom = load_pairs_file(a.pairs_path);
    }
    return build_assessment_set(*kind, p.high, custom, a.max_pairs);
}

int cmd_validate(const CommonArgs& a, const std::vector<std::string>& extra) {
    bool any_violation = false;
    Output out(a.out);

    Scm base, high;
    bool have_base = false, have_high = false;
    auto report = [&](const std::string& what, const std::vector<std::string>& bad) {
        for (const auto& b : bad) out << what << ": " << b << "\n";
        any_violation |= !bad.empty();
    };
    if (!a.base_path.empty()) {
        base = load_scm(a.base_path);
        have_base = true;
        report(a.base_path, validate_scm(base));
    }
    if (!a.high_path.empty()) {
        high = load_scm(a.high_path);
        have_high = true;
        report(a.high_path, validate_scm(high));
    }
    for (const auto& path : extra) report(path, validate_scm(load_scm(path)));
    if (!a.abs_path.empty()) {
        if (!have_base || !have_high)
            throw std::invalid_argument("validating an abstraction requires --base and --high");
        const Abstraction abs = load_abstraction(a.abs_path, base);
        report(a.abs_path, validate_partial_abstraction(abs, base, high));
    }
    return any_violation ? kExitDomain : kExitOk;
}

int cmd_evaluate(const CommonArgs& a) {
    const LoadedProblem p = load_problem(a, true);
    const auto kind = parse_measure(a.measure);
    if (!kind) throw std::invalid_argument("unknown measure: " + a.measure);
    const auto agg = parse_aggregator(a.agg);
    if (!agg) throw std::invalid_argument("unknown aggregator: " + a.agg);

    ErrorReport report;
    try {
        const AssessmentSet set = resolve_assessment(a, p);
        report = overall_error(*kind, p.base, p.high, p.abs, set, *agg);
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    }
    Output out(a.out);
    out << "measure,x_set,y_set,error,overall\n";
    for (const auto& pe : report.breakdown)
        out << a.measure << "," << join(pe.pair.first, "|") << "," << join(pe.pair.second, "|")
            << "," << fmt6(pe.error) << ",\n";
    out << a.measure << ",overall,,,"
        << (report.overall.infinite ? std::string("inf") : fmt6(report.overall.value)) << "\n";
    return kExitOk;
}

CandidateSpace space_for_learn(const CommonArgs& a, const LoadedProblem& p,
                               const std::string& mech_path) {
    if (p.bundle) return p.bundle->space;
    CandidateSpace space = default_candidate_space(p.base, p.high, p.abs);
    if (!mech_path.empty()) {
        const json j = read_json(mech_path);
        for (const auto& [var, list] : j.items()) {
            MechanismSlot slot;
            slot.variable = var;
            for (const auto& mj : list) {
                Mat m(mj.size(), mj.at(0).size());
                for (std::size_t r = 0; r < m.rows; ++r)
                    for (std::size_t c = 0; c < m.cols; ++c)
                        m.at(r, c) = mj.at(r).at(c).get<double>();
                slot.candidates.push_back(std::move(m));
            }
            space.mechanism_slots.push_back(std::move(slot));
        }
    }
    return space;
}

int cmd_learn(const CommonArgs& a, const std::string& mech_path, const std::string& out_abs,
              const std::string& out_high) {
    const LoadedProblem p = load_problem(a, true);
    const auto kind = parse_measure(a.measure);
    if (!kind) throw std::invalid_argument("unknown measure: " + a.measure);
    const auto agg = parse_aggregator(a.agg);
    if (!agg) throw std::invalid_argument("unknown aggregator: " + a.agg);
    LearnResult res;
    CandidateSpace space;
    try {
        const AssessmentSet set = resolve_assessment(a, p);
        space = space_for_learn(a, p, mech_path);
        res = learn(p.base, p.high, p.abs, *kind, set, *agg, space, a.max_candidates);
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitDomain;
    }

    Output out(a.out);
    out << "rank,candidate,error,selection\n";
    if (res.none) {
        out << "1,none,inf,order-preservation-violated\n";
        return kExitOk;
    }
    std::size_t rank = 1;
    for (const auto& rc : res.ranking) {
        std::string sel;
        for (std::size_t i = 0; i < rc.mech_choice.size(); ++i)
            sel += "mech:" + space.mechanism_slots[i].variable + "=" +
                   std::to_string(rc.mech_choice[i]) + ";";
        for (std::size_t i = 0; i < rc.alpha_choice.size(); ++i)
            sel += "alpha:" + space.alpha_slots[i].variable + "=" +
                   std::to_string(rc.alpha_choice[i]) + ";";
        out << rank++ << "," << rc.index << "," << fmt6(rc.error.value) << "," << sanitize(sel)
            << "\n";
    }
    if (!out_abs.empty()) save_abstraction(res.best, p.base, out_abs);
    if (!out_high.empty()) save_scm(res.best_high, out_high);
    return kExitOk;
}

int cmd_sample(const CommonArgs& a, const std::string& queries_path) {
    const LoadedProblem p = load_problem(a, false);
    if (queries_path.empty()) throw std::invalid_argument("--queries is required");
    const json qj = read_json(queries_path);

    Output out(a.out);
    out << "kind,do,target,n,reps,seed,rng,status,mean,std\n";

    for (const auto& q : qj.at("queries")) {
        const std::string kind = q.at("kind").get<std::string>();
        Intervention iv;
        std::vector<std::string> do_desc;
        if (q.contains("do"))
            for (const auto& [var, val] : q.at("do").items()) {
                iv.targets.push_back(var);
                iv.values.push_back(val.get<std::string>());
                do_desc.push_back(var + "=" + val.get<std::string>());
            }
        std::string target_desc;
        try {
            const json& tj = q.at("target");
            const std::string tval = tj.at("value").get<std::string>();
            const bool alpha_target = tj.contains("alpha_of");

            const Scm* model = (kind == "high") ? &p.high : &p.base;
            std::vector<double> means;
            for (std::size_t rep = 0; rep < a.reps; ++rep) {
                const std::uint64_t seed = a.seed + rep;
                std::vector<std::uint64_t> counts;
                if (kind == "base") {
                    counts = forward_sample(p.base, iv.targets.empty()
                                                         ? std::optional<Intervention>{}
                                                         : std::optional<Intervention>{iv},
                                            a.n, seed);
                } else if (kind == "high") {
                    counts = forward_sample(p.high, iv.targets.empty()
                                                         ? std::optional<Intervention>{}
                                                         : std::optional<Intervention>{iv},
                                            a.n, seed);
                } else if (kind == "pullback") {
                    counts = pullback_intervention_sample(p.base, p.abs, p.high, iv, a.n, seed);
                } else if (kind == "hybrid") {
                    std::vector<std::string> replaced, driver;
                    for (const auto& r : q.at("replaced")) replaced.push_back(r.get<std::string>());
                    for (const auto& d : q.at("driver")) driver.push_back(d.get<std::string>());
                    counts = hybrid_sample(p.base, p.abs, p.high, replaced, driver,
                                           iv.targets.empty() ? std::optional<Intervention>{}
                                                              : std::optional<Intervention>{iv},
                                           a.n, seed);
                } else {
                    throw std::runtime_error("unknown query kind: " + kind);
                }

                const OutcomeSpace space = model->full_space();
                std::uint64_t hits = 0, total = 0;
                if (!alpha_target) {
                    const std::string tvar = tj.at("var").get<std::string>();
                    target_desc = tvar + "=" + tval;
                    const int vi = model->index_of(tvar);
                    if (vi < 0) throw std::runtime_error("unknown target variable: " + tvar);
                    const int want = model->outcome_index(tvar, tval);
                    if (want < 0) throw std::runtime_error("target value out of domain: " + tval);
                    std::vector<int> digits(space.arity());
                    for (std::size_t f = 0; f < counts.size(); ++f) {
                        if (!counts[f]) continue;
                        space.decode_into(f, digits);
                        total += counts[f];
                        if (digits[static_cast<std::size_t>(vi)] == want) hits += counts[f];
                    }
                } else {
                    const std::string hvar = tj.at("alpha_of").get<std::string>();
                    target_desc = "alpha(" + hvar + ")=" + tval;
                    if (kind == "high")
                        throw std::runtime_error("alpha_of targets apply to base-space queries");
                    const LiftedAlpha la = alpha_for_set(p.abs, p.base, p.high, {hvar});
                    const int want = p.high.outcome_index(hvar, tval);
                    if (want < 0) throw std::runtime_error("target value out of domain: " + tval);
                    const OutcomeSpace ls = p.base.space(la.low_order);
                    std::vector<int> digits(space.arity());
                    std::vector<int> ldigits(la.low_order.size());
                    for (std::size_t f = 0; f < counts.size(); ++f) {
                        if (!counts[f]) continue;
                        space.decode_into(f, digits);
                        for (std::size_t i = 0; i < la.low_order.size(); ++i)
                            ldigits[i] =
                                digits[static_cast<std::size_t>(p.base.index_of(la.low_order[i]))];
                        total += counts[f];
                        if (la.m.at(static_cast<std::size_t>(want), ls.encode(ldigits)) == 1.0)
                            hits += counts[f];
                    }
                }
                means.push_back(static_cast<double>(hits) / static_cast<double>(total));
            }
            double mean = 0.0;
            for (double m : means) mean += m;
            mean /= static_cast<double>(means.size());
            double var = 0.0;
            for (double m : means) var += (m - mean) * (m - mean);
            const double sd = means.size() > 1
                                  ? std::sqrt(var / static_cast<double>(means.size() - 1))
                                  : 0.0;
            out << kind << "," << join(do_desc, "&") << "," << target_desc << "," << a.n << ","
                << a.reps << "," << a.seed << "," << kRngId << ",ok," << fmt6(mean) << ","
                << fmt6(sd) << "\n";
        } catch (const std::exception& e) {
            out << kind << "," << join(do_desc, "&") << "," << target_desc << "," << a.n << ","
                << a.reps << "," << a.seed << "," << kRngId << ",error:" << sanitize(e.what())
                << ",,\n";
        }
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite discrete SCM abstractions: evaluation and learning"};
    app.require_subcommand(1);

    CommonArgs a;
    std::string kernels = "auto";
    app.add_option("--kernels", kernels, "kernel variant: auto|scalar|avx2");

    auto add_common = [&](CLI::App* cmd, bool with_eval_opts) {
        cmd->add_option("--base", a.base_path, "base SCM file");
        cmd->add_option("--high", a.high_path, "high-level SCM file");
        cmd->add_option("--abs", a.abs_path, "abstraction file");
        cmd->add_option("--out", a.out, "output file (default stdout)");
        if (with_eval_opts) {
            cmd->add_option("--scenario", a.scenario, "bundled scenario: health|lungcancer");
            cmd->add_option("--measure", a.measure, "ic|iil|isil|isc")->capture_default_str();
            cmd->add_option("--assessment", a.assessment, "complete|causal|parental|custom")
                ->capture_default_str();
            cmd->add_option("--pairs", a.pairs_path, "custom assessment pairs file");
            cmd->add_option("--agg", a.agg, "sup|mean")->capture_default_str();
            cmd->add_option("--max-pairs", a.max_pairs, "assessment pair ceiling")
                ->capture_default_str();
            cmd->add_option("--max-candidates", a.max_candidates, "candidate-space ceiling")
                ->capture_default_str();
        }
    };

    std::vector<std::string> validate_extra;
    CLI::App* validate = app.add_subcommand("validate", "report invariant violations");
    add_common(validate, false);
    validate->add_option("models", validate_extra, "additional SCM files");

    CLI::App* evaluate = app.add_subcommand("evaluate", "per-pair errors and overall error");
    add_common(evaluate, true);

    std::string mech_path, out_abs, out_high;
    CLI::App* learn_cmd = app.add_subcommand("learn", "enumerate candidates, return the best");
    add_common(learn_cmd, true);
    learn_cmd->add_option("--mech-candidates", mech_path,
                          "JSON file of mechanism candidates per high variable");
    learn_cmd->add_option("--out-abs", out_abs, "write the best abstraction here");
    learn_cmd->add_option("--out-high", out_high, "write the selected high model here");

    std::string queries_path;
    CLI::App* sample = app.add_subcommand("sample", "empirical means over repetitions");
    add_common(sample, false);
    sample->add_option("--scenario", a.scenario, "bundled scenario: health|lungcancer");
    sample->add_option("--queries", queries_path, "queries JSON file")->required();
    sample->add_option("--n", a.n, "samples per repetition")->capture_default_str();
    sample->add_option("--reps", a.reps, "repetitions")->capture_default_str();
    sample->add_option("--seed", a.seed, "base seed")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (kernels != "auto") causalabs::kernels::select(kernels);
        if (validate->parsed()) return cmd_validate(a, validate_extra);
        if (evaluate->parsed()) return cmd_evaluate(a);
        if (learn_cmd->parsed()) return cmd_learn(a, mech_path, out_abs, out_high);
        if (sample->parsed()) return cmd_sample(a, queries_path);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
