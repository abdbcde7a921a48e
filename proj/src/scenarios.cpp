#include "causalabs/scenarios.hpp"

#include <cstdlib>
#include <stdexcept>

#include "causalabs/model_io.hpp"

#ifndef CAUSALABS_DEFAULT_DATA_DIR
#define CAUSALABS_DEFAULT_DATA_DIR "data"
#endif

namespace causalabs {

namespace {

Variable binary(const std::string& name) { return {name, {"0", "1"}}; }

Mechanism root(std::initializer_list<double> probs) {
    Mat m(probs.size(), 1);
    std::size_t r = 0;
    for (double p : probs) m.at(r++, 0) = p;
    return {{}, std::move(m)};
}

Mechanism table(std::vector<std::string> parents,
                std::initializer_list<std::initializer_list<double>> rows) {
    return {std::move(parents), Mat::from_rows(rows)};
}

} // namespace

Fig1Models build_fig1_models() {
    Fig1Models f;
    f.chain = Scm({binary("Sm"), binary("Tar"), binary("LC")}, {{"Sm", "Tar"}, {"Tar", "LC"}},
                  {{"Sm", root({0.8, 0.2})},
                   {"Tar", table({"Sm"}, {{1.0, 0.2}, {0.0, 0.8}})},
                   {"LC", table({"Tar"}, {{0.9, 0.6}, {0.1, 0.4}})}});
    f.pair = Scm({binary("Sm'"), binary("Hea'")}, {{"Sm'", "Hea'"}},
                 {{"Sm'", root({0.5, 0.5})},
                  {"Hea'", table({"Sm'"}, {{0.4, 0.2}, {0.6, 0.8}})}});
    f.fork = Scm({{"Env''", {"0", "1", "2"}}, binary("Gen''"), binary("LC''")},
                 {{"Env''", "LC''"}, {"Gen''", "LC''"}},
                 {{"Env''", root({0.7, 0.1, 0.2})},
                  {"Gen''", root({0.3, 0.7})},
                  {"LC''", table({"Env''", "Gen''"}, {{0.7, 0.6, 0.5, 0.4, 0.4, 0.3},
                                                      {0.3, 0.4, 0.5, 0.6, 0.6, 0.7}})}});
    f.singleton = Scm({{"*", {"*"}}}, {}, {{"*", root({1.0})}});
    return f;
}

Abstraction build_fig1_abstraction() {
    Abstraction abs;
    abs.relevant = {"Sm", "LC"};
    abs.var_map = {{"Sm", "Sm'"}, {"LC", "Hea'"}};
    abs.alphas["Sm'"] = Mat::identity(2);
    abs.alphas["Hea'"] = Mat::identity(2);
    return abs;
}

std::string data_dir() {
    if (const char* env = std::getenv("ABSTRACTION_DATA_DIR")) return env;
    return CAUSALABS_DEFAULT_DATA_DIR;
}

Scm ingest_lucas(const std::string& path) {
    Scm scm;
    try {
        scm = load_scm(path);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("lucas ingestion failed: ") + e.what());
    }
    auto bad = validate_scm(scm);
    if (!bad.empty()) throw std::runtime_error("lucas ingestion failed: " + bad.front());
    if (scm.variables().size() != 12)
        throw std::runtime_error("lucas ingestion failed: expected 12 variables, got " +
                                 std::to_string(scm.variables().size()));
    if (scm.edges().size() != 12)
        throw std::runtime_error("lucas ingestion failed: expected 12 edges, got " +
                                 std::to_string(scm.edges().size()));
    for (const auto& v : scm.variables())
        if (v.outcomes.size() != 2)
            throw std::runtime_error("lucas ingestion failed: variable not binary: " + v.name);
    return scm;
}

ScenarioBundle build_health_scenario(const std::string& dir) {
    ScenarioBundle b;
    b.base = ingest_lucas(dir + "/lucas.json");
    b.high = build_fig1_models().pair;

    b.abstraction.relevant = {"Sm", "Cou", "Fat"};
    b.abstraction.var_map = {{"Sm", "Sm'"}, {"Cou", "Hea'"}, {"Fat", "Hea'"}};

    MechanismSlot nu;
    nu.variable = "Hea'";
    nu.candidates = {Mat::from_rows({{0.3, 0.2}, {0.7, 0.8}}),
                     Mat::from_rows({{0.4, 0.2}, {0.6, 0.8}}),
                     Mat::from_rows({{0.5, 0.2}, {0.5, 0.8}})};
    b.space = default_candidate_space(b.base, b.high, b.abstraction);
    b.space.mechanism_slots.push_back(std::move(nu));

    b.assessments["causal"] = build_assessment_set(AssessmentKind::Causal, b.high);
    b.assessments["parental"] = build_assessment_set(AssessmentKind::Parental, b.high);

    b.references = {
        {"health.learn.ic.optimum", 0.029, 0.002},
        {"health.learn.iil.optimum", 0.160, 0.002},
        // exam task: P(alpha_Hea'(Cou,Fat)=1 | do(Sm)) vs P(Hea'=1 | do(Sm'))
        {"health.exam.ic.low.do0", 0.607, 0.02},
        {"health.exam.ic.high.do0", 0.600, 0.02},
        {"health.exam.ic.low.do1", 0.797, 0.02},
        {"health.exam.ic.high.do1", 0.797, 0.02},
        {"health.exam.iil.low.do0", 0.413, 0.02},
        {"health.exam.iil.high.do0", 0.498, 0.02},
        {"health.exam.iil.low.do1", 0.681, 0.02},
        {"health.exam.iil.high.do1", 0.799, 0.02},
        // car-accident task: P(CA=1 | do(Sm)) plain and with the replaced block
        {"health.car.plain.do0", 0.679, 0.02},
        {"health.car.plain.do1", 0.766, 0.02},
        {"health.car.ic.do0", 0.256, 0.02},
        {"health.car.ic.do1", 0.341, 0.02},
        {"health.car.iil.do0", 0.427, 0.02},
        {"health.car.iil.do1", 0.680, 0.02},
    };
    return b;
}

ScenarioBundle build_lungcancer_scenario(const std::string& dir) {
    ScenarioBundle b;
    b.base = ingest_lucas(dir + "/lucas.json");
    b.high = build_fig1_models().fork;

    b.abstraction.relevant = {"Anx", "PP", "Gen", "All", "LC"};
    b.abstraction.var_map = {
        {"Anx", "Env''"}, {"PP", "Env''"}, {"Gen", "Gen''"}, {"All", "Gen''"}, {"LC", "LC''"}};
    b.space = default_candidate_space(b.base, b.high, b.abstraction);

    b.assessments["causal"] = build_assessment_set(AssessmentKind::Causal, b.high);
    b.assessments["parental"] = build_assessment_set(AssessmentKind::Parental, b.high);
    b.assessments["custom"] =
        build_assessment_set(AssessmentKind::Custom, b.high, {{{"Env''"}, {"LC''"}}});

    b.references = {
        {"lung.learn.isil.causal", 0.254, 0.002},
        {"lung.learn.isil.parental", 0.221, 0.002},
        {"lung.learn.isil.custom", 0.129, 0.002},
        // prediction task: P(LC''=1 | do(Env'')) on the high model, and
        // P(alpha_LC''(LC)=1 | do(pullback Env'')) on the base model per
        // optimizing assessment set
        {"lung.pred.high.do0", 0.445, 0.02},
        {"lung.pred.high.do1", 0.555, 0.02},
        {"lung.pred.high.do2", 0.655, 0.02},
        {"lung.pred.causal.do0", 0.194, 0.02},
        {"lung.pred.causal.do1", 0.271, 0.02},
        {"lung.pred.causal.do2", 0.438, 0.02},
        {"lung.pred.parental.do0", 0.563, 0.02},
        {"lung.pred.parental.do1", 0.730, 0.02},
        {"lung.pred.parental.do2", 0.807, 0.02},
        {"lung.pred.custom.do0", 0.557, 0.02},
        {"lung.pred.custom.do1", 0.730, 0.02},
        {"lung.pred.custom.do2", 0.806, 0.02},
    };
    return b;
}

} // namespace causalabs
