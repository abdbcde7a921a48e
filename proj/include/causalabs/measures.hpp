#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causalabs/abstraction.hpp"
#include "causalabs/scm.hpp"

namespace causalabs {

enum class MeasureKind { IC, IIL, ISIL, ISC };
enum class Aggregator { Sup, Mean };

const char* to_string(MeasureKind k);
const char* to_string(Aggregator a);
std::optional<MeasureKind> parse_measure(const std::string& s);
std::optional<Aggregator> parse_aggregator(const std::string& s);

// Jensen-Shannon distance, natural log, with the 0*log(0/.) = 0 convention.
// Result lies in [0, sqrt(ln 2)].
double jsd(std::span<const double> p, std::span<const double> q);

// Distance between stochastic functions of equal shape: supremum over
// columns of the per-column JSD.
double matrix_distance(const Mat& a, const Mat& b);

enum class AssessmentKind { Complete, Causal, Parental, Custom };

const char* to_string(AssessmentKind k);
std::optional<AssessmentKind> parse_assessment(const std::string& s);

using VarSetPair = std::pair<std::vector<std::string>, std::vector<std::string>>;

// Ordered list of disjoint non-empty (X', Y') high-level variable-set pairs.
// Sides are sorted by name and the list is ordered lexicographically, so the
// construction is deterministic.
struct AssessmentSet {
    AssessmentKind kind = AssessmentKind::Custom;
    std::vector<VarSetPair> pairs;
};

inline constexpr std::size_t kDefaultMaxPairs = 10000;

// complete: all disjoint non-empty pairs. causal: pairs where, after cutting
// the edges into X', every node of Y' is reachable from some node of X'.
// parental: { (Pa(Y'), {Y'}) } over non-root Y'. custom: the supplied list,
// validated. Complete enumeration is guarded by `max_pairs`.
AssessmentSet build_assessment_set(AssessmentKind kind, const Scm& high,
                                   const std::vector<VarSetPair>& custom_pairs = {},
                                   std::size_t max_pairs = kDefaultMaxPairs);

// Per-pair error of the chosen path measure (Table-1 composites):
//   IC   D(A_Y * mu,        nu * A_X)
//   IIL  D(mu,              A_Y+ * nu * A_X)
//   ISIL D(nu,              A_Y * mu * A_X+)
//   ISC  D(A_Y+ * nu,       mu * A_X+)
// with mu the base interventional matrix over the preimages and nu the
// high-level one.
double error_wrt_intervention(MeasureKind kind, const Scm& base, const Scm& high,
                              const Abstraction& abs, const std::vector<std::string>& x_set,
                              const std::vector<std::string>& y_set);

struct PairError {
    VarSetPair pair;
    double error = 0.0;
};

struct ErrorReport {
    MaybeInfiniteError overall;
    std::vector<PairError> breakdown; // empty when the order check short-circuits
};

// Aggregated error over an assessment set. Returns the infinite sentinel
// without evaluating any pair when the variable map is not order-preserving.
ErrorReport overall_error(MeasureKind kind, const Scm& base, const Scm& high,
                          const Abstraction& abs, const AssessmentSet& set, Aggregator agg);

} // namespace causalabs
