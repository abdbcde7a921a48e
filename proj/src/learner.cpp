#include "causalabs/learner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "causalabs/causal.hpp"

namespace causalabs {

std::vector<Mat> enumerate_surjections(std::size_t m, std::size_t n) {
    if (n < 1 || m < n)
        throw std::invalid_argument("enumerate_surjections: no surjections from " +
                                    std::to_string(m) + " onto " + std::to_string(n));
    double words = 1;
    for (std::size_t i = 0; i < m; ++i) words *= static_cast<double>(n);
    if (words > 1e7)
        throw std::invalid_argument("enumerate_surjections: assignment space too large");

    std::vector<Mat> out;
    std::vector<std::size_t> word(m, 0);
    while (true) {
        std::set<std::size_t> hit(word.begin(), word.end());
        if (hit.size() == n) {
            Mat a(n, m);
            for (std::size_t c = 0; c < m; ++c) a.at(word[c], c) = 1.0;
            out.push_back(std::move(a));
        }
        bool carried_out = true;
        for (std::size_t k = m; k-- > 0;) {
            if (++word[k] < n) {
                carried_out = false;
                break;
            }
            word[k] = 0;
        }
        if (carried_out) return out;
    }
}

std::size_t CandidateSpace::total() const {
    std::size_t t = 1;
    for (const auto& s : mechanism_slots) t *= s.candidates.size();
    for (const auto& s : alpha_slots) t *= s.candidates.size();
    return t;
}

CandidateSpace default_candidate_space(const Scm& base, const Scm& high,
                                       const Abstraction& partial) {
    CandidateSpace space;
    for (const auto& hv : high.variables()) {
        if (partial.alphas.count(hv.name)) continue;
        std::size_t m = 1;
        for (const auto& lo : partial.preimage(base, hv.name))
            m *= static_cast<std::size_t>(base.domain_size(lo));
        space.alpha_slots.push_back(
            {hv.name, enumerate_surjections(m, static_cast<std::size_t>(high.domain_size(hv.name)))});
    }
    return space;
}

namespace {

struct PairPlan {
    VarSetPair pair;                       // as listed in the assessment set
    std::vector<std::string> x_ordered;    // canonical high order
    std::vector<std::string> y_ordered;
    Mat mu;                                // base interventional matrix
    std::vector<Mat> nu_per_mech_combo;    // one per mechanism combination
};

Scm apply_mechanisms(const Scm& high, const CandidateSpace& space,
                     const std::vector<std::size_t>& mech_choice) {
    auto vars = high.variables();
    auto edges = high.edges();
    auto mechs = high.mechanisms();
    for (std::size_t i = 0; i < space.mechanism_slots.size(); ++i) {
        const auto& slot = space.mechanism_slots[i];
        auto it = mechs.find(slot.variable);
        if (it == mechs.end())
            throw std::invalid_argument("learn: mechanism slot for unknown variable " + slot.variable);
        it->second.matrix = slot.candidates[mech_choice[i]];
    }
    return Scm(std::move(vars), std::move(edges), std::move(mechs));
}

} // namespace

LearnResult learn(const Scm& base, const Scm& high_template, const Abstraction& partial,
                  MeasureKind kind, const AssessmentSet& set, Aggregator agg,
                  const CandidateSpace& space, std::size_t max_candidates) {
    {
        auto bad = validate_partial_abstraction(partial, base, high_template);
        if (!bad.empty()) throw std::invalid_argument("learn: " + bad.front());
    }
    if (set.pairs.empty()) throw std::invalid_argument("learn: empty assessment set");

    for (const auto& s : space.mechanism_slots)
        if (s.candidates.empty())
            throw std::invalid_argument("learn: empty candidate list for mechanism " + s.variable);
    for (const auto& s : space.alpha_slots) {
        if (s.candidates.empty())
            throw std::invalid_argument("learn: empty candidate list for alpha " + s.variable);
        if (partial.alphas.count(s.variable))
            throw std::invalid_argument("learn: alpha slot duplicates specified alpha " + s.variable);
        for (const auto& c : s.candidates)
            if (!is_binary_surjection(c))
                throw std::invalid_argument("learn: candidate alpha not a binary surjection for " +
                                            s.variable);
    }
    for (const auto& hv : high_template.variables()) {
        if (partial.alphas.count(hv.name)) continue;
        bool has_slot = false;
        for (const auto& s : space.alpha_slots) has_slot |= s.variable == hv.name;
        if (!has_slot)
            throw std::invalid_argument("learn: no candidates for missing alpha " + hv.name);
    }

    const std::size_t total = space.total();
    if (total == 0) throw std::invalid_argument("learn: empty candidate space");
    if (total > max_candidates)
        throw std::runtime_error("learn: candidate space size " + std::to_string(total) +
                                 " exceeds cap " + std::to_string(max_candidates) +
                                 "; raise --max-candidates to override");

    LearnResult result;
    if (!is_order_preserving(partial, base, high_template)) {
        result.none = true;
        result.best_error = MaybeInfiniteError::inf();
        return result;
    }

    // Interventional matrices do not depend on the candidate alphas, and on
    // the mechanism choice only through nu; hoist them out of the scan.
    std::size_t mech_combos = 1;
    for (const auto& s : space.mechanism_slots) mech_combos *= s.candidates.size();

    std::vector<PairPlan> plans;
    plans.reserve(set.pairs.size());
    for (const auto& pr : set.pairs) {
        PairPlan plan;
        plan.pair = pr;
        plan.x_ordered = high_template.canonical_sorted(pr.first);
        plan.y_ordered = high_template.canonical_sorted(pr.second);
        std::vector<std::string> low_x, low_y;
        for (const auto& hv : plan.x_ordered) {
            const auto pre = partial.preimage(base, hv);
            if (pre.empty()) throw std::invalid_argument("pair touches unabstracted variables: " + hv);
            low_x.insert(low_x.end(), pre.begin(), pre.end());
        }
        for (const auto& hv : plan.y_ordered) {
            const auto pre = partial.preimage(base, hv);
            if (pre.empty()) throw std::invalid_argument("pair touches unabstracted variables: " + hv);
            low_y.insert(low_y.end(), pre.begin(), pre.end());
        }
        plan.mu = interventional_matrix(base, low_x, low_y).m;
        plan.nu_per_mech_combo.reserve(mech_combos);
        plans.push_back(std::move(plan));
    }
    {
        std::vector<std::size_t> mech_choice(space.mechanism_slots.size(), 0);
        for (std::size_t combo = 0; combo < mech_combos; ++combo) {
            std::size_t rem = combo;
            for (std::size_t i = space.mechanism_slots.size(); i-- > 0;) {
                mech_choice[i] = rem % space.mechanism_slots[i].candidates.size();
                rem /= space.mechanism_slots[i].candidates.size();
            }
            const Scm high = apply_mechanisms(high_template, space, mech_choice);
            {
                auto bad = validate_scm(high);
                if (!bad.empty())
                    throw std::invalid_argument("learn: mechanism candidate invalid: " + bad.front());
            }
            for (auto& plan : plans)
                plan.nu_per_mech_combo.push_back(
                    interventional_matrix(high, plan.x_ordered, plan.y_ordered).m);
        }
    }

    const std::size_t n_alpha = space.alpha_slots.size();
    std::vector<std::size_t> alpha_choice(n_alpha, 0);
    std::vector<std::size_t> mech_choice(space.mechanism_slots.size(), 0);
    result.ranking.reserve(total);

    std::size_t best_index = 0;
    double best_value = 0.0;
    bool have_best = false;

    Abstraction candidate = partial;
    for (std::size_t index = 0; index < total; ++index) {
        // Decode the flat candidate index: mechanism slots slowest, then
        // alpha slots, last slot fastest.
        std::size_t rem = index;
        for (std::size_t i = n_alpha; i-- > 0;) {
            alpha_choice[i] = rem % space.alpha_slots[i].candidates.size();
            rem /= space.alpha_slots[i].candidates.size();
        }
        for (std::size_t i = space.mechanism_slots.size(); i-- > 0;) {
            mech_choice[i] = rem % space.mechanism_slots[i].candidates.size();
            rem /= space.mechanism_slots[i].candidates.size();
        }
        std::size_t combo = 0;
        for (std::size_t i = 0; i < mech_choice.size(); ++i)
            combo = combo * space.mechanism_slots[i].candidates.size() + mech_choice[i];

        for (std::size_t i = 0; i < n_alpha; ++i)
            candidate.alphas[space.alpha_slots[i].variable] =
                space.alpha_slots[i].candidates[alpha_choice[i]];

        double sup = 0.0, sum = 0.0;
        for (const auto& plan : plans) {
            Mat ax, ay;
            bool first = true;
            for (const auto& hv : plan.x_ordered) {
                const Mat& a = candidate.alphas.at(hv);
                ax = first ? a : kron(ax, a);
                first = false;
            }
            first = true;
            for (const auto& hv : plan.y_ordered) {
                const Mat& a = candidate.alphas.at(hv);
                ay = first ? a : kron(ay, a);
                first = false;
            }
            const Mat& mu = plan.mu;
            const Mat& nu = plan.nu_per_mech_combo[combo];
            double e = 0.0;
            switch (kind) {
                case MeasureKind::IC:
                    e = matrix_distance(matmul(ay, mu), matmul(nu, ax));
                    break;
                case MeasureKind::IIL:
                    e = matrix_distance(mu, matmul(pseudo_inverse(ay), matmul(nu, ax)));
                    break;
                case MeasureKind::ISIL:
                    e = matrix_distance(nu, matmul(ay, matmul(mu, pseudo_inverse(ax))));
                    break;
                case MeasureKind::ISC:
                    e = matrix_distance(matmul(pseudo_inverse(ay), nu),
                                        matmul(mu, pseudo_inverse(ax)));
                    break;
            }
            sup = std::max(sup, e);
            sum += e;
        }
        const double value =
            agg == Aggregator::Sup ? sup : sum / static_cast<double>(plans.size());

        RankedCandidate rc;
        rc.index = index;
        rc.mech_choice = mech_choice;
        rc.alpha_choice = alpha_choice;
        rc.error = MaybeInfiniteError::finite(value);
        result.ranking.push_back(std::move(rc));

        if (!have_best || value < best_value) {
            have_best = true;
            best_value = value;
            best_index = index;
        }
    }

    std::stable_sort(result.ranking.begin(), result.ranking.end(),
                     [](const RankedCandidate& a, const RankedCandidate& b) {
                         if (a.error.value != b.error.value) return a.error.value < b.error.value;
                         return a.index < b.index;
                     });

    const RankedCandidate* winner = nullptr;
    for (const auto& rc : result.ranking)
        if (rc.index == best_index) {
            winner = &rc;
            break;
        }
    result.best = partial;
    for (std::size_t i = 0; i < n_alpha; ++i)
        result.best.alphas[space.alpha_slots[i].variable] =
            space.alpha_slots[i].candidates[winner->alpha_choice[i]];
    result.best_mech_choice = winner->mech_choice;
    result.best_high = apply_mechanisms(high_template, space, winner->mech_choice);
    result.best_error = MaybeInfiniteError::finite(best_value);
    return result;
}

} // namespace causalabs
