#include "reference_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "causalabs/causal.hpp"

namespace refcheck {

namespace {

// Enumerate complete assignments as explicit digit vectors; probability is the
// straight product of mechanism entries, no shared expansion machinery.
struct Assignment {
    std::vector<int> digits;
    double prob;
};

std::vector<Assignment> enumerate_assignments(const Scm& scm) {
    const auto& vars = scm.variables();
    std::vector<Assignment> out;
    std::vector<int> digits(vars.size(), 0);
    while (true) {
        double prob = 1.0;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            const auto& mech = scm.mechanism(vars[v].name);
            long col = 0;
            for (const auto& pname : mech.parents) {
                const int pi = scm.index_of(pname);
                col = col * static_cast<long>(scm.variables()[static_cast<std::size_t>(pi)]
                                                  .outcomes.size()) +
                      digits[static_cast<std::size_t>(pi)];
            }
            prob *= mech.matrix.at(static_cast<std::size_t>(digits[v]),
                                   static_cast<std::size_t>(col));
        }
        out.push_back({digits, prob});
        std::size_t k = vars.size();
        bool done = true;
        while (k-- > 0) {
            if (++digits[k] < static_cast<int>(vars[k].outcomes.size())) {
                done = false;
                break;
            }
            digits[k] = 0;
        }
        if (done) break;
    }
    return out;
}

long flat_of(const Scm& scm, const std::vector<std::string>& names,
             const std::vector<int>& digits) {
    long f = 0;
    for (const auto& n : names) {
        const int i = scm.index_of(n);
        f = f * static_cast<long>(scm.variables()[static_cast<std::size_t>(i)].outcomes.size()) +
            digits[static_cast<std::size_t>(i)];
    }
    return f;
}

Mat naive_matmul(const Mat& a, const Mat& b) {
    if (a.cols != b.rows) throw std::logic_error("refcheck: matmul shape");
    Mat c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += a.at(i, k) * b.at(k, j);
            c.at(i, j) = s;
        }
    return c;
}

Mat naive_kron(const Mat& a, const Mat& b) {
    Mat c(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < c.rows; ++i)
        for (std::size_t j = 0; j < c.cols; ++j)
            c.at(i, j) = a.at(i / b.rows, j / b.cols) * b.at(i % b.rows, j % b.cols);
    return c;
}

Mat naive_pinv(const Mat& a) {
    Mat out(a.cols, a.rows);
    for (std::size_t r = 0; r < a.rows; ++r) {
        double rs = 0.0;
        for (std::size_t c = 0; c < a.cols; ++c) rs += a.at(r, c);
        for (std::size_t c = 0; c < a.cols; ++c) out.at(c, r) = a.at(r, c) / rs;
    }
    return out;
}

double sup_column_jsd(const Mat& a, const Mat& b) {
    double worst = 0.0;
    for (std::size_t c = 0; c < a.cols; ++c) {
        std::vector<double> p(a.rows), q(a.rows);
        for (std::size_t r = 0; r < a.rows; ++r) {
            p[r] = a.at(r, c);
            q[r] = b.at(r, c);
        }
        worst = std::max(worst, jsd_ref(p, q));
    }
    return worst;
}

struct LiftedRef {
    Mat m;
    std::vector<std::string> low;
    std::vector<std::string> high;
};

LiftedRef lift(const Abstraction& abs, const Scm& base, const Scm& high,
               const std::vector<std::string>& set) {
    LiftedRef out;
    std::vector<std::string> ordered;
    for (const auto& hv : high.variables())
        if (std::find(set.begin(), set.end(), hv.name) != set.end()) ordered.push_back(hv.name);
    out.high = ordered;
    bool first = true;
    for (const auto& hv : ordered) {
        const auto pre = abs.preimage(base, hv);
        out.low.insert(out.low.end(), pre.begin(), pre.end());
        const Mat& a = abs.alphas.at(hv);
        out.m = first ? a : naive_kron(out.m, a);
        first = false;
    }
    return out;
}

} // namespace

Mat interventional_matrix_bruteforce(const Scm& scm, const std::vector<std::string>& xs,
                                     const std::vector<std::string>& ys) {
    long xtotal = 1, ytotal = 1;
    for (const auto& x : xs) xtotal *= scm.domain_size(x);
    for (const auto& y : ys) ytotal *= scm.domain_size(y);
    Mat m(static_cast<std::size_t>(ytotal), static_cast<std::size_t>(xtotal));

    for (long col = 0; col < xtotal; ++col) {
        // decode the column into target values, last variable fastest
        std::vector<int> xdigits(xs.size());
        long rem = col;
        for (std::size_t i = xs.size(); i-- > 0;) {
            const int d = scm.domain_size(xs[i]);
            xdigits[i] = static_cast<int>(rem % d);
            rem /= d;
        }
        causalabs::Intervention iv;
        iv.targets = xs;
        for (std::size_t i = 0; i < xs.size(); ++i)
            iv.values.push_back(scm.variable(xs[i]).outcomes[static_cast<std::size_t>(xdigits[i])]);
        const Scm cut = causalabs::intervene(scm, iv);
        for (const auto& asg : enumerate_assignments(cut))
            m.at(static_cast<std::size_t>(flat_of(cut, ys, asg.digits)),
                 static_cast<std::size_t>(col)) += asg.prob;
    }
    return m;
}

double jsd_ref(const std::vector<double>& p, const std::vector<double>& q) {
    double kl_pm = 0.0, kl_qm = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = (p[i] + q[i]) / 2.0;
        if (p[i] > 0.0) kl_pm += p[i] * std::log(p[i] / m);
        if (q[i] > 0.0) kl_qm += q[i] * std::log(q[i] / m);
    }
    const double d2 = 0.5 * kl_pm + 0.5 * kl_qm;
    return d2 > 0.0 ? std::sqrt(d2) : 0.0;
}

double pair_error_bruteforce(MeasureKind kind, const Scm& base, const Scm& high,
                             const Abstraction& abs, const std::vector<std::string>& x_set,
                             const std::vector<std::string>& y_set) {
    const LiftedRef ax = lift(abs, base, high, x_set);
    const LiftedRef ay = lift(abs, base, high, y_set);
    const Mat mu = interventional_matrix_bruteforce(base, ax.low, ay.low);
    const Mat nu = interventional_matrix_bruteforce(high, ax.high, ay.high);
    switch (kind) {
        case MeasureKind::IC:
            return sup_column_jsd(naive_matmul(ay.m, mu), naive_matmul(nu, ax.m));
        case MeasureKind::IIL:
            return sup_column_jsd(mu, naive_matmul(naive_pinv(ay.m), naive_matmul(nu, ax.m)));
        case MeasureKind::ISIL:
            return sup_column_jsd(nu, naive_matmul(ay.m, naive_matmul(mu, naive_pinv(ax.m))));
        case MeasureKind::ISC:
            return sup_column_jsd(naive_matmul(naive_pinv(ay.m), nu),
                                  naive_matmul(mu, naive_pinv(ax.m)));
    }
    throw std::logic_error("refcheck: bad measure kind");
}

double learner_minimum_bruteforce(const Scm& base, const Scm& high, const Abstraction& partial,
                                  MeasureKind kind,
                                  const std::vector<std::pair<std::vector<std::string>,
                                                              std::vector<std::string>>>& pairs,
                                  const std::vector<std::string>& slot_vars,
                                  const std::vector<std::vector<Mat>>& alphas_per_slot,
                                  const std::string& mech_var,
                                  const std::vector<Mat>& mech_candidates) {
    const std::size_t n_mech = mech_candidates.empty() ? 1 : mech_candidates.size();
    double best = -1.0;
    std::vector<std::size_t> choice(slot_vars.size(), 0);
    for (std::size_t mi = 0; mi < n_mech; ++mi) {
        Scm h = high;
        if (!mech_candidates.empty()) {
            auto vars = h.variables();
            auto edges = h.edges();
            auto mechs = h.mechanisms();
            mechs.at(mech_var).matrix = mech_candidates[mi];
            h = Scm(std::move(vars), std::move(edges), std::move(mechs));
        }
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
            Abstraction abs = partial;
            for (std::size_t i = 0; i < slot_vars.size(); ++i)
                abs.alphas[slot_vars[i]] = alphas_per_slot[i][choice[i]];
            double sup = 0.0;
            for (const auto& pr : pairs)
                sup = std::max(sup, pair_error_bruteforce(kind, base, h, abs, pr.first, pr.second));
            if (best < 0.0 || sup < best) best = sup;

            std::size_t k = slot_vars.size();
            bool done = true;
            while (k-- > 0) {
                if (++choice[k] < alphas_per_slot[k].size()) {
                    done = false;
                    break;
                }
                choice[k] = 0;
            }
            if (done) break;
        }
    }
    return best;
}

} // namespace refcheck
