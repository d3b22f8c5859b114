#pragma once

// Independent reference implementations used as test oracles. Everything
// here computes plain-double products directly from the count tables and
// must stay decoupled from the library's log-space inference path.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "credal/chain.hpp"
#include "credal/data.hpp"
#include "credal/ncc.hpp"
#include "credal/rng.hpp"

namespace oracles {

using credal::CountTables;
using credal::Hyperparams;
using credal::PrefixAssign;

inline double ratio_or_zero(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

inline double safe_posterior(double num1, double num0) {
    const double den = num1 + num0;
    if (den == 0.0) return 0.0;  // 0/0 convention
    return num1 / den;
}

// Precise naive-Bayes chain posterior: raw-count conditionals, Laplace
// smoothed marginal, direct products.
inline double nbc_posterior(const CountTables& t, double alpha, const std::vector<int>& x,
                            const std::vector<PrefixAssign>& prefix) {
    const double n0 = static_cast<double>(t.n_y[0]);
    const double n1 = static_cast<double>(t.n_y[1]);
    double num[2];
    const double den = n0 + n1 + 2.0 * alpha;
    num[0] = den == 0.0 ? 0.5 : (n0 + alpha) / den;
    num[1] = den == 0.0 ? 0.5 : (n1 + alpha) / den;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& c = t.n_x_given_y[i][static_cast<std::size_t>(x[i])];
        num[0] *= ratio_or_zero(static_cast<double>(c[0]), n0);
        num[1] *= ratio_or_zero(static_cast<double>(c[1]), n1);
    }
    for (const auto& pa : prefix) {
        const auto& c = t.n_prev_given_y[static_cast<std::size_t>(pa.position)];
        const auto b = static_cast<std::size_t>(pa.value);
        num[0] *= ratio_or_zero(static_cast<double>(c[b][0]), static_cast<double>(c[0][0] + c[1][0]));
        num[1] *= ratio_or_zero(static_cast<double>(c[b][1]), static_cast<double>(c[0][1] + c[1][1]));
    }
    return safe_posterior(num[1], num[0]);
}

// Credal-set vertex enumeration: every conditional factor of both classes
// independently at its lower or upper IDM extreme; returns the min/max of
// the resulting precise posteriors. Exponential -- keep p and |prefix| small.
inline credal::ProbInterval vertex_enumeration(const CountTables& t, const Hyperparams& hp,
                                               const std::vector<int>& x,
                                               const std::vector<PrefixAssign>& prefix) {
    struct Factor {
        double lo, hi;
        int cls;
    };
    std::vector<Factor> factors;
    auto push = [&](std::int64_t count, std::int64_t total, int cls) {
        const double den = static_cast<double>(total) + hp.s;
        if (den == 0.0) {
            factors.push_back({0.0, 0.0, cls});  // degenerate 0/0 factor
        } else {
            factors.push_back({static_cast<double>(count) / den,
                               (static_cast<double>(count) + hp.s) / den, cls});
        }
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& c = t.n_x_given_y[i][static_cast<std::size_t>(x[i])];
        push(c[0], t.n_y[0], 0);
        push(c[1], t.n_y[1], 1);
    }
    for (const auto& pa : prefix) {
        const auto& c = t.n_prev_given_y[static_cast<std::size_t>(pa.position)];
        const auto b = static_cast<std::size_t>(pa.value);
        push(c[b][0], c[0][0] + c[1][0], 0);
        push(c[b][1], c[0][1] + c[1][1], 1);
    }

    const auto pm = credal::marginal_prob(t.n_y, hp.laplace_alpha);
    double lo = 1.0, hi = 0.0;
    const std::size_t k = factors.size();
    for (std::uint64_t mask = 0; mask < (1ULL << k); ++mask) {
        double num[2] = {pm[0], pm[1]};
        for (std::size_t i = 0; i < k; ++i)
            num[factors[i].cls] *= ((mask >> i) & 1U) ? factors[i].hi : factors[i].lo;
        const double post = safe_posterior(num[1], num[0]);
        lo = std::min(lo, post);
        hi = std::max(hi, post);
    }
    return {lo, hi};
}

// Law-of-total-probability oracle for the marginalization strategy at s = 0:
// sums the precise naive-Bayes joint over all completions of the abstained
// labels instead of dropping them from the conditioning.
inline double total_probability_posterior(const CountTables& t, double alpha, const std::vector<int>& x,
                                          const std::vector<PrefixAssign>& determined,
                                          const std::vector<int>& abstained) {
    const std::size_t a = abstained.size();
    double sum[2] = {0.0, 0.0};
    for (std::uint64_t mask = 0; mask < (1ULL << a); ++mask) {
        auto prefix = determined;
        for (std::size_t i = 0; i < a; ++i)
            prefix.push_back({abstained[i], static_cast<int>((mask >> i) & 1U)});
        const double n0 = static_cast<double>(t.n_y[0]);
        const double n1 = static_cast<double>(t.n_y[1]);
        const double den = n0 + n1 + 2.0 * alpha;
        double num[2];
        num[0] = den == 0.0 ? 0.5 : (n0 + alpha) / den;
        num[1] = den == 0.0 ? 0.5 : (n1 + alpha) / den;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto& c = t.n_x_given_y[i][static_cast<std::size_t>(x[i])];
            num[0] *= ratio_or_zero(static_cast<double>(c[0]), n0);
            num[1] *= ratio_or_zero(static_cast<double>(c[1]), n1);
        }
        for (const auto& pa : prefix) {
            const auto& c = t.n_prev_given_y[static_cast<std::size_t>(pa.position)];
            const auto b = static_cast<std::size_t>(pa.value);
            num[0] *= ratio_or_zero(static_cast<double>(c[b][0]), static_cast<double>(c[0][0] + c[1][0]));
            num[1] *= ratio_or_zero(static_cast<double>(c[b][1]), static_cast<double>(c[0][1] + c[1][1]));
        }
        sum[0] += num[0];
        sum[1] += num[1];
    }
    return safe_posterior(sum[1], sum[0]);
}

// Set-accuracy by explicit enumeration of the completion set.
inline int set_accuracy_by_enumeration(const credal::PartialLabelVector& pred,
                                       const std::vector<std::int8_t>& truth) {
    std::vector<std::size_t> stars;
    for (std::size_t i = 0; i < pred.size(); ++i)
        if (pred[i] == credal::LabelState::Abstain) stars.push_back(i);
    for (std::uint64_t mask = 0; mask < (1ULL << stars.size()); ++mask) {
        bool match = true;
        for (std::size_t i = 0; i < pred.size() && match; ++i) {
            int value;
            if (pred[i] == credal::LabelState::Abstain) {
                const std::size_t si =
                    static_cast<std::size_t>(std::find(stars.begin(), stars.end(), i) - stars.begin());
                value = static_cast<int>((mask >> si) & 1U);
            } else {
                value = static_cast<int>(pred[i]);
            }
            if (value != truth[i]) match = false;
        }
        if (match) return 1;
    }
    return 0;
}

// Random dataset with mild feature/label structure. Labels stay fully
// observed; use credal::inject_missing afterwards for missingness.
inline credal::DiscretizedDataset random_dataset(std::uint64_t seed, int n, int p, int m,
                                                 int bins = 2) {
    credal::Rng rng(seed);
    credal::DiscretizedDataset ds;
    ds.bins.assign(static_cast<std::size_t>(p), bins);
    ds.features.resize(static_cast<std::size_t>(n));
    ds.labels.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        auto& feat = ds.features[static_cast<std::size_t>(r)];
        feat.resize(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) feat[static_cast<std::size_t>(i)] = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(bins)));
        auto& lab = ds.labels[static_cast<std::size_t>(r)];
        lab.resize(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j) {
            // correlate with the first feature and the previous label
            double bias = 0.35;
            if (p > 0 && feat[0] == 0) bias += 0.25;
            if (j > 0 && lab[static_cast<std::size_t>(j - 1)] == 1) bias += 0.15;
            lab[static_cast<std::size_t>(j)] = rng.uniform01() < bias ? 1 : 0;
        }
    }
    return ds;
}

}  // namespace oracles
