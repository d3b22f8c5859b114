#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "credal/core.hpp"
#include "credal/data.hpp"

namespace credal {

struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// IDM imprecision s and the Laplace smoothing applied to the precise
/// class marginal. alpha is always applied, not only on zero counts.
struct Hyperparams {
    double s = 1.0;
    double laplace_alpha = 1.0;
};

/// Work counters for the complexity contracts. bound_evals counts classifier
/// evaluations (one per posterior-bound computation); path_steps counts
/// abstained positions scanned while building branching paths.
struct OpCounts {
    std::uint64_t bound_evals = 0;
    std::uint64_t path_steps = 0;
    std::uint64_t total() const { return bound_evals + path_steps; }
};

/// Occurrence counts backing the classifier at one chain position j:
/// class counts for y_j, per-feature-bin counts conditioned on y_j, and
/// counts of every earlier chain label conditioned on y_j.
///
/// Counts cover instances where y_j is observed. Pairwise label counts use
/// only instances where both labels are observed, so for each earlier
/// position k, n_prev_given_y[k][0][a] + n_prev_given_y[k][1][a] <= n_y[a].
struct CountTables {
    int position = 0;  // chain position j, 0-based
    int label = 0;     // original label column index
    std::array<std::int64_t, 2> n_y{0, 0};
    std::vector<std::vector<std::array<std::int64_t, 2>>> n_x_given_y;      // [feature][bin][class]
    std::vector<std::array<std::array<std::int64_t, 2>, 2>> n_prev_given_y; // [k][value][class]

    std::int64_t observed() const { return n_y[0] + n_y[1]; }
};

/// Assignment of an earlier chain position used as conditioning evidence.
struct PrefixAssign {
    int position = 0;  // chain position k < j
    int value = 0;     // in {0, 1}
};

/// Counts for position j of the given chain order. Instances whose y_j is
/// missing are dropped entirely; pairwise counts additionally require the
/// earlier label to be observed.
CountTables fit_counts(const DiscretizedDataset& train, std::span<const int> order, int j);

/// IDM interval [count/(total+s), (count+s)/(total+s)]. A degenerate
/// total+s == 0 yields the vacuous [0, 1].
ProbInterval idm_interval(std::int64_t count, std::int64_t class_total, double s);

/// Laplace-smoothed precise marginal {P(y_j=0), P(y_j=1)}.
std::array<double, 2> marginal_prob(const std::array<std::int64_t, 2>& n_y, double laplace_alpha);

/// Posterior probability interval for Y_j = 1 given the instance's feature
/// bins and a set of earlier-label assignments.
///
/// lower = (1 + P(0) pU0(x) pU0(prefix) / P(1) pL1(x) pL1(prefix))^-1 and
/// symmetrically for upper, where pL/pU multiply per-factor IDM bounds
/// conditioned on the class. Products run in log space; a zero denominator
/// with zero numerator returns 0 (and at s == 0 a zero-total factor counts
/// as an exact zero), which keeps the s == 0 case identical to the precise
/// naive Bayes posterior. The interval for Y_j = 0 is dual() of the result.
ProbInterval ncc_bounds(const CountTables& tables, const Hyperparams& hp, std::span<const int> x,
                        std::span<const PrefixAssign> prefix, OpCounts* ops = nullptr);

}  // namespace credal
