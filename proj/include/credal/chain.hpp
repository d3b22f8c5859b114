#pragma once

#include <span>
#include <string>
#include <vector>

#include "credal/core.hpp"
#include "credal/data.hpp"
#include "credal/ncc.hpp"

namespace credal {

enum class Strategy { Precise, ImpreciseBranching, Marginalization };

std::string to_string(Strategy s);
Strategy parse_strategy(const std::string& name);

/// A fitted chain: label ordering plus per-position count tables.
/// Immutable after fit(); predictions are pure functions of the model.
struct ChainModel {
    std::vector<int> order;           // chain position -> original label index
    std::vector<CountTables> tables;  // one per chain position
    Hyperparams hp;

    int num_labels() const { return static_cast<int>(order.size()); }
    int num_features() const {
        return tables.empty() ? 0 : static_cast<int>(tables[0].n_x_given_y.size());
    }

    ChainModel with_s(double s) const {
        ChainModel copy = *this;
        copy.hp.s = s;
        return copy;
    }
};

/// Fits count tables at every chain position. `order` must be a permutation
/// of {0..m-1}; training labels may contain injected missing cells.
ChainModel fit(const DiscretizedDataset& train, std::vector<int> order, const Hyperparams& hp);

/// The per-position optimal completions of previously abstained labels
/// (one entry per abstained position, in the order given).
struct IbPaths {
    std::vector<PrefixAssign> lower;  // completion minimizing the lower bound
    std::vector<PrefixAssign> upper;  // completion maximizing the upper bound
};

/// Completions solving the branching optimization: for each abstained
/// position independently, the lower path takes the value maximizing
/// (n(y_k|y_j=0)+s)/n(y_k|y_j=1) and the upper path the value minimizing
/// n(y_k|y_j=0)/(n(y_k|y_j=1)+s). Ratios with zero denominator compare as
/// +inf, 0/0 as 0; ties break to value 0. One pass over the abstained set.
IbPaths ib_optimal_paths(const CountTables& tables, const Hyperparams& hp,
                         std::span<const int> abstained, OpCounts* ops = nullptr);

/// Imprecise-branching interval for Y_j = 1: bounds over all completions of
/// the abstained labels, computed via the optimal paths above.
ProbInterval ib_bounds(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j,
                       OpCounts* ops = nullptr);

/// Marginalization interval for Y_j = 1: abstained labels are dropped from
/// the conditioning; only determined labels contribute factors.
ProbInterval mar_bounds(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j,
                        OpCounts* ops = nullptr);

/// Exhaustive min/max over all 2^|abstained| completions. Reference
/// implementation of the branching strategy; |abstained| is capped at 20.
ProbInterval ib_brute_force(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j);

/// Interval produced at chain position j by the given strategy. Precise
/// uses the s = 0 posterior (degenerate interval) regardless of model.hp.s.
ProbInterval step_interval(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j,
                           Strategy strategy, OpCounts* ops = nullptr);

/// Walks the chain, deciding each label from its strategy interval and
/// feeding the outcome forward. Returns states in original label order.
PartialLabelVector predict(const ChainModel& model, std::span<const int> x, Strategy strategy,
                           OpCounts* ops = nullptr);

/// Precise baseline: the s = 0 chain with the >= 0.5 decision rule.
/// Never abstains.
PartialLabelVector predict_precise(const ChainModel& model, std::span<const int> x);

}  // namespace credal
