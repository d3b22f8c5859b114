#include "credal/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace credal {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Precise: return "precise";
        case Strategy::ImpreciseBranching: return "ib";
        default: return "mar";
    }
}

Strategy parse_strategy(const std::string& name) {
    if (name == "precise") return Strategy::Precise;
    if (name == "ib") return Strategy::ImpreciseBranching;
    if (name == "mar") return Strategy::Marginalization;
    throw std::invalid_argument("unknown strategy '" + name + "' (expected precise|ib|mar)");
}

ChainModel fit(const DiscretizedDataset& train, std::vector<int> order, const Hyperparams& hp) {
    const int m = static_cast<int>(train.num_labels());
    if (static_cast<int>(order.size()) != m)
        throw FitError("order length does not match label count");
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    for (int idx : order) {
        if (idx < 0 || idx >= m || seen[static_cast<std::size_t>(idx)])
            throw FitError("order is not a permutation of the label indices");
        seen[static_cast<std::size_t>(idx)] = true;
    }
    if (train.num_instances() == 0) throw FitError("cannot fit on an empty dataset");

    ChainModel model;
    model.hp = hp;
    model.order = std::move(order);
    model.tables.reserve(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) model.tables.push_back(fit_counts(train, model.order, j));
    return model;
}

namespace {

// Compares a_num/a_den vs b_num/b_den with x/0 := +inf (x > 0) and 0/0 := 0.
// Returns <0, 0, >0.
int compare_ratio(double a_num, double a_den, double b_num, double b_den) {
    const bool a_inf = a_den == 0.0 && a_num > 0.0;
    const bool b_inf = b_den == 0.0 && b_num > 0.0;
    if (a_inf || b_inf) return a_inf == b_inf ? 0 : (a_inf ? 1 : -1);
    if (a_den == 0.0) a_num = 0.0, a_den = 1.0;
    if (b_den == 0.0) b_num = 0.0, b_den = 1.0;
    const double lhs = a_num * b_den;
    const double rhs = b_num * a_den;
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

std::vector<PrefixAssign> determined_prefix(const IndexSets& ctx) {
    std::vector<PrefixAssign> prefix;
    prefix.reserve(ctx.relevant.size() + ctx.irrelevant.size());
    for (int k : ctx.relevant) prefix.push_back({k, 1});
    for (int k : ctx.irrelevant) prefix.push_back({k, 0});
    return prefix;
}

void check_context(const ChainModel& model, const IndexSets& ctx, int j) {
    if (j < 0 || j >= model.num_labels()) throw std::invalid_argument("chain position out of range");
    if (ctx.total() != static_cast<std::size_t>(j))
        throw std::invalid_argument("context does not cover exactly the first " + std::to_string(j) +
                                    " chain positions");
}

}  // namespace

IbPaths ib_optimal_paths(const CountTables& tables, const Hyperparams& hp,
                         std::span<const int> abstained, OpCounts* ops) {
    IbPaths paths;
    paths.lower.reserve(abstained.size());
    paths.upper.reserve(abstained.size());
    const double s = hp.s;
    for (int k : abstained) {
        if (ops) ++ops->path_steps;
        const auto& c = tables.n_prev_given_y[static_cast<std::size_t>(k)];
        const auto n = [&](int value, int cls) { return static_cast<double>(c[value][cls]); };
        // lower path: argmax_b (n(b|0)+s)/n(b|1); tie keeps b = 0
        int b_lo = compare_ratio(n(1, 0) + s, n(1, 1), n(0, 0) + s, n(0, 1)) > 0 ? 1 : 0;
        // upper path: argmin_b n(b|0)/(n(b|1)+s)
        int b_up = compare_ratio(n(1, 0), n(1, 1) + s, n(0, 0), n(0, 1) + s) < 0 ? 1 : 0;
        paths.lower.push_back({k, b_lo});
        paths.upper.push_back({k, b_up});
    }
    return paths;
}

ProbInterval ib_bounds(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j,
                       OpCounts* ops) {
    check_context(model, ctx, j);
    const CountTables& t = model.tables[static_cast<std::size_t>(j)];
    const auto base = determined_prefix(ctx);
    const IbPaths paths = ib_optimal_paths(t, model.hp, ctx.abstained, ops);

    auto prefix = base;
    prefix.insert(prefix.end(), paths.lower.begin(), paths.lower.end());
    const double lower = ncc_bounds(t, model.hp, x, prefix, ops).lower;

    prefix.assign(base.begin(), base.end());
    prefix.insert(prefix.end(), paths.upper.begin(), paths.upper.end());
    const double upper = ncc_bounds(t, model.hp, x, prefix, ops).upper;
    return ProbInterval(lower, upper);
}

ProbInterval mar_bounds(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j,
                        OpCounts* ops) {
    check_context(model, ctx, j);
    const CountTables& t = model.tables[static_cast<std::size_t>(j)];
    return ncc_bounds(t, model.hp, x, determined_prefix(ctx), ops);
}

ProbInterval ib_brute_force(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j) {
    check_context(model, ctx, j);
    const std::size_t a = ctx.abstained.size();
    if (a > 20) throw std::invalid_argument("abstained set too large for exhaustive branching");
    const CountTables& t = model.tables[static_cast<std::size_t>(j)];
    const auto base = determined_prefix(ctx);

    double lo = 1.0, hi = 0.0;
    auto prefix = base;
    prefix.resize(base.size() + a);
    for (std::uint64_t mask = 0; mask < (1ULL << a); ++mask) {
        for (std::size_t i = 0; i < a; ++i)
            prefix[base.size() + i] = {ctx.abstained[i], static_cast<int>((mask >> i) & 1U)};
        const ProbInterval iv = ncc_bounds(t, model.hp, x, prefix);
        lo = std::min(lo, iv.lower);
        hi = std::max(hi, iv.upper);
    }
    return ProbInterval(lo, hi);
}

ProbInterval step_interval(const ChainModel& model, std::span<const int> x, const IndexSets& ctx, int j,
                           Strategy strategy, OpCounts* ops) {
    switch (strategy) {
        case Strategy::Precise: {
            check_context(model, ctx, j);
            const Hyperparams precise{0.0, model.hp.laplace_alpha};
            return ncc_bounds(model.tables[static_cast<std::size_t>(j)], precise, x,
                              determined_prefix(ctx), ops);
        }
        case Strategy::ImpreciseBranching:
            return ib_bounds(model, x, ctx, j, ops);
        default:
            return mar_bounds(model, x, ctx, j, ops);
    }
}

PartialLabelVector predict(const ChainModel& model, std::span<const int> x, Strategy strategy,
                           OpCounts* ops) {
    const int m = model.num_labels();
    // a degenerate interval at exactly 0.5 resolves to 1 whenever the step
    // is precise, so the s = 0 chain reproduces the >= rule
    const bool tie_to_one = strategy == Strategy::Precise || model.hp.s == 0.0;
    PartialLabelVector out(static_cast<std::size_t>(m), LabelState::Abstain);
    IndexSets ctx;
    for (int j = 0; j < m; ++j) {
        const ProbInterval iv = step_interval(model, x, ctx, j, strategy, ops);
        const LabelState state = decide(iv, tie_to_one);
        ctx.record(j, state);
        out[static_cast<std::size_t>(model.order[static_cast<std::size_t>(j)])] = state;
    }
    return out;
}

PartialLabelVector predict_precise(const ChainModel& model, std::span<const int> x) {
    return predict(model, x, Strategy::Precise);
}

}  // namespace credal
