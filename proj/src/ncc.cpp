#include "credal/ncc.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace credal {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

CountTables fit_counts(const DiscretizedDataset& train, std::span<const int> order, int j) {
    const std::size_t n = train.num_instances();
    const std::size_t p = train.num_features();
    const std::size_t m = train.num_labels();
    if (j < 0 || static_cast<std::size_t>(j) >= order.size() || order.size() != m)
        throw FitError("chain position " + std::to_string(j) + " out of range");

    CountTables t;
    t.position = j;
    t.label = order[static_cast<std::size_t>(j)];
    t.n_x_given_y.resize(p);
    for (std::size_t i = 0; i < p; ++i)
        t.n_x_given_y[i].assign(static_cast<std::size_t>(train.bins[i]), {0, 0});
    t.n_prev_given_y.assign(static_cast<std::size_t>(j), {});

    for (std::size_t r = 0; r < n; ++r) {
        std::int8_t yj = train.labels[r][static_cast<std::size_t>(t.label)];
        if (yj == kMissingLabel) continue;
        ++t.n_y[static_cast<std::size_t>(yj)];
        for (std::size_t i = 0; i < p; ++i)
            ++t.n_x_given_y[i][static_cast<std::size_t>(train.features[r][i])][static_cast<std::size_t>(yj)];
        for (int k = 0; k < j; ++k) {
            std::int8_t yk = train.labels[r][static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
            if (yk == kMissingLabel) continue;  // pairwise deletion
            ++t.n_prev_given_y[static_cast<std::size_t>(k)][static_cast<std::size_t>(yk)]
                              [static_cast<std::size_t>(yj)];
        }
    }
    if (t.observed() == 0)
        throw FitError("label column " + std::to_string(t.label) + " has no observed values");
    return t;
}

ProbInterval idm_interval(std::int64_t count, std::int64_t class_total, double s) {
    if (s < 0.0) throw std::invalid_argument("IDM parameter s must be nonnegative");
    if (count < 0 || count > class_total)
        throw std::invalid_argument("count outside [0, class_total]");
    const double den = static_cast<double>(class_total) + s;
    if (den == 0.0) return ProbInterval(0.0, 1.0);  // total ignorance
    return ProbInterval(static_cast<double>(count) / den, (static_cast<double>(count) + s) / den);
}

std::array<double, 2> marginal_prob(const std::array<std::int64_t, 2>& n_y, double laplace_alpha) {
    const double den = static_cast<double>(n_y[0] + n_y[1]) + 2.0 * laplace_alpha;
    if (den == 0.0) return {0.5, 0.5};  // no data, no smoothing
    return {(static_cast<double>(n_y[0]) + laplace_alpha) / den,
            (static_cast<double>(n_y[1]) + laplace_alpha) / den};
}

namespace {

// Log-space accumulators for the four conditional products: lower/upper of
// prod P(.|y_j=0) and prod P(.|y_j=1). Zero factors contribute -inf.
struct LogProducts {
    double lo[2] = {0.0, 0.0};
    double hi[2] = {0.0, 0.0};

    void add(int cls, std::int64_t count, std::int64_t total, double s) {
        const double den = static_cast<double>(total) + s;
        if (den == 0.0) {
            // 0/0 factor; counts as an exact zero so the s == 0 chain
            // matches the precise posterior convention
            lo[cls] = hi[cls] = kNegInf;
            return;
        }
        const double log_den = std::log(den);
        lo[cls] += std::log(static_cast<double>(count)) - log_den;
        hi[cls] += std::log(static_cast<double>(count) + s) - log_den;
    }
};

// B/(B+A) from log-space terms, with the 0/0 -> 0 convention.
double posterior_from_logs(double log_b, double log_a) {
    if (log_b == kNegInf) return 0.0;
    if (log_a == kNegInf) return 1.0;
    const double d = log_a - log_b;
    if (d > 0.0) {
        const double e = std::exp(-d);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(d));
}

}  // namespace

ProbInterval ncc_bounds(const CountTables& tables, const Hyperparams& hp, std::span<const int> x,
                        std::span<const PrefixAssign> prefix, OpCounts* ops) {
    if (ops) ++ops->bound_evals;
    if (x.size() != tables.n_x_given_y.size())
        throw std::invalid_argument("instance arity does not match fitted tables");

    LogProducts prod;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& bins = tables.n_x_given_y[i];
        const std::size_t v = static_cast<std::size_t>(x[i]);
        if (v >= bins.size()) throw std::invalid_argument("bin id out of range for feature " + std::to_string(i));
        prod.add(0, bins[v][0], tables.n_y[0], hp.s);
        prod.add(1, bins[v][1], tables.n_y[1], hp.s);
    }
    for (const PrefixAssign& pa : prefix) {
        if (pa.position < 0 || pa.position >= tables.position)
            throw std::invalid_argument("prefix position " + std::to_string(pa.position) +
                                        " not earlier than chain position " + std::to_string(tables.position));
        const auto& c = tables.n_prev_given_y[static_cast<std::size_t>(pa.position)];
        const std::size_t b = static_cast<std::size_t>(pa.value);
        // pairwise-deleted conditional: normalize over instances where both
        // labels are observed
        prod.add(0, c[b][0], c[0][0] + c[1][0], hp.s);
        prod.add(1, c[b][1], c[0][1] + c[1][1], hp.s);
    }

    const auto pm = marginal_prob(tables.n_y, hp.laplace_alpha);
    const double log_p0 = std::log(pm[0]);
    const double log_p1 = std::log(pm[1]);

    const double lower = posterior_from_logs(log_p1 + prod.lo[1], log_p0 + prod.hi[0]);
    const double upper = posterior_from_logs(log_p1 + prod.hi[1], log_p0 + prod.lo[0]);
    return ProbInterval(lower, upper);
}

}  // namespace credal
