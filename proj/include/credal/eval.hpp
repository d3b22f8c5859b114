#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "credal/chain.hpp"
#include "credal/core.hpp"
#include "credal/data.hpp"

namespace credal {

/// Set-accuracy: 1 iff the true vector is one of the completions of the
/// partial prediction, i.e. every determined position matches. The
/// all-abstain prediction scores 1 by convention.
int set_accuracy(const PartialLabelVector& pred, std::span<const std::int8_t> truth);

/// Fraction of labels not abstained on.
double completeness(const PartialLabelVector& pred);

/// One result row: fold-level means for a single grid cell.
struct MetricRow {
    std::string dataset;
    std::string strategy;
    double s = 0.0;
    int missing_pct = 0;
    int repeat = 0;
    int fold = 0;
    int n_test = 0;
    double set_accuracy = 0.0;
    double completeness = 0.0;
    double wall_ms = 0.0;

    bool operator==(const MetricRow&) const = default;
};

/// Cartesian experiment description. Results are deterministic under
/// `seed`: the chain order is drawn once per (repeat, fold) and shared
/// across all s values and strategies, and the missing-label mask is drawn
/// per (repeat, fold, pct).
struct ExperimentGrid {
    RawDataset data;
    int z = 6;
    BinningMethod binning = BinningMethod::EqualFrequency;
    bool discretize_numeric = true;  // off for datasets with count features
    std::vector<double> s_list{1.0};
    std::vector<int> missing_list{0};
    std::vector<Strategy> strategies{Strategy::ImpreciseBranching};
    int repeats = 10;
    int folds = 10;
    std::uint64_t seed = 0;
    double laplace_alpha = 1.0;
    int threads = 1;
    bool measure_time = false;  // keep wall_ms at 0 for reproducible output
};

/// Runs the full cross-validation grid. Rows come back sorted by
/// (strategy, s, missing_pct, repeat, fold). A failing cell aborts with the
/// cell coordinates in the error message.
std::vector<MetricRow> run_experiment(const ExperimentGrid& grid);

/// Exact result schema written by the run command; floats use 6 decimals.
extern const char* const kCsvHeader;

void write_csv(std::span<const MetricRow> rows, std::ostream& out);
std::vector<MetricRow> read_csv(std::istream& in);

/// Per-(strategy, s) series over missing percentage with macro-averaged
/// metrics and their standard errors.
struct SummaryPoint {
    std::string strategy;
    double s = 0.0;
    int missing_pct = 0;
    double mean_set_accuracy = 0.0;
    double mean_completeness = 0.0;
    double stderr_set_accuracy = 0.0;
    double stderr_completeness = 0.0;
    int n_rows = 0;
};

std::vector<SummaryPoint> summarize(std::span<const MetricRow> rows);
void write_summary(std::span<const SummaryPoint> points, std::ostream& out);

}  // namespace credal
