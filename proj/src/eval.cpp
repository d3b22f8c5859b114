#include "credal/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <tuple>
#include <ostream>
#include <sstream>
#include <thread>

#include "credal/rng.hpp"

namespace credal {

int set_accuracy(const PartialLabelVector& pred, std::span<const std::int8_t> truth) {
    if (pred.size() != truth.size())
        throw std::invalid_argument("prediction and truth lengths differ");
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i] == LabelState::Abstain) continue;
        if (static_cast<std::int8_t>(pred[i]) != truth[i]) return 0;
    }
    return 1;
}

double completeness(const PartialLabelVector& pred) {
    if (pred.empty()) throw std::invalid_argument("empty prediction");
    return static_cast<double>(determined_count(pred)) / static_cast<double>(pred.size());
}

namespace {

// seed-derivation tags so the independent random streams cannot collide
constexpr std::uint64_t kTagOrder = 0x6f726465ULL;
constexpr std::uint64_t kTagMissing = 0x6d697373ULL;

struct Cell {
    int repeat, fold;
};

}  // namespace

std::vector<MetricRow> run_experiment(const ExperimentGrid& grid) {
    if (grid.s_list.empty() || grid.missing_list.empty() || grid.strategies.empty())
        throw std::invalid_argument("experiment grid has an empty dimension");
    const int n = static_cast<int>(grid.data.num_instances());
    const int m = static_cast<int>(grid.data.num_labels());
    if (m == 0) throw std::invalid_argument("dataset has no labels");
    for (int pct : grid.missing_list)
        if (pct < 0 || pct > 100) throw std::invalid_argument("missing percentage outside [0, 100]");

    const FoldPlan plan = make_folds(n, grid.repeats, grid.folds, grid.seed);

    std::vector<Cell> cells;
    for (int r = 0; r < grid.repeats; ++r)
        for (int f = 0; f < grid.folds; ++f) cells.push_back({r, f});

    // results indexed by (strategy, s, pct, cell) so output order is fixed
    const std::size_t per_cell = grid.strategies.size() * grid.s_list.size() * grid.missing_list.size();
    std::vector<MetricRow> rows(cells.size() * per_cell);
    auto row_slot = [&](std::size_t strat, std::size_t si, std::size_t pi, std::size_t cell) -> MetricRow& {
        return rows[((strat * grid.s_list.size() + si) * grid.missing_list.size() + pi) * cells.size() + cell];
    };

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
        for (;;) {
            const std::size_t ci = next.fetch_add(1);
            if (ci >= cells.size()) return;
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error) return;
            }
            const Cell cell = cells[ci];
            try {
                const auto train_idx = plan.train_indices(cell.repeat, cell.fold);
                const auto test_idx = plan.test_indices(cell.repeat, cell.fold);
                const RawDataset train_raw = grid.data.subset(train_idx);
                const RawDataset test_raw = grid.data.subset(test_idx);

                BinEdges edges;
                DiscretizedDataset train;
                if (grid.discretize_numeric) {
                    std::tie(train, edges) = discretize(train_raw, grid.z, grid.binning);
                } else {
                    // count-style features: integer values pass through as ids
                    edges.kinds.assign(train_raw.num_features(), FeatureKind::Categorical);
                    edges.edges.resize(train_raw.num_features());
                    edges.bins.resize(train_raw.num_features());
                    for (std::size_t i = 0; i < train_raw.num_features(); ++i) {
                        double mx = 1.0;
                        for (const auto& row : train_raw.features) mx = std::max(mx, row[i]);
                        edges.bins[i] = static_cast<int>(mx) + 1;
                    }
                    train = apply_bins(train_raw, edges);
                }
                const DiscretizedDataset test = apply_bins(test_raw, edges);

                Rng order_rng(derive_seed(grid.seed, kTagOrder, static_cast<std::uint64_t>(cell.repeat),
                                          static_cast<std::uint64_t>(cell.fold)));
                const std::vector<int> order = order_rng.permutation(m);

                for (std::size_t pi = 0; pi < grid.missing_list.size(); ++pi) {
                    const int pct = grid.missing_list[pi];
                    const DiscretizedDataset train_pct =
                        pct == 0 ? train
                                 : inject_missing(train, pct,
                                                  derive_seed(grid.seed, kTagMissing,
                                                              static_cast<std::uint64_t>(cell.repeat),
                                                              static_cast<std::uint64_t>(cell.fold),
                                                              static_cast<std::uint64_t>(pct)));
                    const ChainModel base = fit(train_pct, order, Hyperparams{0.0, grid.laplace_alpha});

                    for (std::size_t si = 0; si < grid.s_list.size(); ++si) {
                        const ChainModel model = base.with_s(grid.s_list[si]);
                        for (std::size_t sti = 0; sti < grid.strategies.size(); ++sti) {
                            const Strategy strategy = grid.strategies[sti];
                            const auto t0 = std::chrono::steady_clock::now();
                            double sa = 0.0, cp = 0.0;
                            for (std::size_t r = 0; r < test.num_instances(); ++r) {
                                const auto pred = predict(model, test.features[r], strategy);
                                sa += set_accuracy(pred, test.labels[r]);
                                cp += completeness(pred);
                            }
                            const auto t1 = std::chrono::steady_clock::now();
                            const double nt = static_cast<double>(test.num_instances());
                            MetricRow& row = row_slot(sti, si, pi, ci);
                            row.dataset = grid.data.name;
                            row.strategy = to_string(strategy);
                            row.s = grid.s_list[si];
                            row.missing_pct = pct;
                            row.repeat = cell.repeat;
                            row.fold = cell.fold;
                            row.n_test = static_cast<int>(test.num_instances());
                            row.set_accuracy = nt > 0 ? sa / nt : 0.0;
                            row.completeness = nt > 0 ? cp / nt : 0.0;
                            row.wall_ms =
                                grid.measure_time
                                    ? std::chrono::duration<double, std::milli>(t1 - t0).count()
                                    : 0.0;
                        }
                    }
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    try {
                        std::throw_with_nested(std::runtime_error(
                            "experiment cell failed (dataset=" + grid.data.name +
                            ", repeat=" + std::to_string(cell.repeat) +
                            ", fold=" + std::to_string(cell.fold) + ")"));
                    } catch (...) {
                        first_error = std::current_exception();
                    }
                }
                return;
            }
        }
    };

    const int threads = std::max(1, grid.threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

const char* const kCsvHeader =
    "dataset,strategy,s,missing_pct,repeat,fold,n_test,set_accuracy,completeness,wall_ms";

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void unwrap_error(const std::string& context, const std::string& what) {
    throw std::runtime_error(context + ": " + what);
}

}  // namespace

void write_csv(std::span<const MetricRow> rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const MetricRow& r : rows) {
        out << r.dataset << ',' << r.strategy << ',' << fixed6(r.s) << ',' << r.missing_pct << ','
            << r.repeat << ',' << r.fold << ',' << r.n_test << ',' << fixed6(r.set_accuracy) << ','
            << fixed6(r.completeness) << ',' << fixed6(r.wall_ms) << '\n';
    }
}

std::vector<MetricRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) unwrap_error("results CSV", "empty file");
    if (line.ends_with("\r")) line.pop_back();
    if (line != kCsvHeader) unwrap_error("results CSV", "unexpected header '" + line + "'");
    std::vector<MetricRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.ends_with("\r")) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 10)
            unwrap_error("results CSV", "line " + std::to_string(line_no) + " has " +
                                            std::to_string(f.size()) + " fields, expected 10");
        try {
            MetricRow r;
            r.dataset = f[0];
            r.strategy = f[1];
            r.s = std::stod(f[2]);
            r.missing_pct = std::stoi(f[3]);
            r.repeat = std::stoi(f[4]);
            r.fold = std::stoi(f[5]);
            r.n_test = std::stoi(f[6]);
            r.set_accuracy = std::stod(f[7]);
            r.completeness = std::stod(f[8]);
            r.wall_ms = std::stod(f[9]);
            rows.push_back(std::move(r));
        } catch (const std::exception&) {
            unwrap_error("results CSV", "line " + std::to_string(line_no) + " is malformed");
        }
    }
    return rows;
}

std::vector<SummaryPoint> summarize(std::span<const MetricRow> rows) {
    // key: (strategy, s, missing_pct) -> accumulated metrics
    std::map<std::tuple<std::string, double, int>, std::vector<const MetricRow*>> groups;
    for (const MetricRow& r : rows) groups[{r.strategy, r.s, r.missing_pct}].push_back(&r);

    std::vector<SummaryPoint> points;
    points.reserve(groups.size());
    for (const auto& [key, members] : groups) {
        SummaryPoint p;
        p.strategy = std::get<0>(key);
        p.s = std::get<1>(key);
        p.missing_pct = std::get<2>(key);
        p.n_rows = static_cast<int>(members.size());
        double sa = 0.0, cp = 0.0;
        for (const MetricRow* r : members) {
            sa += r->set_accuracy;
            cp += r->completeness;
        }
        const double n = static_cast<double>(members.size());
        p.mean_set_accuracy = sa / n;
        p.mean_completeness = cp / n;
        if (members.size() > 1) {
            double va = 0.0, vc = 0.0;
            for (const MetricRow* r : members) {
                va += (r->set_accuracy - p.mean_set_accuracy) * (r->set_accuracy - p.mean_set_accuracy);
                vc += (r->completeness - p.mean_completeness) * (r->completeness - p.mean_completeness);
            }
            p.stderr_set_accuracy = std::sqrt(va / (n - 1.0) / n);
            p.stderr_completeness = std::sqrt(vc / (n - 1.0) / n);
        }
        points.push_back(std::move(p));
    }
    return points;
}

void write_summary(std::span<const SummaryPoint> points, std::ostream& out) {
    out << "strategy,s,missing_pct,mean_set_accuracy,mean_completeness,"
           "stderr_set_accuracy,stderr_completeness,n_rows\n";
    for (const SummaryPoint& p : points) {
        out << p.strategy << ',' << fixed6(p.s) << ',' << p.missing_pct << ','
            << fixed6(p.mean_set_accuracy) << ',' << fixed6(p.mean_completeness) << ','
            << fixed6(p.stderr_set_accuracy) << ',' << fixed6(p.stderr_completeness) << ','
            << p.n_rows << '\n';
    }
}

}  // namespace credal
