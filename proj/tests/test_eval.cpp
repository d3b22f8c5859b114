#include <doctest.h>

#include <sstream>

#include "credal/eval.hpp"
#include "credal/rng.hpp"
#include "oracles.hpp"

using namespace credal;

namespace {
constexpr LabelState R = LabelState::Relevant;
constexpr LabelState I = LabelState::Irrelevant;
constexpr LabelState A = LabelState::Abstain;
}  // namespace

TEST_CASE("set_accuracy") {
    CHECK(set_accuracy({A, R, I}, std::vector<std::int8_t>{1, 1, 0}) == 1);
    CHECK(set_accuracy({A, A, A}, std::vector<std::int8_t>{0, 1, 0}) == 1);  // empty vector convention
    CHECK(set_accuracy({I, R, I}, std::vector<std::int8_t>{1, 1, 0}) == 0);
    CHECK(set_accuracy({R, R, I}, std::vector<std::int8_t>{1, 1, 0}) == 1);
    CHECK_THROWS_AS(set_accuracy({R}, std::vector<std::int8_t>{1, 0}), std::invalid_argument);
}

TEST_CASE("completeness") {
    CHECK(completeness({R, I, R}) == 1.0);
    CHECK(completeness({A, A, A}) == 0.0);
    CHECK(completeness({A, R, I}) == doctest::Approx(2.0 / 3.0));
    CHECK_THROWS_AS(completeness({}), std::invalid_argument);
}

TEST_CASE("set_accuracy equals completion-set enumeration") {
    Rng rng(17);
    for (int trial = 0; trial < 3000; ++trial) {
        const std::size_t m = 1 + rng.bounded(12);
        PartialLabelVector pred(m);
        std::vector<std::int8_t> truth(m);
        for (std::size_t i = 0; i < m; ++i) {
            pred[i] = static_cast<LabelState>(rng.bounded(3));
            truth[i] = static_cast<std::int8_t>(rng.bounded(2));
        }
        CHECK(set_accuracy(pred, truth) == oracles::set_accuracy_by_enumeration(pred, truth));
    }
}

namespace {

RawDataset toy_raw(std::uint64_t seed, int n, int p, int m) {
    auto disc = oracles::random_dataset(seed, n, p, m);
    RawDataset raw;
    raw.name = "toy";
    raw.feature_kinds.assign(static_cast<std::size_t>(p), FeatureKind::Numeric);
    raw.categories.assign(static_cast<std::size_t>(p), {});
    for (std::size_t r = 0; r < disc.features.size(); ++r) {
        std::vector<double> feat;
        for (int v : disc.features[r]) feat.push_back(static_cast<double>(v));
        raw.features.push_back(std::move(feat));
        raw.labels.push_back(disc.labels[r]);
    }
    for (int j = 0; j < m; ++j) raw.label_names.push_back("y" + std::to_string(j));
    return raw;
}

}  // namespace

TEST_CASE("run_experiment: precise baseline never abstains") {
    ExperimentGrid grid;
    grid.data = toy_raw(5, 20, 2, 3);
    grid.s_list = {0.0};
    grid.missing_list = {0};
    grid.strategies = {Strategy::Precise};
    grid.repeats = 2;
    grid.folds = 4;
    grid.seed = 9;
    const auto rows = run_experiment(grid);
    CHECK(rows.size() == 8);
    for (const auto& r : rows) CHECK(r.completeness == 1.0);
}

TEST_CASE("run_experiment: deterministic under the seed") {
    ExperimentGrid grid;
    grid.data = toy_raw(6, 24, 2, 2);
    grid.s_list = {0.0, 1.0};
    grid.missing_list = {0, 20};
    grid.strategies = {Strategy::Precise, Strategy::ImpreciseBranching};
    grid.repeats = 2;
    grid.folds = 2;
    grid.seed = 31;
    const auto a = run_experiment(grid);
    const auto b = run_experiment(grid);
    CHECK(a.size() == 2 * 2 * 2 * 2 * 2);
    CHECK(a == b);

    SUBCASE("thread count does not change results") {
        ExperimentGrid par = grid;
        par.threads = 4;
        CHECK(run_experiment(par) == a);
    }
}

TEST_CASE("run_experiment: huge s on a tiny set goes vacuous") {
    ExperimentGrid grid;
    grid.data = toy_raw(7, 5, 1, 2);
    grid.s_list = {5.5};
    grid.missing_list = {0};
    grid.strategies = {Strategy::ImpreciseBranching};
    grid.repeats = 1;
    grid.folds = 2;
    grid.seed = 3;
    const auto rows = run_experiment(grid);
    double sa = 0.0, cp = 0.0;
    for (const auto& r : rows) {
        sa += r.set_accuracy;
        cp += r.completeness;
    }
    sa /= static_cast<double>(rows.size());
    cp /= static_cast<double>(rows.size());
    CHECK(cp <= 0.1);
    CHECK(sa >= 0.9);
}

TEST_CASE("run_experiment: failing cell reports its coordinates") {
    ExperimentGrid grid;
    grid.data = toy_raw(8, 6, 1, 2);
    grid.s_list = {1.0};
    grid.missing_list = {100};  // every training label missing -> fit error
    grid.strategies = {Strategy::ImpreciseBranching};
    grid.repeats = 1;
    grid.folds = 2;
    CHECK_THROWS_WITH_AS(run_experiment(grid), doctest::Contains("repeat=0"), std::runtime_error);
}

TEST_CASE("csv: write/read round trip is stable") {
    ExperimentGrid grid;
    grid.data = toy_raw(9, 18, 2, 2);
    grid.s_list = {0.0, 0.5};
    grid.missing_list = {0, 40};
    grid.strategies = {Strategy::Marginalization};
    grid.repeats = 1;
    grid.folds = 3;
    const auto rows = run_experiment(grid);

    std::stringstream first;
    write_csv(rows, first);
    auto parsed = read_csv(first);
    CHECK(parsed.size() == rows.size());
    std::stringstream second;
    write_csv(parsed, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("csv: malformed input rejected") {
    std::stringstream bad("not,the,header\n");
    CHECK_THROWS_AS(read_csv(bad), std::runtime_error);
    std::stringstream short_row(std::string(kCsvHeader) + "\nx,precise,1\n");
    CHECK_THROWS_AS(read_csv(short_row), std::runtime_error);
}

TEST_CASE("summarize: hand-computed macro averages") {
    std::vector<MetricRow> rows(4);
    for (std::size_t i = 0; i < 4; ++i) {
        rows[i].dataset = "d";
        rows[i].strategy = "ib";
        rows[i].s = 1.0;
        rows[i].missing_pct = static_cast<int>(i / 2) * 20;  // two rows per pct
        rows[i].repeat = 0;
        rows[i].fold = static_cast<int>(i % 2);
        rows[i].n_test = 5;
    }
    rows[0].set_accuracy = 0.2;
    rows[1].set_accuracy = 0.4;
    rows[2].set_accuracy = 0.5;
    rows[3].set_accuracy = 0.9;
    rows[0].completeness = 1.0;
    rows[1].completeness = 0.8;
    rows[2].completeness = 0.5;
    rows[3].completeness = 0.1;

    const auto points = summarize(rows);
    REQUIRE(points.size() == 2);
    CHECK(points[0].missing_pct == 0);
    CHECK(points[0].mean_set_accuracy == doctest::Approx(0.3));
    CHECK(points[0].mean_completeness == doctest::Approx(0.9));
    // stderr of {0.2, 0.4}: sd = 0.141421..., / sqrt(2) = 0.1
    CHECK(points[0].stderr_set_accuracy == doctest::Approx(0.1));
    CHECK(points[1].missing_pct == 20);
    CHECK(points[1].mean_set_accuracy == doctest::Approx(0.7));
    CHECK(points[1].mean_completeness == doctest::Approx(0.3));

    SUBCASE("series structure: strategies x s values") {
        std::vector<MetricRow> grid_rows;
        for (double s : {0.5, 1.5})
            for (int pct : {0, 20, 40, 60, 80}) {
                MetricRow r = rows[0];
                r.s = s;
                r.missing_pct = pct;
                grid_rows.push_back(r);
            }
        const auto pts = summarize(grid_rows);
        CHECK(pts.size() == 10);  // 2 series of 5 points
        for (const auto& p : pts) CHECK(p.n_rows == 1);
    }
}
