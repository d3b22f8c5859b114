#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "credal/data.hpp"
#include "credal/eval.hpp"

namespace credal {

/// Dataset source description shared by the run and predict commands.
struct DatasetConfig {
    std::string path;
    std::string format = "arff";  // arff | csv
    int labels = 0;               // label count (ignored when xml is given)
    std::string labels_at = "tail";  // tail | head
    std::string xml;              // MULAN label list; overrides the count
    std::string name;             // defaults to the file stem
};

/// Full configuration of the `run` command. Defaults follow the
/// 10x10 cross-validation protocol with the standard s grid and missing
/// percentages.
struct RunConfig {
    DatasetConfig dataset;
    int z = 6;
    bool no_discretize = false;
    bool equal_width = false;
    std::vector<double> s_list{0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.5};
    std::vector<int> missing_list{0, 20, 40, 60, 80};
    std::vector<std::string> strategies{"precise", "ib", "mar"};
    int repeats = 10;
    int folds = 10;
    std::uint64_t seed = 42;
    double alpha = 1.0;
    int threads = 1;
    bool timing = false;  // wall_ms stays 0 unless enabled, keeping output reproducible
    std::string output;   // CSV path; "-" or empty writes to stdout
};

struct PredictConfig {
    DatasetConfig train;
    std::string test_path;    // same format/schema as the training file
    double s = 1.0;
    std::string strategy = "ib";
    int z = 6;
    bool no_discretize = false;
    double alpha = 1.0;
    std::uint64_t seed = 42;
    std::vector<int> order;   // 1-based label order; empty draws a seeded permutation
};

struct SummarizeConfig {
    std::string input;   // results CSV from `run`
    std::string output;  // "-" or empty writes to stdout
};

RawDataset load_dataset(const DatasetConfig& cfg);

int cmd_run(const RunConfig& cfg, std::ostream& diagnostics);
int cmd_predict(const PredictConfig& cfg, std::ostream& out);
int cmd_summarize(const SummarizeConfig& cfg);

}  // namespace credal
