#include "credal/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include "credal/rng.hpp"

namespace credal {

namespace {

LabelSide parse_side(const std::string& side) {
    if (side == "tail") return LabelSide::Trailing;
    if (side == "head") return LabelSide::Leading;
    throw std::invalid_argument("labels-at must be 'tail' or 'head'");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    return out;
}

bool file_is_blank(const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

RawDataset load_dataset(const DatasetConfig& cfg) {
    if (cfg.path.empty()) throw std::invalid_argument("no dataset path given");
    RawDataset ds;
    if (cfg.format == "arff") {
        std::optional<std::string> xml;
        if (!cfg.xml.empty()) xml = cfg.xml;
        ds = load_arff(cfg.path, cfg.labels, parse_side(cfg.labels_at), xml);
    } else if (cfg.format == "csv") {
        ds = load_csv(cfg.path, cfg.labels);
    } else {
        throw std::invalid_argument("unknown dataset format '" + cfg.format + "' (expected arff|csv)");
    }
    if (!cfg.name.empty()) ds.name = cfg.name;
    return ds;
}

int cmd_run(const RunConfig& cfg, std::ostream& diagnostics) {
    ExperimentGrid grid;
    grid.data = load_dataset(cfg.dataset);
    grid.z = cfg.z;
    grid.binning = cfg.equal_width ? BinningMethod::EqualWidth : BinningMethod::EqualFrequency;
    grid.discretize_numeric = !cfg.no_discretize;
    grid.s_list = cfg.s_list;
    grid.missing_list = cfg.missing_list;
    grid.strategies.clear();
    for (const auto& name : cfg.strategies) grid.strategies.push_back(parse_strategy(name));
    grid.repeats = cfg.repeats;
    grid.folds = cfg.folds;
    grid.seed = cfg.seed;
    grid.laplace_alpha = cfg.alpha;
    grid.threads = cfg.threads;
    grid.measure_time = cfg.timing;
    if (grid.strategies.empty()) throw std::invalid_argument("no strategies selected");

    diagnostics << "dataset " << grid.data.name << ": " << grid.data.num_instances() << " instances, "
                << grid.data.num_features() << " features, " << grid.data.num_labels() << " labels\n";
    const auto rows = run_experiment(grid);

    if (cfg.output.empty() || cfg.output == "-") {
        write_csv(rows, std::cout);
    } else {
        auto out = open_output(cfg.output);
        write_csv(rows, out);
        diagnostics << "wrote " << rows.size() << " rows to " << cfg.output << '\n';
    }
    return 0;
}

int cmd_predict(const PredictConfig& cfg, std::ostream& out) {
    const RawDataset train_raw = load_dataset(cfg.train);
    const int m = static_cast<int>(train_raw.num_labels());

    std::vector<int> order;
    if (!cfg.order.empty()) {
        if (static_cast<int>(cfg.order.size()) != m)
            throw std::invalid_argument("--order must list all " + std::to_string(m) + " labels");
        for (int v : cfg.order) order.push_back(v - 1);  // 1-based on the command line
    } else {
        Rng rng(derive_seed(cfg.seed, 0x6f726465ULL));
        order = rng.permutation(m);
    }

    BinEdges edges;
    DiscretizedDataset train;
    if (cfg.no_discretize) {
        edges.kinds.assign(train_raw.num_features(), FeatureKind::Categorical);
        edges.edges.resize(train_raw.num_features());
        edges.bins.resize(train_raw.num_features());
        for (std::size_t i = 0; i < train_raw.num_features(); ++i) {
            double mx = 1.0;
            for (const auto& row : train_raw.features) mx = std::max(mx, row[i]);
            edges.bins[i] = static_cast<int>(mx) + 1;
        }
        train = apply_bins(train_raw, edges);
    } else {
        std::tie(train, edges) = discretize(train_raw, cfg.z);
    }

    const ChainModel model = fit(train, order, Hyperparams{cfg.s, cfg.alpha});
    const Strategy strategy = parse_strategy(cfg.strategy);

    if (file_is_blank(cfg.test_path)) return 0;  // no instances, no output
    DatasetConfig test_cfg = cfg.train;
    test_cfg.path = cfg.test_path;
    test_cfg.name.clear();
    const RawDataset test_raw = load_dataset(test_cfg);
    const DiscretizedDataset test = apply_bins(test_raw, edges);

    for (std::size_t r = 0; r < test.num_instances(); ++r)
        out << to_string(predict(model, test.features[r], strategy)) << '\n';
    return 0;
}

int cmd_summarize(const SummarizeConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw std::runtime_error("cannot open results CSV: " + cfg.input);
    const auto rows = read_csv(in);
    const auto points = summarize(rows);
    if (cfg.output.empty() || cfg.output == "-") {
        write_summary(points, std::cout);
    } else {
        auto out = open_output(cfg.output);
        write_summary(points, out);
    }
    return 0;
}

}  // namespace credal
