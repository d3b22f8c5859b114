#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "credal/cli.hpp"

namespace {

void add_dataset_options(CLI::App* cmd, credal::DatasetConfig& cfg, const std::string& prefix = "") {
    const std::string p = prefix.empty() ? "--" : "--" + prefix + "-";
    cmd->add_option(p + "dataset", cfg.path, "Dataset file")->required();
    cmd->add_option(p + "format", cfg.format, "Dataset format: arff|csv")
        ->check(CLI::IsMember({"arff", "csv"}))
        ->capture_default_str();
    cmd->add_option(p + "labels", cfg.labels, "Number of label columns");
    cmd->add_option(p + "labels-at", cfg.labels_at, "Label column side: tail|head")
        ->check(CLI::IsMember({"tail", "head"}))
        ->capture_default_str();
    cmd->add_option(p + "labels-xml", cfg.xml, "MULAN XML label list (overrides --labels)");
    if (prefix.empty()) cmd->add_option("--name", cfg.name, "Dataset name used in result rows");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Imprecise multi-label classifier chaining (naive credal classifier)"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read options from a config file (flags win)");

    credal::RunConfig run_cfg;
    CLI::App* run = app.add_subcommand("run", "Cross-validated experiment grid, results as CSV");
    add_dataset_options(run, run_cfg.dataset);
    run->add_option("--z", run_cfg.z, "Discretization bins per numeric feature")->capture_default_str();
    run->add_flag("--no-discretize", run_cfg.no_discretize, "Use integer feature values as bins directly");
    run->add_flag("--equal-width", run_cfg.equal_width, "Equal-width instead of equal-frequency bins");
    run->add_option("--s", run_cfg.s_list, "IDM imprecision values")->delimiter(',')->capture_default_str();
    run->add_option("--missing", run_cfg.missing_list, "Missing-label percentages")->delimiter(',')->capture_default_str();
    run->add_option("--strategies", run_cfg.strategies, "Strategies: precise|ib|mar")->delimiter(',')->capture_default_str();
    run->add_option("--repeats", run_cfg.repeats, "Cross-validation repeats")->capture_default_str();
    run->add_option("--folds", run_cfg.folds, "Cross-validation folds")->capture_default_str();
    run->add_option("--seed", run_cfg.seed, "Top-level seed")->capture_default_str();
    run->add_option("--alpha", run_cfg.alpha, "Laplace smoothing for the class marginal")
        ->capture_default_str();
    run->add_option("--threads", run_cfg.threads, "Parallel grid cells")->capture_default_str();
    run->add_flag("--timing", run_cfg.timing, "Measure wall_ms (off keeps output byte-reproducible)");
    run->add_option("-o,--output", run_cfg.output, "Result CSV path ('-' for stdout)");

    credal::PredictConfig pred_cfg;
    CLI::App* pred = app.add_subcommand("predict", "Fit on a training file, print partial predictions");
    add_dataset_options(pred, pred_cfg.train);
    pred->add_option("--test", pred_cfg.test_path, "Instances to predict (same schema)")->required();
    pred->add_option("--s", pred_cfg.s, "IDM imprecision")->capture_default_str();
    pred->add_option("--strategy", pred_cfg.strategy, "precise|ib|mar")->capture_default_str();
    pred->add_option("--z", pred_cfg.z, "Discretization bins")->capture_default_str();
    pred->add_flag("--no-discretize", pred_cfg.no_discretize, "Use integer feature values as bins directly");
    pred->add_option("--alpha", pred_cfg.alpha, "Laplace smoothing for the class marginal")
        ->capture_default_str();
    pred->add_option("--seed", pred_cfg.seed, "Seed for the label order draw")->capture_default_str();
    pred->add_option("--order", pred_cfg.order, "Fixed 1-based label order (default: seeded random)")->delimiter(',');

    credal::SummarizeConfig sum_cfg;
    CLI::App* sum = app.add_subcommand("summarize", "Aggregate a results CSV into plot series");
    sum->add_option("input", sum_cfg.input, "Results CSV from 'run'")->required();
    sum->add_option("-o,--output", sum_cfg.output, "Series file ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (run->parsed()) return credal::cmd_run(run_cfg, std::cerr);
        if (pred->parsed()) return credal::cmd_predict(pred_cfg, std::cout);
        return credal::cmd_summarize(sum_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        try {
            std::rethrow_if_nested(e);
        } catch (const std::exception& inner) {
            std::cerr << "  caused by: " << inner.what() << '\n';
        } catch (...) {
        }
        return 1;
    }
}
