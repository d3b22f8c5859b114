#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "credal/cli.hpp"

using namespace credal;

namespace {

const std::string kDataDir = CREDAL_DATA_DIR;
const std::string kCliPath = CREDAL_CLI_PATH;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name) : path("credal_cli_" + name) {}
    ~TempPath() { std::remove(path.c_str()); }
};

int run_cli(const std::string& args) {
    const std::string cmd = kCliPath + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

RunConfig small_run_config(const std::string& output) {
    RunConfig cfg;
    cfg.dataset.path = kDataDir + "/fig2toy.csv";
    cfg.dataset.format = "csv";
    cfg.dataset.labels = 2;
    cfg.repeats = 2;
    cfg.folds = 2;
    cfg.s_list = {0.0, 1.0};
    cfg.missing_list = {0, 20};
    cfg.strategies = {"precise", "ib", "mar"};
    cfg.seed = 7;
    cfg.output = output;
    return cfg;
}

}  // namespace

TEST_CASE("cmd_run: row count and reproducibility") {
    TempPath out1("run1.csv"), out2("run2.csv");
    std::ostringstream sink;
    RunConfig cfg = small_run_config(out1.path);
    CHECK(cmd_run(cfg, sink) == 0);

    const std::string csv1 = slurp(out1.path);
    // header + repeats*folds*|s|*|missing|*|strategies| rows
    const auto lines = static_cast<std::size_t>(std::count(csv1.begin(), csv1.end(), '\n'));
    CHECK(lines == 1 + 2 * 2 * 2 * 2 * 3);

    cfg.output = out2.path;
    CHECK(cmd_run(cfg, sink) == 0);
    CHECK(csv1 == slurp(out2.path));  // byte-identical under the same seed
    CHECK(csv1.find("\r") == std::string::npos);
}

TEST_CASE("cmd_predict: the branching toy abstains on both labels") {
    PredictConfig cfg;
    cfg.train.path = kDataDir + "/fig3toy.csv";
    cfg.train.format = "csv";
    cfg.train.labels = 2;
    cfg.test_path = kDataDir + "/fig3query.csv";
    cfg.s = 1.0;
    cfg.alpha = 0.0;
    cfg.strategy = "ib";
    cfg.order = {1, 2};
    std::ostringstream out;
    CHECK(cmd_predict(cfg, out) == 0);
    CHECK(out.str() == "*,*\n");

    SUBCASE("s = 0 never abstains") {
        cfg.s = 0.0;
        std::ostringstream precise;
        CHECK(cmd_predict(cfg, precise) == 0);
        CHECK(precise.str().find('*') == std::string::npos);
        CHECK_FALSE(precise.str().empty());
    }
    SUBCASE("empty test file yields no output") {
        TempPath empty("empty.csv");
        { std::ofstream touch(empty.path); }
        cfg.test_path = empty.path;
        std::ostringstream none;
        CHECK(cmd_predict(cfg, none) == 0);
        CHECK(none.str().empty());
    }
}

TEST_CASE("cmd_summarize: round trip from a run") {
    TempPath csv("sum_in.csv"), series("sum_out.csv");
    std::ostringstream sink;
    RunConfig cfg = small_run_config(csv.path);
    REQUIRE(cmd_run(cfg, sink) == 0);

    SummarizeConfig sum;
    sum.input = csv.path;
    sum.output = series.path;
    CHECK(cmd_summarize(sum) == 0);
    const std::string text = slurp(series.path);
    // 3 strategies x 2 s values x 2 missing levels + header
    CHECK(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) == 1 + 3 * 2 * 2);
}

TEST_CASE("cli binary: exit codes") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("run") == 2);                       // missing --dataset
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    CHECK(run_cli("summarize /nonexistent/results.csv") == 1);
    CHECK(run_cli("run --dataset /nonexistent.csv --format csv --labels 2 "
                  "--repeats 2 --folds 2") == 1);
    CHECK(run_cli("predict --dataset " + kDataDir + "/fig3toy.csv --format csv --labels 2 --test " +
                  kDataDir + "/fig3query.csv --order 1,2") == 0);
}

TEST_CASE("cli binary: config file with flag override") {
    TempPath conf("run.conf"), out("conf_run.csv");
    {
        std::ofstream c(conf.path);
        c << "dataset=\"" << kDataDir << "/fig2toy.csv\"\nformat=\"csv\"\nlabels=2\n"
          << "repeats=1\nfolds=2\ns=0,1\nmissing=0\nstrategies=ib\nseed=11\n";
    }
    const int code = run_cli("run --config " + conf.path + " --folds 3 -o " + out.path);
    CHECK(code == 0);
    const std::string csv = slurp(out.path);
    // the --folds flag wins over the config file: 1*3*2*1*1 rows
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == 1 + 3 * 2);
}

TEST_CASE("cli binary: arff sample with xml label list") {
    TempPath out("arff_run.csv");
    const int code = run_cli("run --dataset " + kDataDir + "/sample_multilabel.arff --labels-xml " +
                             kDataDir + "/sample_multilabel.xml --repeats 1 --folds 2 --s 0,2 "
                             "--missing 0 --strategies ib --seed 5 -o " + out.path);
    CHECK(code == 0);
    const std::string csv = slurp(out.path);
    CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == 1 + 2 * 2);
    CHECK(csv.rfind("dataset,strategy,s,", 0) == 0);
}
