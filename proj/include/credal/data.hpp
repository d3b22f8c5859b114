#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class FeatureKind : std::uint8_t { Numeric, Categorical };

/// Label cell sentinel for injected missingness. Raw datasets are complete;
/// Missing only appears after inject_missing().
inline constexpr std::int8_t kMissingLabel = -1;

/// A parsed dataset before discretization. Features are stored as doubles;
/// categorical features hold the id of the token in its declared value set.
struct RawDataset {
    std::string name;
    std::vector<FeatureKind> feature_kinds;       // size p
    std::vector<std::vector<std::string>> categories;  // per feature; empty for numeric
    std::vector<std::vector<double>> features;    // N rows x p
    std::vector<std::vector<std::int8_t>> labels; // N rows x m, values {0,1}
    std::vector<std::string> label_names;         // size m

    std::size_t num_instances() const { return features.size(); }
    std::size_t num_features() const { return feature_kinds.size(); }
    std::size_t num_labels() const { return label_names.size(); }

    RawDataset subset(const std::vector<int>& rows) const;
};

/// Dataset after per-feature binning. Feature cells are bin ids in
/// {0..bins[i]-1}; label cells are {0,1} or kMissingLabel.
struct DiscretizedDataset {
    std::vector<std::vector<int>> features;       // N x p bin ids
    std::vector<std::vector<std::int8_t>> labels; // N x m
    std::vector<int> bins;                        // per feature: number of bin ids
    std::size_t num_instances() const { return features.size(); }
    std::size_t num_features() const { return bins.size(); }
    std::size_t num_labels() const { return labels.empty() ? 0 : labels[0].size(); }
};

/// Cut points fitted on training data; applied to test data without refit.
struct BinEdges {
    // per feature: sorted unique cut values (empty for categorical
    // features, which pass through as ids)
    std::vector<std::vector<double>> edges;
    std::vector<FeatureKind> kinds;
    std::vector<int> bins;  // resulting bin count per feature
};

enum class BinningMethod { EqualFrequency, EqualWidth };

/// Cross-validation plan: per repeat, a fold id for every instance.
struct FoldPlan {
    int repeats = 0;
    int folds = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> assignments;  // [repeat][instance] -> fold

    std::vector<int> test_indices(int repeat, int fold) const;
    std::vector<int> train_indices(int repeat, int fold) const;
};

/// Where the label columns sit when identified by count.
enum class LabelSide { Trailing, Leading };

/// Parses the dense ARFF subset used by the MULAN corpora: @relation,
/// @attribute (numeric + nominal), @data with dense comma-separated rows.
/// Label columns are the trailing/leading `label_count` attributes, or the
/// attributes named in a MULAN XML label list when `xml_path` is given.
RawDataset load_arff(const std::string& path, int label_count,
                     LabelSide side = LabelSide::Trailing,
                     const std::optional<std::string>& xml_path = std::nullopt);

/// Numeric CSV whose last m_labels columns are binary labels. An optional
/// single header line is detected and skipped.
RawDataset load_csv(const std::string& path, int m_labels);

/// Extracts label names from a MULAN XML label list.
std::vector<std::string> load_mulan_labels(const std::string& xml_path);

/// Fits equal-frequency (default) or equal-width cut points on the training
/// data, z bins per numeric feature, and bins the training set. Ties may
/// collapse cuts, so fewer than z bins can result. Categorical features pass
/// through unchanged.
std::pair<DiscretizedDataset, BinEdges> discretize(const RawDataset& train, int z,
                                                   BinningMethod method = BinningMethod::EqualFrequency);

/// Bins a dataset with previously fitted edges. Out-of-range values clamp
/// to the first/last bin; a value exactly on a cut goes to the lower bin.
DiscretizedDataset apply_bins(const RawDataset& data, const BinEdges& edges);

/// Sets exactly floor(pct*N*m/100) label cells to Missing, chosen uniformly
/// without replacement; deterministic under `seed`.
DiscretizedDataset inject_missing(const DiscretizedDataset& data, int pct, std::uint64_t seed);

/// Seeded k-fold plan: per repeat, a shuffled partition into folds whose
/// sizes differ by at most one.
FoldPlan make_folds(int num_instances, int repeats, int folds, std::uint64_t seed);

}  // namespace credal
