#include "credal/data.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "credal/rng.hpp"

namespace credal {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string unquote(const std::string& s) {
    if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') || (s.front() == '"' && s.back() == '"')))
        return s.substr(1, s.size() - 2);
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw DataError(path + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_double(const std::string& tok, double& out) {
    char* end = nullptr;
    out = std::strtod(tok.c_str(), &end);
    return end != tok.c_str() && *end == '\0';
}

std::string stem_of(const std::string& path) {
    std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

struct ArffAttribute {
    std::string name;
    FeatureKind kind = FeatureKind::Numeric;
    std::vector<std::string> values;  // nominal only
};

int binary_label_value(const std::string& path, std::size_t line_no, const ArffAttribute& attr,
                       const std::string& tok) {
    if (attr.kind == FeatureKind::Numeric) {
        double v;
        if (!parse_double(tok, v) || (v != 0.0 && v != 1.0))
            parse_fail(path, line_no, "label column '" + attr.name + "' has non-binary value '" + tok + "'");
        return static_cast<int>(v);
    }
    std::string t = unquote(tok);
    if (t == "0") return 0;
    if (t == "1") return 1;
    parse_fail(path, line_no, "label column '" + attr.name + "' has non-binary value '" + tok + "'");
}

}  // namespace

RawDataset RawDataset::subset(const std::vector<int>& rows) const {
    RawDataset out;
    out.name = name;
    out.feature_kinds = feature_kinds;
    out.categories = categories;
    out.label_names = label_names;
    out.features.reserve(rows.size());
    out.labels.reserve(rows.size());
    for (int r : rows) {
        out.features.push_back(features[static_cast<std::size_t>(r)]);
        out.labels.push_back(labels[static_cast<std::size_t>(r)]);
    }
    return out;
}

std::vector<std::string> load_mulan_labels(const std::string& xml_path) {
    std::ifstream in(xml_path);
    if (!in) throw DataError("cannot open label list: " + xml_path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::vector<std::string> names;
    std::size_t pos = 0;
    while ((pos = text.find("<label", pos)) != std::string::npos) {
        std::size_t n = text.find("name=\"", pos);
        if (n == std::string::npos) break;
        n += 6;
        std::size_t end = text.find('"', n);
        if (end == std::string::npos) throw DataError("malformed label list: " + xml_path);
        names.push_back(text.substr(n, end - n));
        pos = end;
    }
    if (names.empty()) throw DataError("no <label name=...> entries in " + xml_path);
    return names;
}

RawDataset load_arff(const std::string& path, int label_count, LabelSide side,
                     const std::optional<std::string>& xml_path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open ARFF file: " + path);

    std::vector<ArffAttribute> attrs;
    std::string line;
    std::size_t line_no = 0;
    bool saw_relation = false;
    bool in_data = false;

    std::vector<bool> is_label;
    std::vector<int> feature_cols, label_cols;
    RawDataset ds;
    ds.name = stem_of(path);

    auto begin_data = [&]() {
        std::size_t n_attr = attrs.size();
        if (n_attr == 0) parse_fail(path, line_no, "@data before any @attribute");
        is_label.assign(n_attr, false);
        if (xml_path) {
            const auto names = load_mulan_labels(*xml_path);
            for (const auto& name : names) {
                auto it = std::find_if(attrs.begin(), attrs.end(),
                                       [&](const ArffAttribute& a) { return a.name == name; });
                if (it == attrs.end())
                    throw DataError("label '" + name + "' from " + *xml_path + " not found in " + path);
                is_label[static_cast<std::size_t>(it - attrs.begin())] = true;
            }
        } else {
            if (label_count <= 0 || static_cast<std::size_t>(label_count) >= n_attr)
                throw DataError(path + ": label count " + std::to_string(label_count) +
                                " out of range for " + std::to_string(n_attr) + " attributes");
            for (int i = 0; i < label_count; ++i) {
                std::size_t col = side == LabelSide::Trailing
                                      ? n_attr - static_cast<std::size_t>(label_count) + static_cast<std::size_t>(i)
                                      : static_cast<std::size_t>(i);
                is_label[col] = true;
            }
        }
        for (std::size_t c = 0; c < n_attr; ++c) {
            if (is_label[c]) {
                label_cols.push_back(static_cast<int>(c));
                ds.label_names.push_back(attrs[c].name);
            } else {
                feature_cols.push_back(static_cast<int>(c));
                ds.feature_kinds.push_back(attrs[c].kind);
                ds.categories.push_back(attrs[c].values);
            }
        }
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '%') continue;
        if (!in_data) {
            std::string lt = lower(t);
            if (lt.rfind("@relation", 0) == 0) {
                saw_relation = true;
                continue;
            }
            if (lt.rfind("@attribute", 0) == 0) {
                std::string rest = trim(t.substr(10));
                ArffAttribute attr;
                if (rest.empty()) parse_fail(path, line_no, "malformed @attribute");
                // name may be quoted and contain spaces
                std::size_t name_end;
                if (rest[0] == '\'' || rest[0] == '"') {
                    name_end = rest.find(rest[0], 1);
                    if (name_end == std::string::npos) parse_fail(path, line_no, "unterminated attribute name");
                    attr.name = rest.substr(1, name_end - 1);
                    ++name_end;
                } else {
                    name_end = rest.find_first_of(" \t");
                    if (name_end == std::string::npos) parse_fail(path, line_no, "missing attribute type");
                    attr.name = rest.substr(0, name_end);
                }
                std::string type = trim(rest.substr(name_end));
                if (type.empty()) parse_fail(path, line_no, "missing attribute type");
                if (type[0] == '{') {
                    if (type.back() != '}') parse_fail(path, line_no, "unterminated nominal value list");
                    attr.kind = FeatureKind::Categorical;
                    for (auto& v : split_csv_line(type.substr(1, type.size() - 2)))
                        attr.values.push_back(unquote(v));
                    if (attr.values.empty()) parse_fail(path, line_no, "empty nominal value list");
                } else {
                    std::string lt2 = lower(type);
                    if (lt2 != "numeric" && lt2 != "real" && lt2 != "integer")
                        parse_fail(path, line_no, "unsupported attribute type '" + type + "'");
                    attr.kind = FeatureKind::Numeric;
                }
                attrs.push_back(std::move(attr));
                continue;
            }
            if (lt.rfind("@data", 0) == 0) {
                if (!saw_relation) parse_fail(path, line_no, "@data before @relation");
                begin_data();
                in_data = true;
                continue;
            }
            parse_fail(path, line_no, "unrecognized header line '" + t + "'");
        }

        // data row
        if (t[0] == '{') parse_fail(path, line_no, "sparse ARFF rows are not supported");
        auto toks = split_csv_line(t);
        if (toks.size() != attrs.size())
            parse_fail(path, line_no, "row has " + std::to_string(toks.size()) + " values, expected " +
                                          std::to_string(attrs.size()));
        std::vector<double> feat;
        feat.reserve(feature_cols.size());
        std::vector<std::int8_t> lab(label_cols.size());
        for (std::size_t fi = 0; fi < feature_cols.size(); ++fi) {
            const auto& attr = attrs[static_cast<std::size_t>(feature_cols[fi])];
            const std::string& tok = toks[static_cast<std::size_t>(feature_cols[fi])];
            if (tok == "?") parse_fail(path, line_no, "missing feature values ('?') are not supported");
            if (attr.kind == FeatureKind::Numeric) {
                double v;
                if (!parse_double(tok, v))
                    parse_fail(path, line_no, "bad numeric value '" + tok + "' in '" + attr.name + "'");
                feat.push_back(v);
            } else {
                std::string tv = unquote(tok);
                auto it = std::find(attr.values.begin(), attr.values.end(), tv);
                if (it == attr.values.end())
                    parse_fail(path, line_no, "value '" + tok + "' not in nominal set of '" + attr.name + "'");
                feat.push_back(static_cast<double>(it - attr.values.begin()));
            }
        }
        for (std::size_t li = 0; li < label_cols.size(); ++li) {
            const auto& attr = attrs[static_cast<std::size_t>(label_cols[li])];
            lab[li] = static_cast<std::int8_t>(
                binary_label_value(path, line_no, attr, toks[static_cast<std::size_t>(label_cols[li])]));
        }
        ds.features.push_back(std::move(feat));
        ds.labels.push_back(std::move(lab));
    }
    if (!in_data) throw DataError(path + ": no @data section");
    if (ds.features.empty()) throw DataError(path + ": no rows");
    return ds;
}

RawDataset load_csv(const std::string& path, int m_labels) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV file: " + path);
    if (m_labels <= 0) throw DataError("label count must be positive");

    RawDataset ds;
    ds.name = stem_of(path);
    std::string line;
    std::size_t line_no = 0;
    std::size_t arity = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto toks = split_csv_line(t);
        if (arity == 0) {
            // optional header: skip the first line when it is not fully numeric
            double v;
            bool numeric = true;
            for (const auto& tok : toks)
                if (!parse_double(tok, v)) numeric = false;
            if (!numeric && ds.features.empty() && line_no == 1) {
                arity = toks.size();
                continue;
            }
            arity = toks.size();
        }
        if (toks.size() != arity)
            parse_fail(path, line_no, "row has " + std::to_string(toks.size()) + " values, expected " +
                                          std::to_string(arity));
        if (static_cast<std::size_t>(m_labels) >= arity)
            throw DataError(path + ": label count " + std::to_string(m_labels) + " out of range for " +
                            std::to_string(arity) + " columns");
        std::size_t p = arity - static_cast<std::size_t>(m_labels);
        std::vector<double> feat(p);
        std::vector<std::int8_t> lab(static_cast<std::size_t>(m_labels));
        for (std::size_t c = 0; c < arity; ++c) {
            double v;
            if (!parse_double(toks[c], v))
                parse_fail(path, line_no, "bad numeric value '" + toks[c] + "'");
            if (c < p) {
                feat[c] = v;
            } else {
                if (v != 0.0 && v != 1.0)
                    parse_fail(path, line_no, "label value '" + toks[c] + "' is not binary");
                lab[c - p] = static_cast<std::int8_t>(v);
            }
        }
        ds.features.push_back(std::move(feat));
        ds.labels.push_back(std::move(lab));
    }
    if (ds.features.empty()) throw DataError(path + ": no rows");
    std::size_t p = arity - static_cast<std::size_t>(m_labels);
    ds.feature_kinds.assign(p, FeatureKind::Numeric);
    ds.categories.assign(p, {});
    for (int i = 0; i < m_labels; ++i) ds.label_names.push_back("y" + std::to_string(i + 1));
    return ds;
}

namespace {

// Bin id of `x` against sorted unique cuts: number of cuts strictly below x,
// so a value exactly on a cut falls in the lower bin and out-of-range values
// clamp to the first/last bin.
int bin_of(double x, const std::vector<double>& edges) {
    int b = 0;
    for (double e : edges) {
        if (x > e)
            ++b;
        else
            break;
    }
    return b;
}

std::vector<double> equal_frequency_cuts(std::vector<double> values, int z) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    std::vector<double> cuts;
    for (int k = 1; k < z; ++k) {
        // cut between ranks ceil(kN/z) and ceil(kN/z)+1 (1-based)
        std::size_t r = (static_cast<std::size_t>(k) * n + static_cast<std::size_t>(z) - 1) /
                        static_cast<std::size_t>(z);
        if (r == 0 || r >= n) continue;
        cuts.push_back(0.5 * (values[r - 1] + values[r]));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

std::vector<double> equal_width_cuts(const std::vector<double>& values, int z) {
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    std::vector<double> cuts;
    if (*mn == *mx) return cuts;
    double w = (*mx - *mn) / z;
    for (int k = 1; k < z; ++k) cuts.push_back(*mn + w * k);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

}  // namespace

std::pair<DiscretizedDataset, BinEdges> discretize(const RawDataset& train, int z, BinningMethod method) {
    if (z < 2) throw DataError("bin count z must be at least 2");
    if (train.num_instances() == 0) throw DataError("cannot discretize an empty dataset");

    const std::size_t n = train.num_instances();
    const std::size_t p = train.num_features();
    BinEdges be;
    be.kinds = train.feature_kinds;
    be.edges.resize(p);
    be.bins.resize(p);

    for (std::size_t i = 0; i < p; ++i) {
        if (train.feature_kinds[i] == FeatureKind::Categorical) {
            be.bins[i] = std::max<int>(1, static_cast<int>(train.categories[i].size()));
            continue;
        }
        std::vector<double> col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = train.features[r][i];
        be.edges[i] = method == BinningMethod::EqualFrequency ? equal_frequency_cuts(std::move(col), z)
                                                              : equal_width_cuts(col, z);
        be.bins[i] = static_cast<int>(be.edges[i].size()) + 1;
    }
    return {apply_bins(train, be), std::move(be)};
}

DiscretizedDataset apply_bins(const RawDataset& data, const BinEdges& edges) {
    const std::size_t p = data.num_features();
    if (p != edges.kinds.size())
        throw DataError("feature arity mismatch: dataset has " + std::to_string(p) + ", edges were fit on " +
                        std::to_string(edges.kinds.size()));
    DiscretizedDataset out;
    out.bins = edges.bins;
    out.labels = data.labels;
    out.features.resize(data.num_instances());
    for (std::size_t r = 0; r < data.num_instances(); ++r) {
        auto& row = out.features[r];
        row.resize(p);
        for (std::size_t i = 0; i < p; ++i) {
            if (edges.kinds[i] == FeatureKind::Categorical) {
                int id = static_cast<int>(data.features[r][i]);
                row[i] = std::clamp(id, 0, edges.bins[i] - 1);
            } else {
                row[i] = bin_of(data.features[r][i], edges.edges[i]);
            }
        }
    }
    return out;
}

DiscretizedDataset inject_missing(const DiscretizedDataset& data, int pct, std::uint64_t seed) {
    if (pct < 0 || pct > 100) throw DataError("missing percentage must lie in [0, 100]");
    DiscretizedDataset out = data;
    const std::size_t n = data.num_instances();
    const std::size_t m = data.num_labels();
    const std::size_t cells = n * m;
    const std::size_t k = cells * static_cast<std::size_t>(pct) / 100;
    if (k == 0) return out;

    // partial Fisher-Yates over cell indices: first k entries are the sample
    std::vector<std::size_t> idx(cells);
    for (std::size_t i = 0; i < cells; ++i) idx[i] = i;
    Rng rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.bounded(cells - i));
        std::swap(idx[i], idx[j]);
        out.labels[idx[i] / m][idx[i] % m] = kMissingLabel;
    }
    return out;
}

FoldPlan make_folds(int num_instances, int repeats, int folds, std::uint64_t seed) {
    if (folds < 2) throw DataError("need at least 2 folds");
    if (num_instances < folds)
        throw DataError("cannot split " + std::to_string(num_instances) + " instances into " +
                        std::to_string(folds) + " folds");
    FoldPlan plan;
    plan.repeats = repeats;
    plan.folds = folds;
    plan.seed = seed;
    plan.assignments.resize(static_cast<std::size_t>(repeats));
    for (int r = 0; r < repeats; ++r) {
        Rng rng(derive_seed(seed, 0x666f6c64ULL, static_cast<std::uint64_t>(r)));
        auto perm = rng.permutation(num_instances);
        auto& assign = plan.assignments[static_cast<std::size_t>(r)];
        assign.resize(static_cast<std::size_t>(num_instances));
        // first N % folds folds take one extra instance
        int base = num_instances / folds, extra = num_instances % folds;
        int pos = 0;
        for (int f = 0; f < folds; ++f) {
            int size = base + (f < extra ? 1 : 0);
            for (int i = 0; i < size; ++i) assign[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos++)])] = f;
        }
    }
    return plan;
}

std::vector<int> FoldPlan::test_indices(int repeat, int fold) const {
    std::vector<int> out;
    const auto& assign = assignments[static_cast<std::size_t>(repeat)];
    for (std::size_t i = 0; i < assign.size(); ++i)
        if (assign[i] == fold) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<int> FoldPlan::train_indices(int repeat, int fold) const {
    std::vector<int> out;
    const auto& assign = assignments[static_cast<std::size_t>(repeat)];
    for (std::size_t i = 0; i < assign.size(); ++i)
        if (assign[i] != fold) out.push_back(static_cast<int>(i));
    return out;
}

}  // namespace credal
