#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

// Slack applied when validating interval bounds; absorbs rounding noise
// from log-space products.
inline constexpr double kIntervalSlack = 1e-12;

/// A lower/upper probability pair [lower, upper] on a binary event.
/// All credal inference in this library returns one of these.
struct ProbInterval {
    double lower = 0.0;
    double upper = 1.0;

    ProbInterval() = default;

    ProbInterval(double lo, double hi) : lower(lo), upper(hi) {
        if (lo > hi && lo - hi <= kIntervalSlack) {
            // swap-free repair of sub-epsilon inversions
            lower = upper = 0.5 * (lo + hi);
        }
        if (!(lower >= -kIntervalSlack && upper <= 1.0 + kIntervalSlack && lower <= upper)) {
            throw std::invalid_argument("ProbInterval: invalid bounds [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "]");
        }
        if (lower < 0.0) lower = 0.0;
        if (upper > 1.0) upper = 1.0;
    }

    bool precise() const { return lower == upper; }
    double width() const { return upper - lower; }

    bool operator==(const ProbInterval&) const = default;

    /// True when this interval lies inside `outer`, up to `slack`.
    bool nested_in(const ProbInterval& outer, double slack = kIntervalSlack) const {
        return lower >= outer.lower - slack && upper <= outer.upper + slack;
    }
};

/// Interval for the complementary event: P(A^c) in [1-upper, 1-lower].
inline ProbInterval dual(const ProbInterval& iv) {
    return ProbInterval(1.0 - iv.upper, 1.0 - iv.lower);
}

/// Per-label prediction state. Abstain is only ever produced by the
/// imprecise strategies.
enum class LabelState : std::uint8_t { Irrelevant = 0, Relevant = 1, Abstain = 2 };

inline char to_char(LabelState s) {
    switch (s) {
        case LabelState::Irrelevant: return '0';
        case LabelState::Relevant: return '1';
        default: return '*';
    }
}

/// Interval decision rule for Y=1 at threshold 1/2: relevant when the whole
/// interval is above, irrelevant when below, abstain when it straddles.
///
/// When the interval is precise and `precise_tie_to_one` is set, a bound of
/// exactly 0.5 decides Relevant instead, matching the precise chain's >= rule.
/// Strategies enable that flag when s == 0 so the imprecise chain degenerates
/// to the precise one.
inline LabelState decide(const ProbInterval& iv, bool precise_tie_to_one) {
    if (iv.lower > 0.5) return LabelState::Relevant;
    if (iv.upper < 0.5) return LabelState::Irrelevant;
    if (precise_tie_to_one && iv.precise()) {
        return iv.lower >= 0.5 ? LabelState::Relevant : LabelState::Irrelevant;
    }
    return LabelState::Abstain;
}

/// Prediction for one instance: one state per label, in the original
/// dataset's label order (not chain order).
using PartialLabelVector = std::vector<LabelState>;

inline std::size_t determined_count(const PartialLabelVector& pred) {
    std::size_t n = 0;
    for (LabelState s : pred)
        if (s != LabelState::Abstain) ++n;
    return n;
}

inline std::string to_string(const PartialLabelVector& pred) {
    std::string out;
    out.reserve(pred.size() * 2);
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (i) out.push_back(',');
        out.push_back(to_char(pred[i]));
    }
    return out;
}

/// Disjoint index sets tracked while walking a chain: positions predicted
/// relevant, irrelevant, and abstained among the first j-1. Indices are
/// chain positions, 0-based.
struct IndexSets {
    std::vector<int> relevant;
    std::vector<int> irrelevant;
    std::vector<int> abstained;

    std::size_t total() const { return relevant.size() + irrelevant.size() + abstained.size(); }

    void record(int position, LabelState s) {
        switch (s) {
            case LabelState::Relevant: relevant.push_back(position); break;
            case LabelState::Irrelevant: irrelevant.push_back(position); break;
            case LabelState::Abstain: abstained.push_back(position); break;
        }
    }
};

}  // namespace credal
