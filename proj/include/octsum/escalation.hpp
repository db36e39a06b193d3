#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octsum/core.hpp"

namespace octsum::escalation {

inline constexpr i64 kDefaultBound = 10000;

// Smallest n in [1, bound] not represented by s, or empty if s represents
// the whole range.
std::optional<i64> truant(const OctSum& s, i64 bound);

// The twelve integers a sum must represent to be universal.
const std::vector<i64>& universality_criterion();

struct EscalationNode {
    OctSum sum;
    // empty = no truant <= bound (bounded-universal leaf)
    std::optional<i64> truant_value;
    // annotation naming the certified result that proves universality, when
    // one applies ("" otherwise); only set on bounded-universal nodes
    std::string proved_by;
    std::vector<EscalationNode> children;

    bool bounded_universal() const { return !truant_value.has_value(); }
};

struct EscalationTree {
    EscalationNode root;  // the empty sum
    int max_depth = 0;
    i64 bound = 0;
};

// Builds the escalation tree: each truant node branches over coefficients c
// with last-coefficient <= c <= truant, bounded-universal nodes are leaves,
// depth capped at max_depth.
EscalationTree escalate(int max_depth, i64 bound);

// Union of all truant values in the tree, ascending. Trees built with depth
// below 5 or bound below 60 cannot contain the full criterion and are
// refused unless force is set.
std::vector<i64> criterion_set(const EscalationTree& tree, bool force = false);

struct ClassificationReport {
    enum class Verdict { kUniversalByCriterion, kNotUniversal, kBoundedUniversalUnproven };

    OctSum sum;
    Verdict verdict = Verdict::kBoundedUniversalUnproven;
    std::optional<i64> witness;  // missed criterion integer for kNotUniversal
    i64 checked_bound = 0;

    bool universal() const { return verdict == Verdict::kUniversalByCriterion; }
};

// Checks the twelve criterion integers first; a miss is decisive. When all
// twelve are represented the verdict is universal-by-criterion, corroborated
// by a scan of [1, bound]. With use_criterion = false only the scan runs and
// a clean scan yields the weaker bounded-universal-unproven verdict.
ClassificationReport classify(const OctSum& s, i64 bound = kDefaultBound,
                              bool use_criterion = true);

// Canonical serialization (stable key order, children in coefficient order).
nlohmann::ordered_json tree_to_json(const EscalationTree& tree);

}  // namespace octsum::escalation
