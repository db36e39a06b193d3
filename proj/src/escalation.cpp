#include "octsum/escalation.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>

namespace octsum::escalation {

namespace {

// The 40 coefficient triples (b, c, d) for which (1, b, c, d) is universal.
const std::set<std::array<i64, 3>>& known_universal_triples() {
    static const std::set<std::array<i64, 3>> table = {
        {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {1, 2, 2}, {1, 2, 3},
        {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {1, 2, 7}, {1, 2, 8}, {1, 2, 9},
        {1, 2, 10}, {1, 2, 11}, {1, 2, 12}, {1, 2, 13}, {1, 3, 3}, {1, 3, 5},
        {1, 3, 6}, {2, 2, 2}, {2, 2, 3}, {2, 2, 4}, {2, 2, 5}, {2, 2, 6},
        {2, 3, 4}, {2, 3, 5}, {2, 3, 6}, {2, 3, 7}, {2, 3, 8}, {2, 3, 9},
        {2, 4, 4}, {2, 4, 5}, {2, 4, 6}, {2, 4, 7}, {2, 4, 8}, {2, 4, 9},
        {2, 4, 10}, {2, 4, 11}, {2, 4, 12}, {2, 4, 13}};
    return table;
}

std::string provenance(const OctSum& s) {
    const auto& c = s.coeffs();
    if (c.size() == 4 && c[0] == 1) {
        const std::array<i64, 3> t{c[1], c[2], c[3]};
        if (t == std::array<i64, 3>{1, 3, 3}) return "T2.1";
        if (t == std::array<i64, 3>{1, 3, 6}) return "T2.2";
        if (t == std::array<i64, 3>{2, 3, 6}) return "T2.3";
        if (t == std::array<i64, 3>{2, 3, 7}) return "T2.4a";
        if (t == std::array<i64, 3>{2, 3, 9}) return "T2.4b";
        if (known_universal_triples().count(t)) return "known-universal";
    }
    if (c.size() == 5) {
        const std::vector<i64> head(c.begin(), c.begin() + 4);
        const i64 tail = c[4];
        if (head == std::vector<i64>{1, 1, 3, 7}) {
            if (tail == 8) return "L3.6";
            if (tail == 12) return "L3.7";
            if (tail >= 7 && tail <= 14) return "L3.5";
        }
        // quinary escalations of the three exceptional quadruples
        if ((head == std::vector<i64>{1, 1, 2, 14} && tail >= 14 && tail <= 60) ||
            (head == std::vector<i64>{1, 1, 3, 4} && tail >= 4 && tail <= 18) ||
            (head == std::vector<i64>{1, 2, 3, 3} && tail >= 3 && tail <= 12))
            return "T3.1";
    }
    return "";
}

EscalationNode build(const OctSum& sum, int depth, int max_depth, i64 bound) {
    EscalationNode node;
    node.sum = sum;
    node.truant_value = truant(sum, bound);
    if (!node.truant_value) {
        node.proved_by = provenance(sum);
        return node;
    }
    if (depth >= max_depth) return node;
    const i64 lo = sum.arity() == 0 ? 1 : sum.coeffs().back();
    for (i64 c = lo; c <= *node.truant_value; ++c)
        node.children.push_back(build(sum.extended(c), depth + 1, max_depth, bound));
    return node;
}

void collect_truants(const EscalationNode& n, std::set<i64>& out) {
    if (n.truant_value) out.insert(*n.truant_value);
    for (const auto& ch : n.children) collect_truants(ch, out);
}

}  // namespace

std::optional<i64> truant(const OctSum& s, i64 bound) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    const Bitset reach = representable_up_to(s, bound);
    for (i64 n = 1; n <= bound; ++n) {
        if (!reach.test(static_cast<std::size_t>(n))) {
            // truant consistency: everything below is represented
            for (i64 m = 1; m < n; ++m)
                if (!reach.test(static_cast<std::size_t>(m)))
                    throw std::logic_error("truant scan inconsistency");
            return n;
        }
    }
    return std::nullopt;
}

const std::vector<i64>& universality_criterion() {
    static const std::vector<i64> crit = {1, 2, 3, 4, 6, 7, 9, 12, 13, 14, 18, 60};
    return crit;
}

EscalationTree escalate(int max_depth, i64 bound) {
    if (max_depth < 1) throw std::invalid_argument("max_depth must be >= 1");
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    EscalationTree tree;
    tree.max_depth = max_depth;
    tree.bound = bound;
    tree.root = build(OctSum{}, 0, max_depth, bound);
    return tree;
}

std::vector<i64> criterion_set(const EscalationTree& tree, bool force) {
    if (!force && (tree.max_depth < 5 || tree.bound < 60))
        throw std::invalid_argument(
            "tree too shallow for criterion extraction (need depth >= 5, bound >= 60)");
    std::set<i64> vals;
    collect_truants(tree.root, vals);
    return std::vector<i64>(vals.begin(), vals.end());
}

ClassificationReport classify(const OctSum& s, i64 bound, bool use_criterion) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    ClassificationReport rep;
    rep.sum = s;

    if (use_criterion) {
        for (i64 n : universality_criterion()) {
            if (!represents(s, n)) {
                rep.verdict = ClassificationReport::Verdict::kNotUniversal;
                rep.witness = n;
                rep.checked_bound = 0;
                return rep;
            }
        }
        // corroborating scan; a miss here would contradict the criterion
        const auto missing = exceptions_up_to(s, bound);
        if (!missing.empty())
            throw std::logic_error("criterion passed but scan found exception " +
                                   std::to_string(missing.front()));
        rep.verdict = ClassificationReport::Verdict::kUniversalByCriterion;
        rep.checked_bound = bound;
        return rep;
    }

    const auto missing = exceptions_up_to(s, bound);
    rep.checked_bound = bound;
    if (missing.empty()) {
        rep.verdict = ClassificationReport::Verdict::kBoundedUniversalUnproven;
        return rep;
    }
    for (i64 n : universality_criterion()) {
        if (!represents(s, n)) {
            rep.verdict = ClassificationReport::Verdict::kNotUniversal;
            rep.witness = n;
            return rep;
        }
    }
    throw std::logic_error("scan found an exception but all criterion values pass");
}

namespace {

nlohmann::ordered_json node_to_json(const EscalationNode& n) {
    nlohmann::ordered_json j;
    j["coeffs"] = n.sum.coeffs();
    if (n.truant_value) {
        j["status"] = "truant";
        j["truant"] = *n.truant_value;
    } else {
        j["status"] = "bounded-universal";
        if (!n.proved_by.empty()) j["proved_by"] = n.proved_by;
    }
    nlohmann::ordered_json kids = nlohmann::ordered_json::array();
    for (const auto& ch : n.children) kids.push_back(node_to_json(ch));
    j["children"] = std::move(kids);
    return j;
}

}  // namespace

nlohmann::ordered_json tree_to_json(const EscalationTree& tree) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["max_depth"] = tree.max_depth;
    j["bound"] = tree.bound;
    j["root"] = node_to_json(tree.root);
    return j;
}

}  // namespace octsum::escalation
