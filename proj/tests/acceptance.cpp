// Acceptance suite: one line per criterion, non-zero exit on any failure.
// Bounds and tolerances are pinned here; everything is exact integer math.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "octsum/escalation.hpp"
#include "octsum/repair.hpp"
#include "octsum/verify.hpp"
#include "oracle.hpp"

using namespace octsum;

namespace {

int failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) return "";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. the five conjectured quaternary sums have no exception up to 10^5
void criterion1() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::vector<i64>> sums = {
        {1, 1, 3, 3}, {1, 1, 3, 6}, {1, 2, 3, 6}, {1, 2, 3, 7}, {1, 2, 3, 9}};
    bool ok = true;
    std::string detail;
    for (const auto& coeffs : sums) {
        const auto missing = exceptions_up_to(OctSum(coeffs), 100000);
        if (!missing.empty()) {
            ok = false;
            detail = OctSum(coeffs).key() + " misses " + std::to_string(missing.front());
        }
    }
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    if (ok && secs >= 120) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + "s exceeds 2 minutes";
    }
    report(1, "five conjectured universal sums have empty exception sets to 1e5", ok, detail);
}

// 2. exceptional values reproduced exactly
void criterion2() {
    bool ok = exceptions_up_to(OctSum({1, 1, 2, 14}), 100000) == std::vector<i64>{60};
    ok = ok && exceptions_up_to(OctSum({1, 1, 3, 4}), 100000) == std::vector<i64>{18};
    ok = ok && exceptions_up_to(OctSum({1, 2, 3, 3}), 100000) == std::vector<i64>{12};
    ok = ok && !represents(OctSum({1, 1, 3, 7}), 14).has_value();
    report(2, "exceptional values {60}, {18}, {12} and the missed 14 reproduce exactly", ok);
}

// 3. depth-4 escalation tree matches the truant table, the 40 quadruples,
//    and the golden serialization byte for byte
void criterion3() {
    const auto tree = escalation::escalate(4, 10000);
    bool ok = true;
    std::string detail;

    const std::vector<std::pair<std::vector<i64>, i64>> truants = {
        {{}, 1},        {{1}, 2},        {{1, 1}, 3},    {{1, 2}, 4},
        {{1, 1, 1}, 4}, {{1, 1, 2}, 14}, {{1, 1, 3}, 7}, {{1, 2, 2}, 6},
        {{1, 2, 3}, 9}, {{1, 2, 4}, 13}};
    std::function<const escalation::EscalationNode*(const escalation::EscalationNode&,
                                                    const std::vector<i64>&)>
        find = [&](const escalation::EscalationNode& node,
                   const std::vector<i64>& coeffs) -> const escalation::EscalationNode* {
        if (node.sum.coeffs() == coeffs) return &node;
        for (const auto& ch : node.children)
            if (const auto* hit = find(ch, coeffs)) return hit;
        return nullptr;
    };
    for (const auto& [coeffs, value] : truants) {
        const auto* node = find(tree.root, coeffs);
        if (!node || node->truant_value != value) {
            ok = false;
            detail = "truant table mismatch at (" + OctSum(coeffs).key() + ")";
        }
    }

    // exactly the 40 universal quadruples and the 4 exceptional ones at depth 4
    std::vector<const escalation::EscalationNode*> depth4;
    std::function<void(const escalation::EscalationNode&, int)> walk =
        [&](const escalation::EscalationNode& node, int depth) {
            if (depth == 4) depth4.push_back(&node);
            for (const auto& ch : node.children) walk(ch, depth + 1);
        };
    walk(tree.root, 0);
    const std::vector<std::pair<std::string, i64>> exceptional = {
        {"1,1,2,14", 60}, {"1,1,3,4", 18}, {"1,1,3,7", 14}, {"1,2,3,3", 12}};
    // the forty universal quadruples (1, b, c, d), stated as (b, c, d)
    const std::set<std::vector<i64>> forty = {
        {1, 1, 1}, {1, 1, 2}, {1, 1, 3}, {1, 1, 4}, {1, 2, 2}, {1, 2, 3},
        {1, 2, 4}, {1, 2, 5}, {1, 2, 6}, {1, 2, 7}, {1, 2, 8}, {1, 2, 9},
        {1, 2, 10}, {1, 2, 11}, {1, 2, 12}, {1, 2, 13}, {1, 3, 3}, {1, 3, 5},
        {1, 3, 6}, {2, 2, 2}, {2, 2, 3}, {2, 2, 4}, {2, 2, 5}, {2, 2, 6},
        {2, 3, 4}, {2, 3, 5}, {2, 3, 6}, {2, 3, 7}, {2, 3, 8}, {2, 3, 9},
        {2, 4, 4}, {2, 4, 5}, {2, 4, 6}, {2, 4, 7}, {2, 4, 8}, {2, 4, 9},
        {2, 4, 10}, {2, 4, 11}, {2, 4, 12}, {2, 4, 13}};
    std::set<std::vector<i64>> universal_found;
    int truant_nodes = 0;
    for (const auto* node : depth4) {
        bool is_exc = false;
        for (const auto& [key, value] : exceptional) {
            if (node->sum.key() == key) {
                is_exc = true;
                ++truant_nodes;
                if (node->truant_value != value) {
                    ok = false;
                    detail = "wrong truant at (" + key + ")";
                }
            }
        }
        if (!is_exc) {
            if (!node->bounded_universal() || node->sum.coeffs().front() != 1) {
                ok = false;
                detail = "(" + node->sum.key() + ") unexpectedly misses a value";
            } else {
                const auto& c = node->sum.coeffs();
                universal_found.insert({c[1], c[2], c[3]});
            }
        }
    }
    if (universal_found != forty || truant_nodes != 4 || depth4.size() != 44) {
        ok = false;
        detail = "depth-4 layer has " + std::to_string(depth4.size()) + " nodes, " +
                 std::to_string(universal_found.size()) + " universal";
    }

    const std::string golden = read_file("data/escalation_depth4_b10000.json");
    const std::string fresh = escalation::tree_to_json(tree).dump(2) + "\n";
    if (golden.empty() || golden != fresh) {
        ok = false;
        detail = golden.empty() ? "golden file missing" : "serialization differs from golden file";
    }
    report(3, "depth-4 escalation tree reproduces the truant table, 40 quadruples, golden JSON",
           ok, detail);
}

// 4. criterion set of the depth-5 tree
void criterion4() {
    const auto crit = escalation::criterion_set(escalation::escalate(5, 10000));
    const bool ok = crit == std::vector<i64>{1, 2, 3, 4, 6, 7, 9, 12, 13, 14, 18, 60};
    report(4, "criterion set equals {1,2,3,4,6,7,9,12,13,14,18,60}", ok);
}

// 5. quinary universality for alpha in {7..14}
void criterion5() {
    bool ok = true;
    std::string detail;
    for (i64 alpha = 7; alpha <= 14; ++alpha) {
        const OctSum s({1, 1, 3, 7, alpha});
        const auto missing = exceptions_up_to(s, 100000);
        if (!missing.empty()) {
            ok = false;
            detail = "(" + s.key() + ") misses " + std::to_string(missing.front());
        }
    }
    report(5, "sums (1,1,3,7,alpha) are exception-free to 1e5 for alpha in 7..14", ok, detail);
}

// 6. ternary closed-form criteria against exhaustive search
void criterion6() {
    bool ok = true;
    std::string detail;
    for (const auto& coeffs :
         {std::vector<i64>{1, 1, 2}, {1, 1, 9}, {3, 3, 6}, {1, 4, 6}}) {
        const auto rep = qform::verify_criterion(qform::DiagonalForm(coeffs), 10000);
        if (!rep.disagreements.empty()) {
            ok = false;
            detail = "<" + rep.form.key() + "> disagrees at " +
                     std::to_string(rep.disagreements.front());
        }
    }
    report(6, "ternary criteria match search up to 1e4 with zero disagreements", ok, detail);
}

// 7. repair properties
void criterion7() {
    bool ok = true;
    std::string detail;

    std::mt19937_64 rng(20250808);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
        const i64 a = 3 * (static_cast<i64>(rng() % 2001) - 1000);
        const i64 b = 3 * (static_cast<i64>(rng() % 2001) - 1000);
        const i64 d = 3 * (static_cast<i64>(rng() % 2001) - 1000);
        const repair::TauVector v{a, b, d};
        if (repair::tau_step(v).norm() != v.norm()) {
            ok = false;
            detail = "tau norm drift";
        }
    }

    for (i64 e = -200; e <= 200 && ok; ++e)
        for (i64 b = -200; b <= 200; ++b) {
            if ((e - b) % 2 != 0) continue;
            const auto r = repair::parity_repair(e, b);
            if (r.u * r.u + 3 * r.v * r.v != e * e + 3 * b * b) {
                ok = false;
                detail = "parity identity failed";
                break;
            }
        }

    for (i64 c = -60; c <= 60 && ok; ++c)
        for (i64 d = -60; d <= 60; ++d) {
            const i64 u = c - 2 * d, v = c + d;
            if (u == 0 && v == 0) continue;
            if (!repair::jones_repair(u, v)) {
                ok = false;
                detail = "jones failed at c=" + std::to_string(c) + ", d=" + std::to_string(d);
                break;
            }
        }

    for (i64 t = 1; t <= 3 && ok; ++t) {
        const auto esc = repair::eigenvector_escape({2 * t, 12 * t, -5 * t});
        if (!esc || !(*esc == repair::TauVector{14 * t, 6 * t, 2 * t}) ||
            esc->norm() != 248 * t * t) {
            ok = false;
            detail = "eigenvector escape failed at t=" + std::to_string(t);
        }
    }

    report(7, "repair properties (tau isometry, parity identity, jones range, 248t^2 escape)",
           ok, detail);
}

// 8. verify_all passes at 1e4 with byte-deterministic certificates
void criterion8() {
    const auto start = std::chrono::steady_clock::now();
    const auto first = verify::verify_all(10000);
    const auto second = verify::verify_all(10000);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    bool ok = first.size() == 17 && second.size() == 17;
    std::string detail;
    for (std::size_t i = 0; ok && i < first.size(); ++i) {
        if (!first[i].pass) {
            ok = false;
            detail = verify::to_string(first[i].id) + " failed (n=" +
                     std::to_string(first[i].fail_n) + ", " + first[i].fail_claim + ")";
        } else if (verify::certificate_to_json(first[i]).dump(2) !=
                   verify::certificate_to_json(second[i]).dump(2)) {
            ok = false;
            detail = verify::to_string(first[i].id) + " not byte-deterministic";
        }
    }
    if (ok && secs >= 300) {
        ok = false;
        detail = "runtime " + std::to_string(secs) + "s exceeds 5 minutes";
    }
    report(8, "all 17 claim pipelines pass at 1e4 with byte-identical reruns", ok, detail);
}

// 9. oracle equivalence on random sums
void criterion9() {
    std::mt19937_64 rng(424242);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 500 && ok; ++trial) {
        const std::size_t k = 1 + rng() % 5;
        std::vector<i64> coeffs;
        for (std::size_t i = 0; i < k; ++i) coeffs.push_back(1 + rng() % 15);
        const i64 n = rng() % 2001;
        const OctSum s(coeffs);
        const auto got = represents(s, n);
        const bool expected = testoracle::represents_naive(coeffs, n);
        if (got.has_value() != expected) {
            ok = false;
            detail = "(" + s.key() + ") at n=" + std::to_string(n);
        } else if (got) {
            i64 total = 0;
            for (std::size_t i = 0; i < k; ++i) total += s.coeffs()[i] * p8(got->xs[i]);
            if (total != n) {
                ok = false;
                detail = "witness sum mismatch at n=" + std::to_string(n);
            }
        }
    }
    report(9, "represents matches the direct combination-enumeration oracle on 500 samples",
           ok, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (failures == 0) std::printf("acceptance: all 9 criteria pass\n");
    else std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
