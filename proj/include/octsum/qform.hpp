#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octsum/util.hpp"

namespace octsum::qform {

// Diagonal positive-definite form <a_1,...,a_n>. Coefficient order is kept
// as given; representation behaviour is permutation-invariant.
class DiagonalForm {
public:
    DiagonalForm() = default;
    explicit DiagonalForm(std::vector<i64> coeffs);

    const std::vector<i64>& coeffs() const { return coeffs_; }
    std::size_t arity() const { return coeffs_.size(); }

    // canonical (sorted) key, e.g. "1,1,2" — used for caching and catalogs
    std::string key() const;

    bool operator==(const DiagonalForm& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<i64> coeffs_;
};

// Per-variable residue sets modulo a common modulus. modulus 1 with allowed
// set {0} everywhere is the trivial constraint.
class ResidueConstraint {
public:
    ResidueConstraint() = default;
    ResidueConstraint(i64 modulus, std::vector<std::vector<i64>> allowed);

    static ResidueConstraint unconstrained(std::size_t arity);
    // every variable restricted to {1, 2} mod 3
    static ResidueConstraint nonzero_mod3(std::size_t arity);

    i64 modulus() const { return modulus_; }
    std::size_t arity() const { return allowed_.size(); }
    bool allows(std::size_t var, i64 value) const;
    const std::vector<std::vector<i64>>& allowed() const { return allowed_; }

private:
    i64 modulus_ = 1;
    std::vector<std::vector<i64>> allowed_;
};

// A diagonal equation sum a_i y_i^2 = target under residue constraints.
struct RepProblem {
    DiagonalForm form;
    i64 target = 0;
    ResidueConstraint constraint;

    RepProblem(DiagonalForm f, i64 target, ResidueConstraint c);
};

struct FormWitness {
    std::vector<i64> ys;
};

// Optional fixed value per variable; empty set = nothing pinned. Mirrors the
// candidate-pinning style of the verification pipelines ("take d in {1,5,7}").
using PinSet = std::vector<std::optional<i64>>;

// Lazy enumeration of every solution vector, deterministically ordered
// (coordinate-wise by |y| ascending, positive before negative). Single
// consumer; create one stream per worker.
class SolutionStream {
public:
    explicit SolutionStream(RepProblem p, PinSet pins = {});
    std::optional<FormWitness> next();

private:
    struct Level {
        i64 rem = 0;        // remaining target entering this level
        i64 step = -1;      // candidate counter (inner levels)
        int last_idx = -1;  // index into last-level candidates
        i64 last_cands[2] = {0, 0};
        int last_count = 0;
        i64 value = 0;
    };

    bool advance(std::size_t lvl);

    RepProblem prob_;
    PinSet pins_;
    std::vector<Level> levels_;
    bool exhausted_ = false;
    bool started_ = false;
};

// First solution in the deterministic order, if any.
std::optional<FormWitness> solve(const RepProblem& p, const PinSet& pins = {});

SolutionStream solve_all(const RepProblem& p, const PinSet& pins = {});

// Plain representability (trivial constraint); n < 0 is never represented.
bool represents_unconstrained(const DiagonalForm& f, i64 n);

// Arithmetic pattern c * 4^s * (8t+7) describing exactly the integers a
// specific ternary form misses, with an optional extra congruence.
struct ExclusionRule {
    i64 scale = 1;
    std::optional<std::pair<i64, i64>> side_condition;  // (modulus, residue)

    ExclusionRule() = default;
    explicit ExclusionRule(i64 scale, std::optional<std::pair<i64, i64>> side = std::nullopt)
        : scale(scale), side_condition(std::move(side)) {}
};

// true iff n >= 1 matches the rule: divisible by scale, and after stripping
// factors of 4 from n/scale the quotient is 7 mod 8 (plus side condition).
bool excluded_by_rule(const ExclusionRule& r, i64 n);

// Closed-form representation criteria for the catalog forms <1,1,2>, <1,1,9>,
// <3,3,6>, <1,4,6>. For <1,1,9> the closed form applies only to n = 2 mod 3
// and for <1,4,6> only to odd n not divisible by 3; outside those residues
// the decision falls back to search.
bool criterion_represents(const DiagonalForm& f, i64 n);

struct CriterionReport {
    DiagonalForm form;
    i64 bound = 0;
    i64 checked = 0;
    std::vector<i64> disagreements;  // empty expected
};

// Cross-checks the closed-form criterion against exhaustive search on every
// n <= bound in the form's asserted residue class.
CriterionReport verify_criterion(const DiagonalForm& f, i64 bound);

// Bounded representability table: one sieve pass, then O(1) membership.
class RepTable {
public:
    RepTable(const DiagonalForm& f, i64 bound);

    bool represents(i64 n) const;
    i64 bound() const { return bound_; }
    const DiagonalForm& form() const { return form_; }

private:
    DiagonalForm form_;
    i64 bound_ = 0;
    Bitset bits_;
};

}  // namespace octsum::qform
