#include "octsum/qform.hpp"

#include <algorithm>
#include <stdexcept>

namespace octsum::qform {

namespace {

// memory guard for sieve-style tables
constexpr i64 kMaxTableBound = i64{1} << 28;

i64 norm_mod(i64 v, i64 m) { return ((v % m) + m) % m; }

}  // namespace

DiagonalForm::DiagonalForm(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
    for (i64 a : coeffs_)
        if (a < 1) throw std::invalid_argument("diagonal coefficients must be >= 1");
}

std::string DiagonalForm::key() const {
    std::vector<i64> sorted = coeffs_;
    std::sort(sorted.begin(), sorted.end());
    std::string k;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i) k += ',';
        k += std::to_string(sorted[i]);
    }
    return k;
}

ResidueConstraint::ResidueConstraint(i64 modulus, std::vector<std::vector<i64>> allowed)
    : modulus_(modulus), allowed_(std::move(allowed)) {
    if (modulus_ < 1) throw std::invalid_argument("modulus must be >= 1");
    for (auto& set : allowed_) {
        if (set.empty()) throw std::invalid_argument("empty residue set");
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        for (i64 r : set)
            if (r < 0 || r >= modulus_)
                throw std::invalid_argument("residue outside [0, modulus)");
    }
}

ResidueConstraint ResidueConstraint::unconstrained(std::size_t arity) {
    return ResidueConstraint(1, std::vector<std::vector<i64>>(arity, {0}));
}

ResidueConstraint ResidueConstraint::nonzero_mod3(std::size_t arity) {
    return ResidueConstraint(3, std::vector<std::vector<i64>>(arity, {1, 2}));
}

bool ResidueConstraint::allows(std::size_t var, i64 value) const {
    const i64 r = norm_mod(value, modulus_);
    const auto& set = allowed_[var];
    return std::find(set.begin(), set.end(), r) != set.end();
}

RepProblem::RepProblem(DiagonalForm f, i64 t, ResidueConstraint c)
    : form(std::move(f)), target(t), constraint(std::move(c)) {
    if (constraint.arity() != form.arity())
        throw std::invalid_argument("constraint arity does not match form arity");
    if (target > kMaxTarget)
        throw std::overflow_error("target outside exact-arithmetic range");
}

SolutionStream::SolutionStream(RepProblem p, PinSet pins)
    : prob_(std::move(p)), pins_(std::move(pins)), levels_(prob_.form.arity()) {
    if (!pins_.empty() && pins_.size() != prob_.form.arity())
        throw std::invalid_argument("pin set arity does not match form arity");
}

bool SolutionStream::advance(std::size_t lvl) {
    Level& L = levels_[lvl];
    const i64 a = prob_.form.coeffs()[lvl];
    const bool last = (lvl + 1 == levels_.size());
    const bool has_pin = !pins_.empty() && pins_[lvl].has_value();
    const i64 pin_val = has_pin ? *pins_[lvl] : 0;

    if (last) {
        while (++L.last_idx < L.last_count) {
            const i64 v = L.last_cands[L.last_idx];
            if (has_pin && v != pin_val) continue;
            if (!prob_.constraint.allows(lvl, v)) continue;
            L.value = v;
            return true;
        }
        return false;
    }

    while (true) {
        ++L.step;
        i64 y;
        if (has_pin) {
            if (L.step > 0) return false;
            y = pin_val;
            if (a * y * y > L.rem) return false;
        } else {
            // candidate order 0, +1, -1, +2, -2, ...
            y = (L.step & 1) ? (L.step + 1) / 2 : -(L.step / 2);
            const i64 sq = a * y * y;
            if (sq > L.rem) {
                if (y > 0) return false;  // squares are nondecreasing from here
                continue;
            }
        }
        if (!prob_.constraint.allows(lvl, y)) continue;
        L.value = y;
        return true;
    }
}

std::optional<FormWitness> SolutionStream::next() {
    if (exhausted_) return std::nullopt;
    const std::size_t k = prob_.form.arity();

    if (k == 0) {
        exhausted_ = true;
        if (prob_.target == 0) return FormWitness{{}};
        return std::nullopt;
    }
    if (prob_.target < 0) {
        exhausted_ = true;
        return std::nullopt;
    }

    auto setup = [&](std::size_t lvl, i64 rem) {
        Level& L = levels_[lvl];
        L.rem = rem;
        L.step = -1;
        L.last_idx = -1;
        L.last_count = 0;
        if (lvl + 1 == k) {
            const i64 a = prob_.form.coeffs()[lvl];
            if (rem % a == 0) {
                i64 root = 0;
                if (is_square(rem / a, &root)) {
                    if (root == 0) {
                        L.last_cands[L.last_count++] = 0;
                    } else {
                        L.last_cands[L.last_count++] = root;
                        L.last_cands[L.last_count++] = -root;
                    }
                }
            }
        }
    };

    std::size_t lvl;
    if (!started_) {
        started_ = true;
        setup(0, prob_.target);
        lvl = 0;
    } else {
        lvl = k - 1;  // resume past the previously emitted solution
    }

    while (true) {
        if (advance(lvl)) {
            if (lvl + 1 == k) {
                std::vector<i64> ys(k);
                for (std::size_t i = 0; i < k; ++i) ys[i] = levels_[i].value;
                // re-validate before handing the witness out
                i64 sum = 0;
                for (std::size_t i = 0; i < k; ++i)
                    sum = checked_add(sum, checked_mul(prob_.form.coeffs()[i],
                                                       checked_mul(ys[i], ys[i])));
                if (sum != prob_.target)
                    throw std::logic_error("witness failed re-validation");
                for (std::size_t i = 0; i < k; ++i)
                    if (!prob_.constraint.allows(i, ys[i]))
                        throw std::logic_error("witness violates residue constraint");
                return FormWitness{std::move(ys)};
            }
            const i64 a = prob_.form.coeffs()[lvl];
            const i64 v = levels_[lvl].value;
            setup(lvl + 1, levels_[lvl].rem - a * v * v);
            ++lvl;
        } else {
            if (lvl == 0) {
                exhausted_ = true;
                return std::nullopt;
            }
            --lvl;
        }
    }
}

std::optional<FormWitness> solve(const RepProblem& p, const PinSet& pins) {
    return SolutionStream(p, pins).next();
}

SolutionStream solve_all(const RepProblem& p, const PinSet& pins) {
    return SolutionStream(p, pins);
}

bool represents_unconstrained(const DiagonalForm& f, i64 n) {
    if (n < 0) return false;
    // decision only: search with largest coefficients outermost
    std::vector<i64> desc = f.coeffs();
    std::sort(desc.begin(), desc.end(), std::greater<i64>());
    DiagonalForm g(desc);
    RepProblem p(g, n, ResidueConstraint::unconstrained(g.arity()));
    return solve(p).has_value();
}

bool excluded_by_rule(const ExclusionRule& r, i64 n) {
    if (n < 1) throw std::invalid_argument("excluded_by_rule requires n >= 1");
    if (r.scale < 1) throw std::invalid_argument("rule scale must be >= 1");
    if (n % r.scale != 0) return false;
    i64 m = n / r.scale;
    while (m % 4 == 0) m /= 4;
    if (m % 8 != 7) return false;
    if (r.side_condition) {
        const auto& [mod, res] = *r.side_condition;
        if (norm_mod(n, mod) != res) return false;
    }
    return true;
}

namespace {

enum class Catalog { k112, k119, k336, k146 };

Catalog catalog_of(const DiagonalForm& f) {
    const std::string k = f.key();
    if (k == "1,1,2") return Catalog::k112;
    if (k == "1,1,9") return Catalog::k119;
    if (k == "3,3,6") return Catalog::k336;
    if (k == "1,4,6") return Catalog::k146;
    throw std::invalid_argument("unknown catalog form <" + k + ">");
}

}  // namespace

bool criterion_represents(const DiagonalForm& f, i64 n) {
    const Catalog c = catalog_of(f);
    if (n < 1) throw std::invalid_argument("criterion_represents requires n >= 1");
    switch (c) {
        case Catalog::k112:
            // misses exactly 2 * 4^s * (8t+7)
            return !excluded_by_rule(ExclusionRule(2), n);
        case Catalog::k119:
            // asserted only on n = 2 mod 3: misses exactly 4^s * (8t+7)
            if (n % 3 == 2) return !excluded_by_rule(ExclusionRule(1), n);
            return represents_unconstrained(f, n);
        case Catalog::k336:
            // multiples of 3 except 6 * 4^s * (8t+7)
            return n % 3 == 0 && !excluded_by_rule(ExclusionRule(6), n);
        case Catalog::k146:
            // asserted only on odd n not divisible by 3: everything represented
            if (n % 2 == 1 && n % 3 != 0) return true;
            return represents_unconstrained(f, n);
    }
    return false;  // unreachable
}

CriterionReport verify_criterion(const DiagonalForm& f, i64 bound) {
    const Catalog c = catalog_of(f);
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    RepTable table(f, bound);
    CriterionReport rep{f, bound, 0, {}};
    for (i64 n = 1; n <= bound; ++n) {
        bool in_class = true;
        bool expected = false;
        switch (c) {
            case Catalog::k112:
                expected = !excluded_by_rule(ExclusionRule(2), n);
                break;
            case Catalog::k119:
                in_class = (n % 3 == 2);
                if (in_class) expected = !excluded_by_rule(ExclusionRule(1), n);
                break;
            case Catalog::k336:
                expected = (n % 3 == 0) && !excluded_by_rule(ExclusionRule(6), n);
                break;
            case Catalog::k146:
                in_class = (n % 2 == 1 && n % 3 != 0);
                expected = true;
                break;
        }
        if (!in_class) continue;
        ++rep.checked;
        if (expected != table.represents(n)) rep.disagreements.push_back(n);
    }
    return rep;
}

RepTable::RepTable(const DiagonalForm& f, i64 bound) : form_(f), bound_(bound) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    if (bound > kMaxTableBound)
        throw std::overflow_error("representability table bound too large");
    const std::size_t n = static_cast<std::size_t>(bound) + 1;
    Bitset cur(n);
    cur.set(0);
    for (i64 a : f.coeffs()) {
        Bitset nxt(n);
        const i64 ymax = isqrt(bound / a);
        for (i64 y = 0; y <= ymax; ++y) nxt.or_shifted(cur, static_cast<std::size_t>(a * y * y));
        cur = std::move(nxt);
    }
    bits_ = std::move(cur);
}

bool RepTable::represents(i64 n) const {
    if (n < 0) return false;
    if (n > bound_) throw std::out_of_range("query beyond table bound");
    return bits_.test(static_cast<std::size_t>(n));
}

}  // namespace octsum::qform
