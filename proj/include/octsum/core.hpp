#pragma once

#include <optional>
#include <string>
#include <vector>

#include "octsum/qform.hpp"
#include "octsum/util.hpp"

namespace octsum {

// P8(x) = 3x^2 - 2x, defined for every integer x (negative included).
// |x| must stay below 2^30 so the arithmetic is exact.
i64 p8(i64 x);

// Every generalized octagonal value in [0, bound], strictly increasing.
std::vector<i64> oct_values_up_to(i64 bound);

// Membership test via the identity 3*P8(x) + 1 = (3x-1)^2: n is generalized
// octagonal iff 3n+1 is a perfect square (whose root is never 0 mod 3).
bool is_gen_octagonal(i64 n);

// The unique x with P8(x) = v, for a generalized octagonal v.
i64 p8_arg(i64 v);

// A weighted sum a_1 P8 + ... + a_k P8. Coefficients are kept sorted
// non-decreasing (multiset semantics, duplicates allowed); k = 0 is the
// empty sum used as the escalation root and represents exactly 0.
class OctSum {
public:
    OctSum() = default;
    explicit OctSum(std::vector<i64> coeffs);

    const std::vector<i64>& coeffs() const { return coeffs_; }
    std::size_t arity() const { return coeffs_.size(); }
    i64 coeff_sum() const;
    std::string key() const;  // "a,b,c" in canonical order; "" for the empty sum

    // new sum with one coefficient appended (re-canonicalized)
    OctSum extended(i64 c) const;

    bool operator==(const OctSum& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<i64> coeffs_;
};

struct OctWitness {
    std::vector<i64> xs;  // arguments of P8, one per coefficient
};

// The mod-3 reduction: sum a_i P8(x_i) = n has a solution iff
// sum a_i y_i^2 = 3n + sum a_i does with every y_i = 1 or 2 mod 3
// (correspondence y_i = 3x_i - 1 up to sign).
qform::RepProblem reduce_to_qform(const OctSum& s, i64 n);

// Deterministic representability with witness: the returned argument vector
// is lexicographically smallest under (|x_1|, positive-first sign, |x_2|, ...).
std::optional<OctWitness> represents(const OctSum& s, i64 n);

// Reachability bitmap of { sum a_i P8(x_i) } over [0, bound].
Bitset representable_up_to(const OctSum& s, i64 bound);

// Exactly { n in [1, bound] : not represented }, ascending.
std::vector<i64> exceptions_up_to(const OctSum& s, i64 bound);

// Recovers the P8 argument from a unit residue value y (= 1 or 2 mod 3):
// the unique x with P8(x) = (y^2 - 1) / 3.
i64 oct_arg_from_unit(i64 y);

// Converts a reduced-form witness (all y_i nonzero mod 3) into the octagonal
// witness for n, validating the arithmetic.
OctWitness oct_witness_from_form(const OctSum& s, i64 n, const std::vector<i64>& ys);

}  // namespace octsum
