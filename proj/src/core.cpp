#include "octsum/core.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace octsum {

namespace {

constexpr i64 kMaxP8Arg = i64{1} << 30;
// two live buffers for range scans, k+1 for the per-target suffix sieve
constexpr i64 kMaxSieveBound = i64{1} << 28;
constexpr i64 kMaxSuffixSieve = i64{1} << 26;

// enumeration order 0, +1, -1, +2, -2, ... gives strictly increasing P8 values
i64 arg_at(i64 step) { return (step & 1) ? (step + 1) / 2 : -(step / 2); }

}  // namespace

i64 p8(i64 x) {
    if (x <= -kMaxP8Arg || x >= kMaxP8Arg)
        throw std::overflow_error("p8 argument out of exact range");
    return 3 * x * x - 2 * x;
}

std::vector<i64> oct_values_up_to(i64 bound) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    std::vector<i64> vals;
    for (i64 step = 0;; ++step) {
        const i64 v = p8(arg_at(step));
        if (v > bound) break;
        vals.push_back(v);
    }
    return vals;
}

bool is_gen_octagonal(i64 n) {
    if (n < 0) return false;
    if (n > (std::numeric_limits<i64>::max() - 1) / 3)
        throw std::overflow_error("value outside exact range");
    i64 root = 0;
    return is_square(3 * n + 1, &root) && root % 3 != 0;
}

i64 p8_arg(i64 v) {
    i64 root = 0;
    if (v < 0 || !is_square(3 * v + 1, &root))
        throw std::invalid_argument("not a generalized octagonal value");
    // exactly one of (1 +- root)/3 is integral
    if ((1 + root) % 3 == 0) return (1 + root) / 3;
    return (1 - root) / 3;
}

OctSum::OctSum(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
    for (i64 a : coeffs_)
        if (a < 1) throw std::invalid_argument("sum coefficients must be >= 1");
    std::sort(coeffs_.begin(), coeffs_.end());
}

i64 OctSum::coeff_sum() const {
    i64 s = 0;
    for (i64 a : coeffs_) s = checked_add(s, a);
    return s;
}

std::string OctSum::key() const {
    std::string k;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) k += ',';
        k += std::to_string(coeffs_[i]);
    }
    return k;
}

OctSum OctSum::extended(i64 c) const {
    std::vector<i64> next = coeffs_;
    next.push_back(c);
    return OctSum(next);
}

qform::RepProblem reduce_to_qform(const OctSum& s, i64 n) {
    if (s.arity() == 0) throw std::invalid_argument("reduction needs k >= 1");
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    const i64 target = checked_add(checked_mul(3, n), s.coeff_sum());
    return qform::RepProblem(qform::DiagonalForm(s.coeffs()), target,
                             qform::ResidueConstraint::nonzero_mod3(s.arity()));
}

namespace {

// suffix reachability: reach[i] = values of sum_{j >= i} a_j P8(x_j) in [0, n]
std::vector<Bitset> suffix_reach(const std::vector<i64>& coeffs, i64 n) {
    const std::size_t k = coeffs.size();
    const std::size_t size = static_cast<std::size_t>(n) + 1;
    std::vector<Bitset> reach(k + 1);
    reach[k] = Bitset(size);
    reach[k].set(0);
    for (std::size_t i = k; i-- > 0;) {
        reach[i] = Bitset(size);
        const i64 a = coeffs[i];
        for (i64 step = 0;; ++step) {
            const i64 v = p8(arg_at(step));
            if (checked_mul(a, v) > n) break;
            reach[i].or_shifted(reach[i + 1], static_cast<std::size_t>(a * v));
        }
    }
    return reach;
}

// exact lex DFS without the sieve, for targets beyond the sieve memory guard
bool dfs_plain(const std::vector<i64>& coeffs, std::size_t i, i64 rem,
               std::vector<i64>& xs) {
    if (i == coeffs.size()) return rem == 0;
    const i64 a = coeffs[i];
    if (i + 1 == coeffs.size()) {
        if (rem % a != 0 || !is_gen_octagonal(rem / a)) return false;
        xs[i] = p8_arg(rem / a);
        return true;
    }
    for (i64 step = 0;; ++step) {
        const i64 x = arg_at(step);
        const i64 v = p8(x);
        if (checked_mul(a, v) > rem) {
            if (x > 0) return false;
            continue;
        }
        xs[i] = x;
        if (dfs_plain(coeffs, i + 1, rem - a * v, xs)) return true;
    }
}

}  // namespace

std::optional<OctWitness> represents(const OctSum& s, i64 n) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    checked_add(checked_mul(3, n), s.coeff_sum());  // loud overflow, matches the reduction
    if (n > kMaxTarget) throw std::overflow_error("target outside exact range");

    const auto& coeffs = s.coeffs();
    const std::size_t k = coeffs.size();
    if (k == 0) {
        if (n == 0) return OctWitness{{}};
        return std::nullopt;
    }

    std::vector<i64> xs(k, 0);
    if (n > kMaxSuffixSieve) {
        if (!dfs_plain(coeffs, 0, n, xs)) return std::nullopt;
        return OctWitness{std::move(xs)};
    }

    const auto reach = suffix_reach(coeffs, n);
    if (!reach[0].test(static_cast<std::size_t>(n))) return std::nullopt;

    // greedy walk: at each coordinate take the smallest key whose remainder
    // stays completable; this is the lexicographic minimum
    i64 rem = n;
    for (std::size_t i = 0; i < k; ++i) {
        const i64 a = coeffs[i];
        for (i64 step = 0;; ++step) {
            const i64 x = arg_at(step);
            const i64 v = p8(x);
            if (a * v > rem) {
                if (x > 0) throw std::logic_error("reachable target lost during walk");
                continue;
            }
            if (reach[i + 1].test(static_cast<std::size_t>(rem - a * v))) {
                xs[i] = x;
                rem -= a * v;
                break;
            }
        }
    }
    return OctWitness{std::move(xs)};
}

Bitset representable_up_to(const OctSum& s, i64 bound) {
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");
    if (bound > kMaxSieveBound) throw std::overflow_error("sieve bound too large");
    const std::size_t size = static_cast<std::size_t>(bound) + 1;
    Bitset cur(size);
    cur.set(0);
    for (i64 a : s.coeffs()) {
        Bitset nxt(size);
        for (i64 step = 0;; ++step) {
            const i64 v = p8(arg_at(step));
            if (checked_mul(a, v) > bound) break;
            nxt.or_shifted(cur, static_cast<std::size_t>(a * v));
        }
        cur = std::move(nxt);
    }
    return cur;
}

std::vector<i64> exceptions_up_to(const OctSum& s, i64 bound) {
    const Bitset reach = representable_up_to(s, bound);
    std::vector<i64> missing;
    for (i64 n = 1; n <= bound; ++n)
        if (!reach.test(static_cast<std::size_t>(n))) missing.push_back(n);
    return missing;
}

i64 oct_arg_from_unit(i64 y) {
    const i64 r = ((y % 3) + 3) % 3;
    if (r == 0) throw std::invalid_argument("unit value is 0 mod 3");
    // y = 3x-1 directly when y = 2 mod 3, else through -y
    return r == 2 ? (y + 1) / 3 : (1 - y) / 3;
}

OctWitness oct_witness_from_form(const OctSum& s, i64 n, const std::vector<i64>& ys) {
    if (ys.size() != s.arity()) throw std::invalid_argument("witness arity mismatch");
    std::vector<i64> xs(ys.size());
    i64 total = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        xs[i] = oct_arg_from_unit(ys[i]);
        total = checked_add(total, checked_mul(s.coeffs()[i], p8(xs[i])));
    }
    if (total != n) throw std::logic_error("converted witness does not hit target");
    return OctWitness{std::move(xs)};
}

}  // namespace octsum
