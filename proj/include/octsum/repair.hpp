#pragma once

#include <optional>

#include "octsum/util.hpp"

namespace octsum::repair {

// A binary representation, either u^2 + 2 v^2 or u^2 + 3 v^2.
struct BinaryRep {
    enum class Form { x2_plus_2y2, x2_plus_3y2 };
    Form form = Form::x2_plus_2y2;
    i64 u = 0;
    i64 v = 0;

    i64 norm() const {
        const i64 c = (form == Form::x2_plus_2y2) ? 2 : 3;
        return checked_add(checked_mul(u, u), checked_mul(c, checked_mul(v, v)));
    }
};

// Bounded search for (e, f) with e^2 + 2 f^2 = u^2 + 2 v^2 and e*f nonzero
// mod 3. Returns the smallest such e > 0 with f > 0; empty when no pair
// exists (e.g. norm 1). (u, v) = (0, 0) is rejected.
std::optional<BinaryRep> jones_repair(i64 u, i64 v);

// For e = b (mod 2): returns (p, q) = ((e+3b)/2, (e-b)/2), which satisfies
// p^2 + 3 q^2 = e^2 + 3 b^2. When e is nonzero mod 3 and b is 0 mod 3, both
// outputs are nonzero mod 3.
BinaryRep parity_repair(i64 e, i64 b);

// Integer solution of x^2 + y^2 + 4 t^2 = M, with its norm pinned at
// construction time.
struct TauVector {
    i64 a = 0;
    i64 b = 0;
    i64 d = 0;

    TauVector() = default;
    TauVector(i64 a, i64 b, i64 d) : a(a), b(b), d(d) {}
    TauVector(i64 a, i64 b, i64 d, i64 claimed_norm);

    i64 norm() const {
        return checked_add(checked_add(checked_mul(a, a), checked_mul(b, b)),
                           checked_mul(4, checked_mul(d, d)));
    }
    bool all_nonzero_mod3() const { return a % 3 != 0 && b % 3 != 0 && d % 3 != 0; }
    bool all_zero_mod3() const { return a % 3 == 0 && b % 3 == 0 && d % 3 == 0; }

    bool operator==(const TauVector& o) const { return a == o.a && b == o.b && d == o.d; }
};

// One application of the norm-preserving map
//   (a, b, d) -> (a + 2b + 4d, -2a - b + 4d, -a + b - d) / 3.
// Throws when the image is not integral (all components 0 mod 3 guarantees it).
TauVector tau_step(const TauVector& w);

// The ray t*(2, 12, -5) is where iteration can stall; it shares its norm
// 248 t^2 with t*(14, 6, 2), which is returned as the escape point.
std::optional<TauVector> eigenvector_escape(const TauVector& w);

// Searches the tau orbit of w for a same-norm vector with every component
// nonzero mod 3: iterates tau_step while all components are divisible by 3,
// takes the eigenvector escape when proportional to (2, 12, -5), and on a
// mixed vector or after max_iters falls back to exhaustive enumeration at
// the same norm. Empty only when no qualifying vector exists at that norm.
std::optional<TauVector> tau_repair(const TauVector& w, int max_iters = 64);

}  // namespace octsum::repair
