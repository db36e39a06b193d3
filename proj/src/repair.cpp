#include "octsum/repair.hpp"

#include <stdexcept>

#include "octsum/qform.hpp"

namespace octsum::repair {

std::optional<BinaryRep> jones_repair(i64 u, i64 v) {
    if (u == 0 && v == 0) throw std::invalid_argument("jones_repair needs (u, v) != (0, 0)");
    const i64 norm = checked_add(checked_mul(u, u), checked_mul(2, checked_mul(v, v)));
    for (i64 e = 1; e * e <= norm; ++e) {
        if (e % 3 == 0) continue;
        const i64 rem = norm - e * e;
        if (rem % 2 != 0) continue;
        i64 f = 0;
        if (!is_square(rem / 2, &f)) continue;
        if (f == 0 || f % 3 == 0) continue;
        return BinaryRep{BinaryRep::Form::x2_plus_2y2, e, f};
    }
    return std::nullopt;
}

BinaryRep parity_repair(i64 e, i64 b) {
    if (((e - b) % 2 + 2) % 2 != 0) throw std::invalid_argument("parity mismatch: e != b (mod 2)");
    const i64 p = (e + 3 * b) / 2;
    const i64 q = (e - b) / 2;
    BinaryRep out{BinaryRep::Form::x2_plus_3y2, p, q};
    const i64 in_norm = checked_add(checked_mul(e, e), checked_mul(3, checked_mul(b, b)));
    if (out.norm() != in_norm) throw std::logic_error("parity repair identity failed");
    return out;
}

TauVector::TauVector(i64 a, i64 b, i64 d, i64 claimed_norm) : TauVector(a, b, d) {
    if (norm() != claimed_norm) throw std::invalid_argument("tau vector norm mismatch");
}

TauVector tau_step(const TauVector& w) {
    const i64 c0 = w.a + 2 * w.b + 4 * w.d;
    const i64 c1 = -2 * w.a - w.b + 4 * w.d;
    const i64 c2 = -w.a + w.b - w.d;
    if (c0 % 3 != 0 || c1 % 3 != 0 || c2 % 3 != 0)
        throw std::domain_error("tau image not integral");
    TauVector out{c0 / 3, c1 / 3, c2 / 3};
    if (out.norm() != w.norm()) throw std::logic_error("tau step changed the norm");
    return out;
}

std::optional<TauVector> eigenvector_escape(const TauVector& w) {
    if (w.a % 2 != 0) return std::nullopt;
    const i64 t = w.a / 2;
    if (t == 0 || w.b != 12 * t || w.d != -5 * t) return std::nullopt;
    TauVector out{14 * t, 6 * t, 2 * t};
    if (out.norm() != w.norm()) throw std::logic_error("escape changed the norm");
    return out;
}

std::optional<TauVector> tau_repair(const TauVector& w, int max_iters) {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    const i64 norm = w.norm();
    if (norm <= 0) throw std::domain_error("tau_repair needs a positive norm");

    TauVector cur = w;
    for (int iter = 0; iter < max_iters; ++iter) {
        if (cur.all_nonzero_mod3()) return cur;
        if (auto esc = eigenvector_escape(cur)) {
            cur = *esc;
            continue;
        }
        if (!cur.all_zero_mod3()) break;  // mixed divisibility: orbit is done
        cur = tau_step(cur);
    }
    if (cur.all_nonzero_mod3()) return cur;

    // exhaustive fall-back over the same norm
    qform::DiagonalForm form({1, 1, 4});
    qform::RepProblem prob(form, norm, qform::ResidueConstraint::unconstrained(3));
    auto stream = qform::solve_all(prob);
    while (auto sol = stream.next()) {
        TauVector cand{sol->ys[0], sol->ys[1], sol->ys[2]};
        if (cand.all_nonzero_mod3()) return cand;
    }
    return std::nullopt;
}

}  // namespace octsum::repair
