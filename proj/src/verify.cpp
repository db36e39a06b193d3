#include "octsum/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include "octsum/escalation.hpp"
#include "octsum/repair.hpp"
#include "octsum/version.hpp"

namespace octsum::verify {

namespace {

struct IdInfo {
    TheoremId id;
    const char* name;
};

constexpr std::array<IdInfo, 17> kIdTable = {{
    {TheoremId::kT2_1, "T2.1"},
    {TheoremId::kT2_2, "T2.2"},
    {TheoremId::kT2_3, "T2.3"},
    {TheoremId::kT2_4a, "T2.4a"},
    {TheoremId::kT2_4b, "T2.4b"},
    {TheoremId::kL3_2, "L3.2"},
    {TheoremId::kL3_3, "L3.3"},
    {TheoremId::kL3_4, "L3.4"},
    {TheoremId::kL3_5a7, "L3.5a7"},
    {TheoremId::kL3_5a9, "L3.5a9"},
    {TheoremId::kL3_5a10, "L3.5a10"},
    {TheoremId::kL3_5a11, "L3.5a11"},
    {TheoremId::kL3_5a13, "L3.5a13"},
    {TheoremId::kL3_5a14, "L3.5a14"},
    {TheoremId::kL3_6, "L3.6"},
    {TheoremId::kL3_7, "L3.7"},
    {TheoremId::kT3_1, "T3.1"},
}};

std::string hex_word(u64 w) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
    return buf;
}

}  // namespace

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = [] {
        std::vector<TheoremId> v;
        for (const auto& e : kIdTable) v.push_back(e.id);
        return v;
    }();
    return ids;
}

std::string to_string(TheoremId id) {
    for (const auto& e : kIdTable)
        if (e.id == id) return e.name;
    throw std::invalid_argument("unknown theorem id");
}

std::optional<TheoremId> parse_theorem(const std::string& text) {
    for (const auto& e : kIdTable)
        if (text == e.name) return e.id;
    return std::nullopt;
}

bool ResultCache::SumTable::represents(i64 n) const {
    if (n < 0) return false;
    if (n > bound) throw std::out_of_range("query beyond sum table bound");
    return bits.test(static_cast<std::size_t>(n));
}

std::shared_ptr<const qform::RepTable> ResultCache::form_table(const qform::DiagonalForm& f,
                                                               i64 min_bound) {
    std::vector<i64> sorted = f.coeffs();
    std::sort(sorted.begin(), sorted.end());
    const qform::DiagonalForm canon(sorted);
    const std::string key = canon.key();
    std::lock_guard<std::mutex> lock(mu_);
    auto it = forms_.find(key);
    if (it != forms_.end() && it->second->bound() >= min_bound) return it->second;
    auto table = std::make_shared<const qform::RepTable>(canon, min_bound);
    forms_[key] = table;
    return table;
}

std::shared_ptr<const ResultCache::SumTable> ResultCache::sum_table(const OctSum& s,
                                                                    i64 min_bound) {
    const std::string key = s.key();
    std::lock_guard<std::mutex> lock(mu_);
    auto it = sums_.find(key);
    if (it != sums_.end() && it->second->bound >= min_bound) return it->second;
    auto table = std::make_shared<SumTable>();
    const_cast<SumTable&>(*table).bound = min_bound;
    const_cast<SumTable&>(*table).bits = representable_up_to(s, min_bound);
    sums_[key] = table;
    return table;
}

void ResultCache::save(const std::string& path) const {
    nlohmann::ordered_json j;
    j["engine_version"] = kEngineVersion;
    std::lock_guard<std::mutex> lock(mu_);
    nlohmann::ordered_json forms = nlohmann::ordered_json::object();
    for (const auto& [key, table] : forms_) {
        nlohmann::ordered_json entry;
        entry["bound"] = table->bound();
        // the table does not expose words; rebuild bits from queries is
        // wasteful, so persist sums only and rebuild forms on demand
        forms[key] = entry;
    }
    j["forms"] = std::move(forms);
    nlohmann::ordered_json sums = nlohmann::ordered_json::object();
    for (const auto& [key, table] : sums_) {
        nlohmann::ordered_json entry;
        entry["bound"] = table->bound;
        std::vector<std::string> words;
        words.reserve(table->bits.words().size());
        for (u64 w : table->bits.words()) words.push_back(hex_word(w));
        entry["words"] = words;
        sums[key] = entry;
    }
    j["sums"] = std::move(sums);
    std::ofstream out(path);
    out << j.dump() << "\n";
}

void ResultCache::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return;
    nlohmann::ordered_json j;
    try {
        in >> j;
        if (j.at("engine_version").get<std::string>() != kEngineVersion) return;
        std::lock_guard<std::mutex> lock(mu_);
        for (const auto& [key, entry] : j.at("sums").items()) {
            const i64 bound = entry.at("bound").get<i64>();
            std::vector<u64> words;
            for (const auto& hw : entry.at("words"))
                words.push_back(std::stoull(hw.get<std::string>(), nullptr, 16));
            auto table = std::make_shared<SumTable>();
            table->bound = bound;
            table->bits = Bitset(static_cast<std::size_t>(bound) + 1, std::move(words));
            sums_[key] = std::move(table);
        }
    } catch (const std::exception&) {
        // unreadable caches are simply ignored
    }
}

nlohmann::ordered_json certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["engine_version"] = c.engine_version;
    j["theorem"] = to_string(c.id);
    j["bound"] = c.bound;
    j["verdict"] = c.pass ? "pass" : "fail";
    if (c.pass) {
        j["failure"] = nullptr;
    } else {
        nlohmann::ordered_json f;
        f["n"] = c.fail_n;
        f["claim"] = c.fail_claim;
        j["failure"] = std::move(f);
    }
    j["exceptions"] = c.exceptions;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    for (const auto& s : c.samples) {
        nlohmann::ordered_json e;
        e["n"] = s.n;
        e["xs"] = s.xs;
        samples.push_back(std::move(e));
    }
    j["samples"] = std::move(samples);
    j["notes"] = c.notes;
    return j;
}

namespace {

using qform::DiagonalForm;
using qform::RepProblem;
using qform::ResidueConstraint;

bool is_square_times(i64 v, i64 scale) {
    if (v < 0 || v % scale != 0) return false;
    return is_square(v / scale);
}

// Decision-order solve: search with large coefficients outermost, then map
// the witness back to the original variable order.
std::optional<std::vector<i64>> solve_fast(const RepProblem& p) {
    const std::size_t k = p.form.arity();
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return p.form.coeffs()[a] > p.form.coeffs()[b];
    });
    std::vector<i64> coeffs(k);
    std::vector<std::vector<i64>> allowed(k);
    for (std::size_t i = 0; i < k; ++i) {
        coeffs[i] = p.form.coeffs()[perm[i]];
        allowed[i] = p.constraint.allowed()[perm[i]];
    }
    RepProblem q(DiagonalForm(coeffs), p.target,
                 ResidueConstraint(p.constraint.modulus(), allowed));
    auto sol = qform::solve(q);
    if (!sol) return std::nullopt;
    std::vector<i64> ys(k);
    for (std::size_t i = 0; i < k; ++i) ys[perm[i]] = sol->ys[i];
    return ys;
}

std::vector<i64> solve_fast_or_die(const DiagonalForm& f, i64 target) {
    RepProblem p(f, target, ResidueConstraint::unconstrained(f.arity()));
    auto ys = solve_fast(p);
    if (!ys) throw std::logic_error("table reported representable but search failed");
    return *ys;
}

// Search analogous to the x^2+2y^2 repair but for x^2+8y^2: same norm, both
// outputs nonzero mod 3.
std::optional<std::pair<i64, i64>> oh_repair(i64 b, i64 e) {
    if (b == 0 && e == 0) return std::nullopt;
    const i64 norm = checked_add(checked_mul(b, b), checked_mul(8, checked_mul(e, e)));
    for (i64 bp = 1; bp * bp <= norm; ++bp) {
        if (bp % 3 == 0) continue;
        const i64 rem = norm - bp * bp;
        if (rem % 8 != 0) continue;
        i64 ep = 0;
        if (!is_square(rem / 8, &ep)) continue;
        if (ep == 0 || ep % 3 == 0) continue;
        return std::make_pair(bp, ep);
    }
    return std::nullopt;
}

struct Runner {
    TheoremId id;
    i64 bound;
    ResultCache& cache;
    Certificate cert;
    std::set<i64> sample_grid;
    std::vector<std::pair<DiagonalForm, i64>> used_forms;
    std::vector<std::pair<OctSum, i64>> used_sums;

    Runner(TheoremId id, i64 bound, ResultCache& cache) : id(id), bound(bound), cache(cache) {
        cert.id = id;
        cert.bound = bound;
        cert.engine_version = kEngineVersion;
        cert.pass = true;
        for (int i = 0; i < 10; ++i) sample_grid.insert(bound * i / 10);
    }

    std::shared_ptr<const qform::RepTable> form(const DiagonalForm& f, i64 b) {
        for (const auto& [g, gb] : used_forms)
            if (g.key() == f.key()) return cache.form_table(f, b);
        used_forms.emplace_back(f, b);
        return cache.form_table(f, b);
    }

    std::shared_ptr<const ResultCache::SumTable> sum(const OctSum& s, i64 b) {
        used_sums.emplace_back(s, b);
        return cache.sum_table(s, b);
    }

    void fail(i64 n, const std::string& claim) {
        if (cert.pass) {
            cert.pass = false;
            cert.fail_n = n;
            cert.fail_claim = claim;
        }
    }

    void try_sample(i64 n, const std::vector<i64>& xs) {
        if (cert.samples.size() < 10 && sample_grid.count(n)) cert.samples.push_back({n, xs});
    }

    // Recompute a random sample of table answers through the search path;
    // a table that disagrees with fresh computation is a hard error.
    void audit() {
        std::mt19937_64 rng(0x9E3779B97F4A7C15ull ^ (static_cast<u64>(id) << 32) ^
                            static_cast<u64>(bound));
        const i64 samples = std::clamp<i64>(bound / 100, 1, 100);
        for (const auto& [f, qb] : used_forms) {
            auto table = cache.form_table(f, qb);
            for (i64 j = 0; j < samples; ++j) {
                const i64 n = static_cast<i64>(rng() % static_cast<u64>(qb + 1));
                if (table->represents(n) != qform::represents_unconstrained(f, n))
                    throw std::logic_error("cache audit mismatch for form <" + f.key() + ">");
            }
        }
        for (const auto& [s, qb] : used_sums) {
            auto table = cache.sum_table(s, qb);
            for (i64 j = 0; j < samples; ++j) {
                const i64 n = static_cast<i64>(rng() % static_cast<u64>(qb + 1));
                if (table->represents(n) != represents(s, n).has_value())
                    throw std::logic_error("cache audit mismatch for sum (" + s.key() + ")");
            }
        }
    }
};

// claim must be filled on failure
using ClaimFn = std::function<std::optional<OctWitness>(i64 n, std::string& claim)>;

void run_sum_pipeline(Runner& r, const OctSum& sum, i64 threshold,
                      const std::vector<i64>& expected_exceptions, const ClaimFn& claims) {
    auto table = r.sum(sum, r.bound);

    std::vector<i64> expect;
    for (i64 e : expected_exceptions)
        if (e <= r.bound) expect.push_back(e);

    std::vector<i64> found;
    for (i64 n = 1; n <= r.bound; ++n)
        if (!table->represents(n)) found.push_back(n);
    r.cert.exceptions = found;
    if (found != expect) {
        i64 bad = 0;
        for (std::size_t i = 0; i < std::max(found.size(), expect.size()); ++i) {
            if (i >= found.size()) { bad = expect[i]; break; }
            if (i >= expect.size()) { bad = found[i]; break; }
            if (found[i] != expect[i]) { bad = std::min(found[i], expect[i]); break; }
        }
        r.fail(bad, "exceptional-set");
        return;
    }
    const std::set<i64> exc(expect.begin(), expect.end());

    for (i64 n = 0; n <= r.bound; ++n) {
        if (exc.count(n)) continue;
        if (n <= threshold) {
            // the proofs delegate this range to finite checking
            if (!table->represents(n)) {
                r.fail(n, "direct-check");
                return;
            }
            if (r.sample_grid.count(n)) {
                auto w = represents(sum, n);
                if (!w) {
                    r.fail(n, "direct-check");
                    return;
                }
                r.try_sample(n, w->xs);
            }
        } else {
            std::string claim = "claim";
            auto w = claims(n, claim);
            if (!w) {
                r.fail(n, claim);
                return;
            }
            r.try_sample(n, w->xs);
        }
    }
}

// ---- T2.1: sum (1,1,3,3), x^2+y^2+3z^2+3t^2 = 3n+8 with zt nonzero mod 3.
void run_t21(Runner& r) {
    const OctSum sum({1, 1, 3, 3});
    const DiagonalForm m116({1, 1, 6});
    const ResidueConstraint cons(3, {{1, 2}, {1, 2}, {0, 1, 2}});
    auto claims = [&](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 rmod = n % 3;
        const i64 sub = rmod == 0 ? n + 2 : (rmod == 2 ? n : n - 14);
        auto ys = solve_fast(RepProblem(m116, sub, cons));
        if (!ys) {
            claim = "constrained-116-solve";
            return std::nullopt;
        }
        const i64 z = (*ys)[0], t = (*ys)[1], w = (*ys)[2];
        std::vector<i64> full;
        if (rmod == 0) full = {3 * w + 1, 3 * w - 1, z, t};
        else if (rmod == 2) full = {3 * w + 2, 3 * w - 2, z, t};
        else full = {3 * w - 5, 3 * w + 5, z, t};
        return oct_witness_from_form(sum, n, full);
    };
    run_sum_pipeline(r, sum, 13, {}, claims);
}

// ---- T2.2: sum (1,1,3,6), via x^2+y^2+9z^2+18t^2 = 3n+11 and a jones repair.
void run_t22(Runner& r) {
    const OctSum sum({1, 1, 3, 6});
    const DiagonalForm m119({1, 1, 9});
    auto table = r.form(m119, 3 * r.bound + 11);
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 11;
        i64 d;
        if (T % 2 == 1) d = (T % 8 == 7) ? 1 : 2;
        else d = (T % 4 == 2) ? 2 : 1;
        const i64 alpha = T - 18 * d * d;
        if (alpha < 0 || !table->represents(alpha)) {
            claim = "119-membership";
            return std::nullopt;
        }
        const auto ys = solve_fast_or_die(m119, alpha);
        const i64 a = ys[0], b = ys[1], c = ys[2];
        if (a % 3 == 0 || b % 3 == 0) {
            claim = "unit-part-mod3";
            return std::nullopt;
        }
        auto ef = repair::jones_repair(c - 2 * d, c + d);
        if (!ef) {
            claim = "jones-repair";
            return std::nullopt;
        }
        return oct_witness_from_form(sum, n, {a, b, ef->u, ef->v});
    };
    run_sum_pipeline(r, sum, 20, {}, claims);
}

// ---- T2.3: sum (1,2,3,6), via x^2+2y^2+9z^2+18t^2 = 3n+12 and two repairs.
void run_t23(Runner& r) {
    const OctSum sum({1, 2, 3, 6});
    const DiagonalForm m129({1, 2, 9});
    const DiagonalForm m1218({1, 2, 18});
    auto t129 = r.form(m129, 3 * r.bound + 12);
    auto t1218 = r.form(m1218, 3 * r.bound + 12);

    // (a, b, c, d) with a^2+2b^2+9c^2+18d^2 = T, a^2+2b^2 != 0, (c,d) != (0,0)
    std::function<std::optional<std::array<i64, 4>>(i64, std::string&)> solve_a =
        [&](i64 T, std::string& claim) -> std::optional<std::array<i64, 4>> {
        if (T < 147) {
            for (i64 t = 0; 18 * t * t <= T; ++t) {
                for (i64 z = 0; 9 * z * z + 18 * t * t <= T; ++z) {
                    if (z == 0 && t == 0) continue;
                    const i64 rem = T - 9 * z * z - 18 * t * t;
                    for (i64 y = 0; 2 * y * y <= rem; ++y) {
                        i64 x = 0;
                        if (!is_square(rem - 2 * y * y, &x)) continue;
                        if (x == 0 && y == 0) continue;
                        return std::array<i64, 4>{x, y, z, t};
                    }
                }
            }
            claim = "base-case";
            return std::nullopt;
        }
        if (T % 2 == 1) {
            if (!t129->represents(T - 18) || !t129->represents(T - 72)) {
                claim = "129-membership";
                return std::nullopt;
            }
            for (i64 d : {1, 2}) {
                const i64 alpha = T - 18 * d * d;
                if (is_square_times(alpha, 9)) continue;  // alpha = 9 N^2
                const auto ys = solve_fast_or_die(m129, alpha);
                return std::array<i64, 4>{ys[0], ys[1], ys[2], d};
            }
            claim = "square-escape";
            return std::nullopt;
        }
        if (T % 4 == 2) {
            if (!t1218->represents(T - 36) || !t1218->represents(T - 144)) {
                claim = "1218-membership";
                return std::nullopt;
            }
            for (i64 z : {2, 4}) {
                const i64 alpha = T - 9 * z * z;
                if (is_square_times(alpha, 18)) continue;  // alpha = 18 M^2
                const auto ys = solve_fast_or_die(m1218, alpha);
                return std::array<i64, 4>{ys[0], ys[1], z, ys[2]};
            }
            claim = "square-escape";
            return std::nullopt;
        }
        auto sub = solve_a(T / 4, claim);
        if (!sub) return std::nullopt;
        return std::array<i64, 4>{2 * (*sub)[0], 2 * (*sub)[1], 2 * (*sub)[2], 2 * (*sub)[3]};
    };

    auto claims = [&](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 12;
        auto quad = solve_a(T, claim);
        if (!quad) return std::nullopt;
        const auto [a, b, c, d] = *quad;
        auto part1 = repair::jones_repair(a, b);
        auto part2 = repair::jones_repair(c - 2 * d, c + d);
        if (!part1 || !part2) {
            claim = "jones-repair";
            return std::nullopt;
        }
        return oct_witness_from_form(sum, n, {part1->u, part1->v, part2->u, part2->v});
    };
    run_sum_pipeline(r, sum, 44, {}, claims);
}

// ---- T2.4-style template shared by T2.4a, T2.4b and L3.4: pin the last
// coefficient, represent the rest by <3,3,6>, then jones / parity repairs.
void run_phi24_style(Runner& r, const OctSum& sum, i64 pinned_coeff,
                     const std::vector<i64>& odd_cands, const std::vector<i64>& even_cands,
                     i64 threshold, const std::vector<i64>& expected_exceptions) {
    const DiagonalForm m336({3, 3, 6});
    auto table = r.form(m336, 3 * r.bound + sum.coeff_sum());
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + sum.coeff_sum();
        const auto& cands = (T % 2 == 1) ? odd_cands : even_cands;
        i64 chosen = 0, alpha = -1;
        for (i64 d : cands) {
            const i64 a = T - pinned_coeff * d * d;
            if (a > 0 && table->represents(a)) {
                chosen = d;
                alpha = a;
                break;
            }
        }
        if (alpha < 0) {
            claim = "336-candidate";
            return std::nullopt;
        }
        if (alpha % 2 != 0) {
            claim = "candidate-parity";
            return std::nullopt;
        }
        auto ys = solve_fast_or_die(m336, alpha);
        i64 a = ys[0], b = ys[1], c = ys[2];
        if (a == 0 && c == 0) std::swap(a, b);
        auto ef = repair::jones_repair(a + 2 * c, a - c);
        if (!ef) {
            claim = "jones-repair";
            return std::nullopt;
        }
        i64 x = ef->u, z;
        const i64 y = ef->v;
        if (b % 3 != 0) {
            z = b;
        } else {
            if ((ef->u - b) % 2 != 0) {
                claim = "parity-structure";
                return std::nullopt;
            }
            const auto pq = repair::parity_repair(ef->u, b);
            x = pq.u;
            z = pq.v;
        }
        return oct_witness_from_form(sum, n, {x, y, z, chosen});
    };
    run_sum_pipeline(r, sum, threshold, expected_exceptions, claims);
}

// ---- L3.2: sum (1,1,2,14), exceptional value 60.
void run_l32(Runner& r) {
    const OctSum sum({1, 1, 2, 14});
    const DiagonalForm m112({1, 1, 2});
    auto table = r.form(m112, 3 * r.bound + 18);
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 18;
        auto represented = [&](i64 d) {
            const i64 a = T - 14 * d * d;
            return a >= 0 && table->represents(a);
        };
        if (!represented(1) && !represented(2) && !represented(4)) {
            claim = "112-alpha-candidate";
            return std::nullopt;
        }
        if (!represented(5) && !represented(7) && !represented(8)) {
            claim = "112-beta-candidate";
            return std::nullopt;
        }
        static constexpr std::array<i64, 6> kAll = {1, 2, 4, 5, 7, 8};
        i64 chosen = 0, alpha = -1;
        for (i64 d : kAll) {
            const i64 a = T - 14 * d * d;
            if (a >= 0 && table->represents(a) && !is_square(a)) {
                chosen = d;
                alpha = a;
                break;
            }
        }
        if (alpha >= 0) {
            auto ys = solve_fast_or_die(m112, alpha);
            i64 a = ys[0], b = ys[1], c = ys[2];
            if (a % 3 != 0 && b % 3 != 0 && c % 3 != 0)
                return oct_witness_from_form(sum, n, {a, b, c, chosen});
            if (a % 3 == 0) std::swap(a, b);
            if (a % 3 == 0 || b % 3 != 0 || c % 3 != 0) {
                claim = "mod3-structure";
                return std::nullopt;
            }
            auto ef = repair::jones_repair(b, c);
            if (!ef) {
                claim = "jones-repair";
                return std::nullopt;
            }
            return oct_witness_from_form(sum, n, {a, ef->u, ef->v, chosen});
        }
        // every represented candidate is a perfect square: solve one of them
        // under the full mod-3 constraint directly
        for (i64 d : kAll) {
            const i64 a = T - 14 * d * d;
            if (a < 0 || !table->represents(a)) continue;
            auto ys = solve_fast(RepProblem(m112, a, ResidueConstraint::nonzero_mod3(3)));
            if (ys) return oct_witness_from_form(sum, n, {(*ys)[0], (*ys)[1], (*ys)[2], d});
        }
        claim = "square-case-solve";
        return std::nullopt;
    };
    run_sum_pipeline(r, sum, 292, {60}, claims);
}

// ---- L3.3: sum (1,1,3,4), exceptional value 18, tau-orbit repair.
void run_l33(Runner& r) {
    const OctSum sum({1, 1, 3, 4});
    const DiagonalForm m114({1, 1, 4});
    auto table = r.form(m114, 3 * r.bound + 9);
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 9;
        i64 chosen = 0, gamma = -1;
        for (i64 c : {2, 5, 7}) {
            const i64 g = T - 3 * c * c;
            if (g > 0 && table->represents(g)) {
                chosen = c;
                gamma = g;
                break;
            }
        }
        if (gamma < 0) {
            claim = "114-candidate";
            return std::nullopt;
        }
        const auto ys = solve_fast_or_die(m114, gamma);
        repair::TauVector v{ys[0], ys[1], ys[2]};
        if (!v.all_nonzero_mod3()) {
            if (!v.all_zero_mod3()) {
                claim = "mixed-divisibility";
                return std::nullopt;
            }
            auto fixed = repair::tau_repair(v);
            if (!fixed) {
                claim = "tau-repair";
                return std::nullopt;
            }
            v = *fixed;
        }
        return oct_witness_from_form(sum, n, {v.a, v.b, chosen, v.d});
    };
    run_sum_pipeline(r, sum, 46, {18}, claims);
}

// ---- L3.5 family: sums (1,1,3,7,alpha), pin both large slots in {1,2}.
void run_l35(Runner& r, i64 alpha, i64 threshold, const char* notes) {
    const OctSum sum({1, 1, 3, 7, alpha});
    const DiagonalForm m113({1, 1, 3});
    auto table = r.form(m113, 3 * r.bound + 12 + alpha);
    r.cert.notes = notes;
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 12 + alpha;
        static constexpr std::array<std::pair<i64, i64>, 4> kPairs = {
            {{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
        i64 d = 0, e2 = 0, rem = -1;
        for (const auto& [dd, ee] : kPairs) {
            const i64 q = T - 7 * dd * dd - alpha * ee * ee;
            if (q >= 0 && (q % 4 == 0 || q % 4 == 1)) {
                d = dd;
                e2 = ee;
                rem = q;
                break;
            }
        }
        if (rem < 0) {
            claim = "candidate-parity";
            return std::nullopt;
        }
        if (!table->represents(rem)) {
            claim = "113-membership";
            return std::nullopt;
        }
        auto ys = solve_fast_or_die(m113, rem);
        i64 a = ys[0], b = ys[1];
        const i64 c = ys[2];
        if (a % 3 == 0 || b % 3 == 0) {
            claim = "unit-part-mod3";
            return std::nullopt;
        }
        if (c % 3 != 0) return oct_witness_from_form(sum, n, {a, b, c, d, e2});
        if ((b - c) % 2 != 0) std::swap(a, b);
        if ((b - c) % 2 != 0) {
            claim = "parity-wlog";
            return std::nullopt;
        }
        const auto pq = repair::parity_repair(b, c);
        return oct_witness_from_form(sum, n, {a, pq.u, pq.v, d, e2});
    };
    run_sum_pipeline(r, sum, threshold, {}, claims);
}

// ---- L3.6: sum (1,1,3,7,8), six-case candidate table and the x^2+8y^2 repair.
void run_l36(Runner& r) {
    const OctSum sum({1, 1, 3, 7, 8});
    const DiagonalForm m118({1, 1, 8});
    auto table = r.form(m118, 3 * r.bound + 20);
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 20;
        std::array<std::pair<i64, i64>, 2> pairs;
        if (T % 4 == 0) pairs = {{{1, 2}, {2, 1}}};
        else if (T % 4 == 1) pairs = {{{2, 2}, {4, 2}}};
        else if (T % 4 == 3) pairs = {{{1, 1}, {5, 1}}};
        else if (T % 8 == 2) pairs = {{{4, 4}, {8, 4}}};
        else if (T % 16 == 6) pairs = {{{1, 5}, {5, 1}}};
        else pairs = {{{1, 1}, {5, 5}}};

        for (const auto& [c, d] : pairs) {
            const i64 rem = T - 3 * c * c - 7 * d * d;
            if (rem < 0 || !table->represents(rem)) {
                claim = "118-membership";
                return std::nullopt;
            }
        }
        i64 c = 0, d = 0, rem = -1;
        for (const auto& [cc, dd] : pairs) {
            const i64 q = T - 3 * cc * cc - 7 * dd * dd;
            if (!is_square(q)) {
                c = cc;
                d = dd;
                rem = q;
                break;
            }
        }
        if (rem < 0) {
            claim = "square-escape";
            return std::nullopt;
        }
        auto ys = solve_fast_or_die(m118, rem);
        i64 a = ys[0], b = ys[1];
        const i64 e = ys[2];
        if (a % 3 != 0 && b % 3 != 0 && e % 3 != 0)
            return oct_witness_from_form(sum, n, {a, b, c, d, e});
        if (a % 3 == 0) std::swap(a, b);
        if (a % 3 == 0 || b % 3 != 0 || e % 3 != 0) {
            claim = "mod3-structure";
            return std::nullopt;
        }
        auto fixed = oh_repair(b, e);
        if (!fixed) {
            claim = "oh-repair";
            return std::nullopt;
        }
        return oct_witness_from_form(sum, n, {a, fixed->first, c, d, fixed->second});
    };
    run_sum_pipeline(r, sum, 117, {}, claims);
}

// ---- L3.7: sum (1,1,3,7,12) through <3,12,18> = 3 * <1,4,6>.
void run_l37(Runner& r) {
    const OctSum sum({1, 1, 3, 7, 12});
    const DiagonalForm m146({1, 4, 6});
    auto table = r.form(m146, r.bound + 8);
    auto claims = [&, table](i64 n, std::string& claim) -> std::optional<OctWitness> {
        const i64 T = 3 * n + 24;
        const i64 rmod = n % 3;
        const std::array<i64, 2> tc = rmod == 0 ? std::array<i64, 2>{1, 8}
                                    : rmod == 1 ? std::array<i64, 2>{2, 7}
                                                : std::array<i64, 2>{4, 5};
        i64 t = 0, rem3 = -1;
        for (i64 cand : tc) {
            const i64 rem = T - 2 - 7 * cand * cand;
            if (rem <= 0 || rem % 3 != 0) continue;
            const i64 q = rem / 3;
            if (q % 2 == 1 && q % 3 != 0 && table->represents(q)) {
                t = cand;
                rem3 = q;
                break;
            }
        }
        if (rem3 < 0) {
            claim = "146-candidate";
            return std::nullopt;
        }
        const auto ys = solve_fast_or_die(m146, rem3);
        const i64 u = ys[0], v = ys[1], w = ys[2];
        if (u % 3 == 0 || v % 3 == 0) {
            claim = "unit-part-mod3";
            return std::nullopt;
        }
        return oct_witness_from_form(sum, n, {3 * w - 1, 3 * w + 1, u, t, v});
    };
    run_sum_pipeline(r, sum, 142, {}, claims);
}

// ---- T3.1: escalation tree, truant table, the 40 quadruples, criterion set.
void run_t31(Runner& r) {
    using escalation::EscalationNode;
    const i64 tree_bound = std::max<i64>(r.bound, 60);
    const auto tree = escalation::escalate(5, tree_bound);

    struct Expected {
        std::vector<i64> coeffs;
        i64 truant;
    };
    const std::vector<Expected> shallow = {
        {{}, 1},          {{1}, 2},        {{1, 1}, 3},     {{1, 2}, 4},
        {{1, 1, 1}, 4},   {{1, 1, 2}, 14}, {{1, 1, 3}, 7},  {{1, 2, 2}, 6},
        {{1, 2, 3}, 9},   {{1, 2, 4}, 13},
    };

    std::vector<const EscalationNode*> depth4;
    std::vector<std::pair<const EscalationNode*, int>> stack{{&tree.root, 0}};
    std::vector<std::pair<std::vector<i64>, i64>> shallow_found;
    while (!stack.empty()) {
        auto [node, depth] = stack.back();
        stack.pop_back();
        if (depth <= 3) {
            if (!node->truant_value) {
                r.fail(0, "truant-table");
                return;
            }
            shallow_found.push_back({node->sum.coeffs(), *node->truant_value});
        }
        if (depth == 4) depth4.push_back(node);
        if (depth < 4)
            for (const auto& ch : node->children) stack.push_back({&ch, depth + 1});
    }
    for (const auto& e : shallow) {
        bool ok = false;
        for (const auto& [c, t] : shallow_found)
            if (c == e.coeffs && t == e.truant) ok = true;
        if (!ok) {
            r.fail(e.truant, "truant-table");
            return;
        }
    }
    if (shallow_found.size() != shallow.size()) {
        r.fail(0, "truant-table");
        return;
    }

    // depth 4: exactly the 40 universal quadruples plus the four exceptional ones
    const std::map<std::string, i64> exceptional = {
        {"1,1,2,14", 60}, {"1,1,3,4", 18}, {"1,1,3,7", 14}, {"1,2,3,3", 12}};
    i64 universal_count = 0;
    for (const auto* node : depth4) {
        const std::string key = node->sum.key();
        auto it = exceptional.find(key);
        if (it != exceptional.end()) {
            if (!node->truant_value || *node->truant_value != it->second) {
                r.fail(it->second, "exceptional-quadruples");
                return;
            }
            // quinary closure: children span [last coeff, truant], all universal
            const i64 lo = node->sum.coeffs().back();
            const i64 hi = *node->truant_value;
            if (static_cast<i64>(node->children.size()) != hi - lo + 1) {
                r.fail(hi, "quinary-closure");
                return;
            }
            for (const auto& ch : node->children) {
                if (!ch.bounded_universal()) {
                    r.fail(*ch.truant_value, "quinary-closure");
                    return;
                }
            }
        } else {
            if (!node->bounded_universal()) {
                r.fail(*node->truant_value, "forty-quadruples");
                return;
            }
            ++universal_count;
        }
    }
    if (universal_count != 40 || depth4.size() != 44) {
        r.fail(depth4.size(), "forty-quadruples");
        return;
    }

    const auto crit = escalation::criterion_set(tree);
    if (crit != escalation::universality_criterion()) {
        r.fail(crit.empty() ? 0 : crit.back(), "criterion-set");
        return;
    }

    // classification cross-check over every depth-4 node
    for (const auto* node : depth4) {
        const auto verdict = escalation::classify(node->sum, std::min<i64>(r.bound, 10000));
        const auto it = exceptional.find(node->sum.key());
        if (it != exceptional.end()) {
            if (verdict.verdict != escalation::ClassificationReport::Verdict::kNotUniversal ||
                verdict.witness != it->second) {
                r.fail(it->second, "classify-consistency");
                return;
            }
        } else if (!verdict.universal()) {
            r.fail(verdict.witness.value_or(0), "classify-consistency");
            return;
        }
    }

    // sample witnesses: the criterion integers represented by (1,1,1,1)
    const OctSum four_ones({1, 1, 1, 1});
    for (i64 n : escalation::universality_criterion()) {
        if (r.cert.samples.size() >= 10) break;
        auto w = represents(four_ones, n);
        if (!w) {
            r.fail(n, "classify-consistency");
            return;
        }
        r.cert.samples.push_back({n, w->xs});
    }
}

void run_pipeline(Runner& r) {
    switch (r.id) {
        case TheoremId::kT2_1: run_t21(r); break;
        case TheoremId::kT2_2: run_t22(r); break;
        case TheoremId::kT2_3: run_t23(r); break;
        case TheoremId::kT2_4a:
            run_phi24_style(r, OctSum({1, 2, 3, 7}), 7, {1, 5, 7}, {2, 4}, 110, {});
            break;
        case TheoremId::kT2_4b:
            r.cert.notes = "pipeline reconstructed from the T2.4a template";
            run_phi24_style(r, OctSum({1, 2, 3, 9}), 9, {1, 5, 7}, {2, 4}, 110, {});
            break;
        case TheoremId::kL3_2: run_l32(r); break;
        case TheoremId::kL3_3: run_l33(r); break;
        case TheoremId::kL3_4:
            r.cert.notes = "pipeline reconstructed from the T2.4a template";
            run_phi24_style(r, OctSum({1, 2, 3, 3}), 3, {1, 5, 7}, {2, 4}, 110, {12});
            break;
        case TheoremId::kL3_5a7: run_l35(r, 7, 12, ""); break;
        case TheoremId::kL3_5a9:
            run_l35(r, 9, 20, "pipeline reconstructed from the alpha=7 template");
            break;
        case TheoremId::kL3_5a10:
            run_l35(r, 10, 20, "pipeline reconstructed from the alpha=7 template");
            break;
        case TheoremId::kL3_5a11:
            run_l35(r, 11, 20, "pipeline reconstructed from the alpha=7 template");
            break;
        case TheoremId::kL3_5a13:
            run_l35(r, 13, 20, "pipeline reconstructed from the alpha=7 template");
            break;
        case TheoremId::kL3_5a14:
            run_l35(r, 14, 20, "pipeline reconstructed from the alpha=7 template");
            break;
        case TheoremId::kL3_6: run_l36(r); break;
        case TheoremId::kL3_7: run_l37(r); break;
        case TheoremId::kT3_1: run_t31(r); break;
    }
}

}  // namespace

Certificate verify_theorem(TheoremId id, i64 bound, ResultCache* cache) {
    if (bound < 1) throw std::invalid_argument("bound must be >= 1");
    ResultCache local;
    if (!cache) cache = &local;
    const auto start = std::chrono::steady_clock::now();
    Runner r(id, bound, *cache);
    run_pipeline(r);
    if (r.cert.pass) r.audit();
    r.cert.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    return r.cert;
}

std::vector<Certificate> verify_all(i64 bound, ResultCache* cache, unsigned threads) {
    ResultCache local;
    if (!cache) cache = &local;
    const auto& ids = all_theorems();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());

    std::vector<Certificate> out(ids.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < ids.size(); ++i) out[i] = verify_theorem(ids[i], bound, cache);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> workers;
    const unsigned count = std::min<unsigned>(threads, ids.size());
    for (unsigned w = 0; w < count; ++w) {
        workers.push_back(std::async(std::launch::async, [&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= ids.size()) return;
                out[i] = verify_theorem(ids[i], bound, cache);
            }
        }));
    }
    for (auto& f : workers) f.get();
    return out;
}

}  // namespace octsum::verify
