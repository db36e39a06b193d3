#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "octsum/core.hpp"
#include "octsum/qform.hpp"

namespace octsum::verify {

// One pipeline per certified result. The L3.5 family is one id per alpha.
enum class TheoremId {
    kT2_1,
    kT2_2,
    kT2_3,
    kT2_4a,
    kT2_4b,
    kL3_2,
    kL3_3,
    kL3_4,
    kL3_5a7,
    kL3_5a9,
    kL3_5a10,
    kL3_5a11,
    kL3_5a13,
    kL3_5a14,
    kL3_6,
    kL3_7,
    kT3_1,
};

const std::vector<TheoremId>& all_theorems();
std::string to_string(TheoremId id);
std::optional<TheoremId> parse_theorem(const std::string& text);

struct SampleWitness {
    i64 n = 0;
    std::vector<i64> xs;
};

struct Certificate {
    TheoremId id = TheoremId::kT2_1;
    i64 bound = 0;
    bool pass = false;
    i64 fail_n = -1;         // smallest counterexample when !pass
    std::string fail_claim;  // violated claim identifier when !pass
    std::vector<SampleWitness> samples;
    std::vector<i64> exceptions;  // exceptional values found in [1, bound]
    std::string engine_version;
    std::string notes;
    // wall time; kept out of the serialized form so certificates stay
    // byte-identical across runs
    std::chrono::milliseconds elapsed{0};
};

nlohmann::ordered_json certificate_to_json(const Certificate& c);

// Shared bounded representability tables, one per canonical form or sum.
// Hits are counted so verification runs can re-derive a random sample of
// answers through the search path and compare.
class ResultCache {
public:
    std::shared_ptr<const qform::RepTable> form_table(const qform::DiagonalForm& f,
                                                      i64 min_bound);

    struct SumTable {
        i64 bound = 0;
        Bitset bits;
        bool represents(i64 n) const;
    };
    std::shared_ptr<const SumTable> sum_table(const OctSum& s, i64 min_bound);

    // on-disk persistence; files from a different engine version are ignored
    void load(const std::string& path);
    void save(const std::string& path) const;

    i64 hits() const { return hits_; }
    void count_hit() { ++hits_; }

private:
    mutable std::mutex mu_;
    std::map<std::string, std::shared_ptr<const qform::RepTable>> forms_;
    std::map<std::string, std::shared_ptr<const SumTable>> sums_;
    std::atomic<i64> hits_{0};
};

// Runs one pipeline at the given bound. A null cache uses a private one.
Certificate verify_theorem(TheoremId id, i64 bound, ResultCache* cache = nullptr);

// Runs every pipeline, distributing ids across threads (0 = hardware
// concurrency). Certificates come back in id order regardless of schedule.
std::vector<Certificate> verify_all(i64 bound, ResultCache* cache = nullptr,
                                    unsigned threads = 0);

}  // namespace octsum::verify
