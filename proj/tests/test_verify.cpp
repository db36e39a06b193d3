#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "octsum/cli.hpp"
#include "octsum/verify.hpp"
#include "octsum/version.hpp"

using namespace octsum;
using namespace octsum::verify;

TEST_CASE("theorem id round trip") {
    CHECK(all_theorems().size() == 17);
    for (TheoremId id : all_theorems()) {
        const auto parsed = parse_theorem(to_string(id));
        REQUIRE(parsed);
        CHECK(*parsed == id);
    }
    CHECK(!parse_theorem("T9.9"));
    CHECK(to_string(TheoremId::kL3_5a7) == "L3.5a7");
}

TEST_CASE("single pipelines pass at small bounds") {
    const auto l32 = verify_theorem(TheoremId::kL3_2, 500);
    CHECK(l32.pass);
    CHECK(l32.exceptions == std::vector<i64>{60});
    CHECK(!l32.samples.empty());
    CHECK(l32.engine_version == kEngineVersion);

    const auto l34 = verify_theorem(TheoremId::kL3_4, 400);
    CHECK(l34.pass);
    CHECK(l34.exceptions == std::vector<i64>{12});
    CHECK(l34.notes.find("reconstructed") != std::string::npos);

    const auto t31 = verify_theorem(TheoremId::kT3_1, 100);
    CHECK(t31.pass);

    const auto l35 = verify_theorem(TheoremId::kL3_5a7, 300);
    CHECK(l35.pass);
}

TEST_CASE("witness samples hit their targets") {
    const auto cert = verify_theorem(TheoremId::kT2_1, 800);
    REQUIRE(cert.pass);
    REQUIRE(!cert.samples.empty());
    for (const auto& s : cert.samples) {
        i64 total = 0;
        const std::vector<i64> coeffs{1, 1, 3, 3};
        REQUIRE(s.xs.size() == coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i) total += coeffs[i] * p8(s.xs[i]);
        CHECK(total == s.n);
    }
}

TEST_CASE("certificates are byte deterministic") {
    ResultCache cache;
    const auto a = verify_theorem(TheoremId::kL3_3, 600, &cache);
    const auto b = verify_theorem(TheoremId::kL3_3, 600, &cache);
    CHECK(certificate_to_json(a).dump(2) == certificate_to_json(b).dump(2));

    // fresh cache, same bytes
    const auto c = verify_theorem(TheoremId::kL3_3, 600);
    CHECK(certificate_to_json(a).dump(2) == certificate_to_json(c).dump(2));
}

TEST_CASE("verify_all returns certificates in id order") {
    const auto certs = verify_all(200, nullptr, 2);
    REQUIRE(certs.size() == 17);
    for (std::size_t i = 0; i < certs.size(); ++i) {
        CHECK(certs[i].id == all_theorems()[i]);
        CHECK(certs[i].pass);
    }
}

TEST_CASE("result cache persistence round trip") {
    const std::string path = "cache_roundtrip_test.json";
    {
        ResultCache cache;
        auto table = cache.sum_table(OctSum({1, 1, 2}), 300);
        CHECK(table->represents(3));
        cache.save(path);
    }
    {
        ResultCache cache;
        cache.load(path);
        auto table = cache.sum_table(OctSum({1, 1, 2}), 300);
        for (i64 n = 0; n <= 300; ++n)
            CHECK(table->represents(n) == represents(OctSum({1, 1, 2}), n).has_value());
    }
    {
        // wrong engine version: ignored, table rebuilt from scratch
        std::ifstream in(path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        in.close();
        const auto pos = text.find(kEngineVersion);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, std::string(kEngineVersion).size(), "0.0.0");
        std::ofstream out(path);
        out << text;
        out.close();
        ResultCache cache;
        cache.load(path);
        auto table = cache.sum_table(OctSum({1, 1, 2}), 300);
        CHECK(table->represents(0));
    }
    std::remove(path.c_str());
}

TEST_CASE("cli exit codes and outputs") {
    using cli::run;
    CHECK(run({"p8", "2"}) == 0);
    CHECK(run({"represent", "--coeffs", "1", "--n", "5"}) == 0);
    CHECK(run({"represent", "--coeffs", "1", "--n", "2"}) == 1);
    CHECK(run({"truant", "--coeffs", "1,2", "--max", "100"}) == 0);
    CHECK(run({"classify", "--coeffs", "1,1,2,14", "--max", "100"}) == 1);
    CHECK(run({"classify", "--coeffs", "1,1,1,1", "--max", "100"}) == 0);
    CHECK(run({"exceptions", "--coeffs", "1,1,3,4", "--max", "100"}) == 0);

    // usage errors
    CHECK(run({"nonsense"}) == 2);
    CHECK(run({"represent", "--coeffs", "1,,2", "--n", "5"}) == 2);
    CHECK(run({"represent", "--coeffs", "0", "--n", "5"}) == 2);
    CHECK(run({"verify", "--theorem", "T9.9", "--max", "100"}) == 2);
    CHECK(run({"truant", "--coeffs", "1", "--max", "0"}) == 2);
    CHECK(run({}) == 2);

    CHECK(run({"verify", "--theorem", "L3.3", "--max", "200"}) == 0);
}

TEST_CASE("cli writes certificate and tree files") {
    using cli::run;
    CHECK(run({"verify", "--theorem", "L3.2", "--max", "200", "--cert", "cert_test.json"}) == 0);
    {
        std::ifstream in("cert_test.json");
        REQUIRE(in.good());
        nlohmann::json j;
        in >> j;
        CHECK(j["theorem"] == "L3.2");
        CHECK(j["verdict"] == "pass");
        CHECK(j["exceptions"] == std::vector<i64>{60});
    }
    std::remove("cert_test.json");

    CHECK(run({"escalate", "--depth", "2", "--max", "100", "--json", "tree_test.json"}) == 0);
    {
        std::ifstream in("tree_test.json");
        REQUIRE(in.good());
        nlohmann::json j;
        in >> j;
        CHECK(j["root"]["truant"] == 1);
    }
    std::remove("tree_test.json");
}

TEST_CASE("verify rejects bad bounds") {
    CHECK_THROWS_AS(verify_theorem(TheoremId::kL3_2, 0), std::invalid_argument);
}
