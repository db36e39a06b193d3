#include "octsum/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "octsum/escalation.hpp"
#include "octsum/verify.hpp"
#include "octsum/version.hpp"

namespace octsum::cli {

namespace {

std::vector<i64> parse_coeffs(const std::string& text) {
    std::vector<i64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw CLI::ValidationError("--coeffs", "empty coefficient");
        std::size_t pos = 0;
        i64 v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--coeffs", "malformed coefficient '" + item + "'");
        }
        if (pos != item.size() || v < 1)
            throw CLI::ValidationError("--coeffs", "coefficients must be positive integers");
        out.push_back(v);
    }
    if (out.empty()) throw CLI::ValidationError("--coeffs", "empty coefficient list");
    return out;
}

i64 default_bound() {
    if (const char* s = std::getenv("OCTSUM_DEFAULT_BOUND")) {
        try {
            const i64 v = std::stoll(s);
            if (v >= 1) return v;
        } catch (const std::exception&) {
        }
    }
    return escalation::kDefaultBound;
}

std::string default_cache() {
    if (const char* s = std::getenv("OCTSUM_CACHE_PATH")) return s;
    return "";
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::string cert_line(const verify::Certificate& c) {
    std::ostringstream os;
    os << verify::to_string(c.id) << ": " << (c.pass ? "pass" : "fail");
    if (!c.pass) os << " (n=" << c.fail_n << ", claim=" << c.fail_claim << ")";
    os << "  bound=" << c.bound;
    if (!c.exceptions.empty()) {
        os << "  exceptions={";
        for (std::size_t i = 0; i < c.exceptions.size(); ++i)
            os << (i ? "," : "") << c.exceptions[i];
        os << "}";
    }
    os << "  " << c.elapsed.count() << "ms";
    return os.str();
}

std::string sanitize_filename(std::string id) {
    for (char& ch : id)
        if (ch == '/' || ch == '\\') ch = '_';
    return id;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{
        "octsum " + std::string(kEngineVersion) +
        " - representability by weighted sums of generalized octagonal numbers:\n"
        "escalation trees, the 12-value universality criterion, and bounded\n"
        "certification of the underlying claims"};
    app.require_subcommand(1);

    int exit_code = 0;

    // p8 <x>
    i64 p8_x = 0;
    auto* cmd_p8 = app.add_subcommand("p8", "evaluate P8(x) = 3x^2 - 2x");
    cmd_p8->add_option("x", p8_x, "integer argument")->required();
    cmd_p8->callback([&] { std::cout << p8(p8_x) << "\n"; });

    // values --max B
    i64 values_max = default_bound();
    auto* cmd_values = app.add_subcommand("values", "list generalized octagonal values up to a bound");
    cmd_values->add_option("--max", values_max, "inclusive bound")->capture_default_str();
    cmd_values->callback([&] {
        for (i64 v : oct_values_up_to(values_max)) std::cout << v << "\n";
    });

    // represent --coeffs a,b,c --n N [--witness]
    std::string rep_coeffs;
    i64 rep_n = 0;
    bool rep_witness = false;
    auto* cmd_rep = app.add_subcommand("represent", "decide whether the sum represents n");
    cmd_rep->add_option("--coeffs", rep_coeffs, "comma separated positive coefficients")->required();
    cmd_rep->add_option("--n", rep_n, "target integer")->required();
    cmd_rep->add_flag("--witness", rep_witness, "print a witness argument vector");
    cmd_rep->callback([&] {
        const OctSum sum(parse_coeffs(rep_coeffs));
        const auto w = represents(sum, rep_n);
        if (!w) {
            std::cout << "not represented\n";
            exit_code = 1;
            return;
        }
        std::cout << "represented\n";
        if (rep_witness) {
            std::cout << "witness:";
            for (i64 x : w->xs) std::cout << " " << x;
            std::cout << "\n";
        }
    });

    // exceptions --coeffs ... --max B
    std::string exc_coeffs;
    i64 exc_max = default_bound();
    auto* cmd_exc = app.add_subcommand("exceptions", "list integers in [1, max] the sum misses");
    cmd_exc->add_option("--coeffs", exc_coeffs, "comma separated positive coefficients")->required();
    cmd_exc->add_option("--max", exc_max, "inclusive bound")->capture_default_str();
    cmd_exc->callback([&] {
        const auto missing = exceptions_up_to(OctSum(parse_coeffs(exc_coeffs)), exc_max);
        if (missing.empty()) {
            std::cout << "none\n";
            return;
        }
        for (std::size_t i = 0; i < missing.size(); ++i)
            std::cout << (i ? " " : "") << missing[i];
        std::cout << "\n";
    });

    // truant --coeffs ... --max B
    std::string tru_coeffs;
    i64 tru_max = default_bound();
    auto* cmd_tru = app.add_subcommand("truant", "smallest integer in [1, max] the sum misses");
    cmd_tru->add_option("--coeffs", tru_coeffs, "comma separated positive coefficients")->required();
    cmd_tru->add_option("--max", tru_max, "inclusive bound")->capture_default_str();
    cmd_tru->callback([&] {
        const auto t = escalation::truant(OctSum(parse_coeffs(tru_coeffs)), tru_max);
        if (t) std::cout << *t << "\n";
        else std::cout << "none\n";
    });

    // escalate --depth D --max B [--json PATH]
    int esc_depth = 4;
    i64 esc_max = default_bound();
    std::string esc_json;
    auto* cmd_esc = app.add_subcommand("escalate", "build the coefficient escalation tree");
    cmd_esc->add_option("--depth", esc_depth, "maximum coefficient count")->capture_default_str();
    cmd_esc->add_option("--max", esc_max, "truant search bound")->capture_default_str();
    cmd_esc->add_option("--json", esc_json, "write the tree as canonical JSON");
    cmd_esc->callback([&] {
        const auto tree = escalation::escalate(esc_depth, esc_max);
        std::size_t nodes = 0, universal = 0;
        std::vector<const escalation::EscalationNode*> stack{&tree.root};
        while (!stack.empty()) {
            const auto* n = stack.back();
            stack.pop_back();
            ++nodes;
            if (n->bounded_universal()) ++universal;
            for (const auto& ch : n->children) stack.push_back(&ch);
        }
        std::cout << "nodes: " << nodes << "\nbounded-universal leaves: " << universal << "\n";
        if (esc_depth >= 5 && esc_max >= 60) {
            const auto crit = escalation::criterion_set(tree);
            std::cout << "criterion set:";
            for (i64 v : crit) std::cout << " " << v;
            std::cout << "\n";
        }
        if (!esc_json.empty()) write_json(esc_json, escalation::tree_to_json(tree));
    });

    // classify --coeffs ... [--max B]
    std::string cls_coeffs;
    i64 cls_max = default_bound();
    auto* cmd_cls = app.add_subcommand("classify", "universality verdict for a sum");
    cmd_cls->add_option("--coeffs", cls_coeffs, "comma separated positive coefficients")->required();
    cmd_cls->add_option("--max", cls_max, "corroboration scan bound")->capture_default_str();
    cmd_cls->callback([&] {
        const auto rep = escalation::classify(OctSum(parse_coeffs(cls_coeffs)), cls_max);
        using V = escalation::ClassificationReport::Verdict;
        switch (rep.verdict) {
            case V::kUniversalByCriterion:
                std::cout << "universal-by-criterion (scanned to " << rep.checked_bound << ")\n";
                break;
            case V::kNotUniversal:
                std::cout << "not-universal(" << *rep.witness << ")\n";
                exit_code = 1;
                break;
            case V::kBoundedUniversalUnproven:
                std::cout << "bounded-universal-unproven (scanned to " << rep.checked_bound << ")\n";
                break;
        }
    });

    // verify --theorem ID --max B [--cert PATH] [--cache PATH]
    std::string ver_id;
    i64 ver_max = default_bound();
    std::string ver_cert, ver_cache = default_cache();
    auto* cmd_ver = app.add_subcommand("verify", "run one claim pipeline and certify it");
    cmd_ver->add_option("--theorem", ver_id, "claim id, e.g. T2.1 or L3.5a7")->required();
    cmd_ver->add_option("--max", ver_max, "verification bound")->capture_default_str();
    cmd_ver->add_option("--cert", ver_cert, "write the certificate JSON here");
    cmd_ver->add_option("--cache", ver_cache, "persistent result cache path");
    cmd_ver->callback([&] {
        const auto id = verify::parse_theorem(ver_id);
        if (!id) throw CLI::ValidationError("--theorem", "unknown id '" + ver_id + "'");
        verify::ResultCache cache;
        if (!ver_cache.empty()) cache.load(ver_cache);
        const auto cert = verify::verify_theorem(*id, ver_max, &cache);
        if (!ver_cache.empty()) cache.save(ver_cache);
        std::cout << cert_line(cert) << "\n";
        if (!ver_cert.empty()) write_json(ver_cert, verify::certificate_to_json(cert));
        if (!cert.pass) exit_code = 1;
    });

    // verify-all --max B [--out DIR] [--cache PATH] [--threads N]
    i64 all_max = default_bound();
    std::string all_out, all_cache = default_cache();
    unsigned all_threads = 0;
    auto* cmd_all = app.add_subcommand("verify-all", "run every claim pipeline");
    cmd_all->add_option("--max", all_max, "verification bound")->capture_default_str();
    cmd_all->add_option("--out", all_out, "directory for per-claim certificate files");
    cmd_all->add_option("--cache", all_cache, "persistent result cache path");
    cmd_all->add_option("--threads", all_threads, "worker count (0 = hardware)");
    cmd_all->callback([&] {
        verify::ResultCache cache;
        if (!all_cache.empty()) cache.load(all_cache);
        const auto certs = verify::verify_all(all_max, &cache, all_threads);
        if (!all_cache.empty()) cache.save(all_cache);
        bool all_pass = true;
        for (const auto& c : certs) {
            std::cout << cert_line(c) << "\n";
            all_pass = all_pass && c.pass;
            if (!all_out.empty())
                write_json(all_out + "/" + sanitize_filename(verify::to_string(c.id)) + ".json",
                           verify::certificate_to_json(c));
        }
        std::cout << (all_pass ? "all claims pass" : "FAILURES PRESENT") << "\n";
        if (!all_pass) exit_code = 1;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> full;
    full.push_back("octsum");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : full) argv.push_back(s.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace octsum::cli
