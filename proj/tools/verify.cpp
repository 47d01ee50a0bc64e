#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scrollcert/cert.hpp"

using namespace scrollcert;

namespace {

void print_certificate(const Certificate& c) {
    std::printf("[%s] %-18s %6lld ms  prime=%u slice=%u seed=%llu\n",
                verdict_name(c.verdict), c.claim_id.c_str(),
                static_cast<long long>(c.elapsed_ms), c.prime, c.slice_prime,
                static_cast<unsigned long long>(c.seed));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "verify: exact-arithmetic certificates for the geometry of 3-nodal "
        "septic scrolls, their ruling curves and the associated lattices"};

    std::string claim;
    Config cfg;
    std::string json_path;
    bool list = false;

    app.add_option("claim", claim,
                   "claim id to verify, or 'all' for the whole registry");
    app.add_flag("--list", list, "list registered claim ids and exit");
    app.add_option("--prime", cfg.prime, "prime for parameter-plane scans")
        ->envname("VERIFY_PRIME")
        ->capture_default_str();
    app.add_option("--slice-prime", cfg.slice_prime,
                   "prime for Grassmannian slices (11, 13 or 17)")
        ->envname("VERIFY_SLICE_PRIME")
        ->capture_default_str();
    app.add_option("--rank-prime", cfg.rank_prime,
                   "prime for pure rank screening")
        ->envname("VERIFY_RANK_PRIME")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for all randomized sampling")
        ->envname("VERIFY_SEED")
        ->capture_default_str();
    app.add_flag("--exact-rationals", cfg.exact_rationals,
                 "re-run optional rank computations over exact rationals")
        ->envname("VERIFY_EXACT_RATIONALS");
    app.add_option("--json", json_path, "write the report as JSON to PATH");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (list) {
        for (const auto& s : claim_registry()) std::printf("%s\n", s.id.c_str());
        return 0;
    }
    if (claim.empty()) {
        std::cerr << "usage: verify <claim-id|all> [options]; see --help\n";
        return 2;
    }

    try {
        json report;
        bool ok = true;
        if (claim == "all") {
            auto agg = run_all(cfg);
            for (const auto& c : agg.certificates) print_certificate(c);
            report = aggregate_json(agg, cfg);
            ok = agg.all_pass;
            std::printf("%zu certificates, %s\n", agg.certificates.size(),
                        ok ? "all pass" : "FAILURES present");
        } else {
            auto cert = run_claim(claim, cfg);
            print_certificate(cert);
            report = certificate_json(cert, cfg);
            ok = cert.verdict != Verdict::fail;
        }
        if (!json_path.empty()) {
            std::ofstream out(json_path);
            if (!out) {
                std::cerr << "cannot write " << json_path << "\n";
                return 2;
            }
            out << report.dump(2) << "\n";
        }
        return ok ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "run 'verify --list' for registered claims\n";
        return 2;
    }
}
