// Command-line harness for the secure distributed-storage toolkit: capacity
// tables, placement layouts, flow-graph cuts, coset encoding, attack replays
// and the invariant self-checks. All output is JSON on stdout; reports are
// deterministic functions of their inputs and seeds.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "dss/cli.hpp"

namespace {

using dss::cli::RunResult;
using nlohmann::json;

json load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) dss::fail(dss::Err::BadParams, "cannot open scenario file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        dss::fail(dss::Err::BadParams, std::string("scenario is not valid JSON: ") + e.what());
    }
    return j;
}

int emit(const RunResult& result, const std::string& out_path, bool timing, double wall_ms) {
    std::string text = result.output.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << text << "\n";
    }
    if (timing) std::cerr << "wall_ms " << wall_ms << "\n";
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"secure distributed-storage coding toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_path;
    bool timing = false;
    app.add_flag("--timing", timing, "print wall-clock time to stderr");

    int n = 5, k = 3, d = 4, ell = 0, b = 0;
    double alpha = 4, beta = 1;
    std::string model = "passive";
    std::uint64_t seed = 1;
    std::uint64_t q = 257;
    bool exhaustive = false;

    auto* cap = app.add_subcommand("capacity", "evaluate capacity bounds and ratios");
    cap->add_option("--n", n)->required();
    cap->add_option("--k", k)->required();
    cap->add_option("--d", d)->required();
    cap->add_option("--alpha", alpha);
    cap->add_option("--beta", beta)->required();
    cap->add_option("--model", model)->required();
    cap->add_option("--ell", ell);
    cap->add_option("--b", b);
    cap->add_option("-o,--output", out_path);

    auto* layout = app.add_subcommand("layout", "dump the symbol placement for n nodes");
    layout->add_option("--n", n)->required();
    layout->add_option("-o,--output", out_path);

    auto add_scenario = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        sub->add_option("-o,--output", out_path);
        return sub;
    };
    auto* mincut = add_scenario("mincut", "min cut of a flow graph after node deletions");
    auto* enc = add_scenario("encode-secret", "coset-encode a secret against an eavesdropper");
    auto* dec = add_scenario("decode-secret", "decode a stored secret from a collector view");
    auto* omni = add_scenario("attack-omniscient", "replay an omniscient-adversary scenario");
    auto* ltd = add_scenario("attack-limited", "replay a limited-knowledge-adversary scenario");

    int jobs = 1;
    auto* verify = app.add_subcommand("verify", "run the module invariant suites");
    verify->add_flag("--exhaustive", exhaustive, "widen the sweeps");
    verify->add_option("--jobs", jobs, "run checks on this many threads");
    verify->add_option("-o,--output", out_path);

    auto* rnc = app.add_subcommand("rnc-demo",
                                   "show random network coding leaking a file under repair");
    rnc->add_option("--seed", seed)->required();
    rnc->add_option("--q", q);
    rnc->add_option("-o,--output", out_path);

    CLI11_PARSE(app, argc, argv);

    auto started = std::chrono::steady_clock::now();
    try {
        RunResult result;
        if (cap->parsed()) {
            dss::DssParams p;
            p.n = n;
            p.k = k;
            p.d = d;
            p.beta = beta;
            p.alpha = cap->count("--alpha") ? alpha : d * beta;
            auto t = dss::io::threat_from_json(json{{"model", model}, {"ell", ell}, {"b", b}}, k);
            result = dss::cli::run_capacity(p, t);
        } else if (layout->parsed()) {
            result = dss::cli::run_layout(n);
        } else if (mincut->parsed()) {
            result = dss::cli::run_mincut(load_scenario(scenario_path));
        } else if (enc->parsed()) {
            result = dss::cli::run_encode_secret(load_scenario(scenario_path));
        } else if (dec->parsed()) {
            result = dss::cli::run_decode_secret(load_scenario(scenario_path));
        } else if (omni->parsed()) {
            result = dss::cli::run_attack_omniscient(load_scenario(scenario_path));
        } else if (ltd->parsed()) {
            result = dss::cli::run_attack_limited(load_scenario(scenario_path));
        } else if (verify->parsed()) {
            result = dss::cli::run_verify(exhaustive, jobs);
        } else if (rnc->parsed()) {
            result = dss::cli::run_rnc_demo(seed, q);
        }
        double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - started)
                             .count();
        return emit(result, out_path, timing, wall_ms);
    } catch (const dss::DssError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return dss::cli::exit_code_for(e);
    } catch (const json::exception& e) {
        std::cerr << "error: malformed scenario: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
