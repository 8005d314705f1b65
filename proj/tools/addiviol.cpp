// Command-line front end: reproducible JSON/CSV reports for the violation,
// scan, multicopy, UPB and screening experiments.

#include "addiviol/conjpair.hpp"
#include "addiviol/json_io.hpp"
#include "addiviol/minentropy.hpp"
#include "addiviol/multicopy.hpp"
#include "addiviol/upb.hpp"
#include "addiviol/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using addiviol::RenyiOrder;
using nlohmann::json;

// Exit codes: verify maps its verdict to 0/1/2; everything else returns 0 on
// success or 1 when the requested check does not pass. 64 = usage error,
// 65 = invalid data, 66 = missing input file.
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;

struct RunConfig {
    std::string p_text = "1";
    int d = 3;
    int n = 1;
    int d_max = 12;
    int restarts = 32;
    int max_iter = 1000;
    double tol = 1e-10;
    double rank_eps = 1e-9;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string csv_path;
    bool large_ok = false;
    std::string subspace = "antisym";
    std::string basis = "tiles";
    std::string input = "antisym-total";
    std::string check = "all";
};

json config_echo(const RunConfig& c, const std::string& command) {
    json j{{"command", command}, {"p", c.p_text},       {"d", c.d},
           {"n", c.n},           {"dmax", c.d_max},     {"restarts", c.restarts},
           {"max_iter", c.max_iter}, {"tol", c.tol},    {"rank_eps", c.rank_eps},
           {"seed", c.seed},     {"out", c.out_path},   {"csv", c.csv_path},
           {"large", c.large_ok}};
    j["subspace"] = c.subspace;
    j["basis"] = c.basis;
    j["input"] = c.input;
    j["check"] = c.check;
    return j;
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void emit_report(const RunConfig& cfg, const std::string& command, json result,
                 double duration_seconds, const std::string& started) {
    json report{{"schema", addiviol::kReportSchema},
                {"tool", addiviol::kToolName},
                {"version", addiviol::kVersion},
                {"command", command},
                {"config", config_echo(cfg, command)},
                {"seed", cfg.seed},
                {"result", std::move(result)},
                {"timestamp", json{{"started_utc", started}, {"duration_seconds", duration_seconds}}}};
    std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
        out << text;
    }
}

addiviol::MinimizeOptions minimize_options(const RunConfig& c) {
    addiviol::MinimizeOptions opts;
    opts.restarts = c.restarts;
    opts.max_iter = c.max_iter;
    opts.tol = c.tol;
    opts.rank_threshold = c.rank_eps;
    opts.seed = c.seed;
    return opts;
}

addiviol::SeesawOptions seesaw_options(const RunConfig& c) {
    addiviol::SeesawOptions opts;
    opts.restarts = c.restarts;
    opts.max_iter = c.max_iter;
    opts.tol = c.tol;
    opts.seed = c.seed;
    return opts;
}

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Selector grammar: antisym | parthasarathy | file:<path>
addiviol::Subspace resolve_subspace(const RunConfig& cfg) {
    if (cfg.subspace == "antisym") return addiviol::antisymmetric_subspace(cfg.d);
    if (cfg.subspace == "parthasarathy") return addiviol::parthasarathy_subspace(cfg.d);
    if (cfg.subspace.rfind("file:", 0) == 0) return addiviol::load_subspace(cfg.subspace.substr(5));
    throw UsageError("unknown subspace selector '" + cfg.subspace +
                     "' (expected antisym, parthasarathy or file:<path>)");
}

addiviol::ProductBasis resolve_basis(const RunConfig& cfg) {
    if (cfg.basis == "tiles") return addiviol::tiles_upb();
    if (cfg.basis.rfind("file:", 0) == 0) return addiviol::load_product_basis(cfg.basis.substr(5));
    throw UsageError("unknown basis selector '" + cfg.basis + "' (expected tiles or file:<path>)");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_scan_csv(const addiviol::ScanResult& scan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "d,lambda_max_exact,hayden_bound,joint_entropy,two_single_min,verdict\n";
    for (const auto& rep : scan.reports)
        out << rep.d_A << ',' << format_double(rep.lambda_max_exact) << ','
            << format_double(rep.hayden_lambda_bound) << ',' << format_double(rep.joint_entropy)
            << ',' << format_double(2.0 * rep.single_copy_min) << ',' << to_string(rep.verdict)
            << "\n";
}

void write_spectrum_csv(const addiviol::SchmidtSpectrum& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "index,lambda\n";
    for (int i = 0; i < spec.size(); ++i)
        out << i << ',' << format_double(spec.lambdas[i]) << "\n";
}

int cmd_verify(const RunConfig& cfg, RenyiOrder p, const std::string& started,
               std::chrono::steady_clock::time_point t0) {
    addiviol::Subspace s = resolve_subspace(cfg);
    addiviol::ViolationReport rep = addiviol::violation_report(s, p, std::nullopt,
                                                               minimize_options(cfg));
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, "verify", addiviol::to_json(rep), dt, started);
    switch (rep.verdict) {
        case addiviol::Verdict::violated: return 0;
        case addiviol::Verdict::not_violated: return 1;
        case addiviol::Verdict::inconclusive: return 2;
    }
    return 2;
}

int cmd_scan(const RunConfig& cfg, RenyiOrder p, const std::string& started,
             std::chrono::steady_clock::time_point t0) {
    addiviol::ScanResult scan = addiviol::scan_violation(p, cfg.d_max);
    if (!cfg.csv_path.empty()) write_scan_csv(scan, cfg.csv_path);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, "scan", addiviol::to_json(scan), dt, started);
    return 0;
}

int cmd_multicopy(const RunConfig& cfg, RenyiOrder p, const std::string& started,
                  std::chrono::steady_clock::time_point t0) {
    const int k = cfg.d * (cfg.d - 1) / 2;
    addiviol::MultiCopyResult res;
    if (cfg.input == "antisym-total") {
        if (cfg.n != k)
            throw UsageError("antisym-total input needs n = d(d-1)/2 = " + std::to_string(k));
        res = addiviol::multicopy_output_entropy(cfg.d, cfg.n,
                                                 addiviol::totally_antisymmetric_input(k), p,
                                                 cfg.large_ok);
        res.input_kind = addiviol::MultiCopyInput::totally_antisymmetric;
    } else if (cfg.input == "pairing") {
        res = addiviol::multicopy_output_entropy(cfg.d, cfg.n, addiviol::pairing_input(cfg.d, cfg.n),
                                                 p, cfg.large_ok);
        res.input_kind = addiviol::MultiCopyInput::pairing;
    } else if (cfg.input == "search") {
        if (!p.is_infinity()) throw UsageError("multicopy search supports --p inf only");
        res = addiviol::multicopy_min_search(cfg.d, cfg.n, seesaw_options(cfg), cfg.large_ok);
    } else {
        throw UsageError("unknown input kind '" + cfg.input +
                         "' (expected antisym-total, pairing or search)");
    }
    if (!cfg.csv_path.empty()) write_spectrum_csv(res.spectrum, cfg.csv_path);
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, "multicopy", addiviol::to_json(res), dt, started);
    return 0;
}

int cmd_upb(const RunConfig& cfg, const std::string& started,
            std::chrono::steady_clock::time_point t0) {
    addiviol::ProductBasis pb = resolve_basis(cfg);
    json result;
    bool pass = false;
    if (cfg.check == "all") {
        addiviol::P0AdditivityReport rep =
            addiviol::p0_additivity_report(pb, seesaw_options(cfg), minimize_options(cfg));
        result = addiviol::to_json(rep);
        pass = rep.additive_evidence;
    } else if (cfg.check == "partition") {
        addiviol::UpbCertificate cert = addiviol::is_upb_partition_criterion(pb, seesaw_options(cfg));
        result = addiviol::to_json(cert);
        pass = cert.is_unextendible;
    } else if (cfg.check == "genericity") {
        addiviol::GenericityResult gen = addiviol::genericity_check(pb, pb.d_A);
        result = json{{"generic", gen.generic}};
        if (!gen.generic) result["failing_subset"] = gen.failing_subset;
        pass = gen.generic;
    } else {
        throw UsageError("unknown check '" + cfg.check + "' (expected all, partition or genericity)");
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, "upb", std::move(result), dt, started);
    return pass ? 0 : 1;
}

int cmd_screen(const RunConfig& cfg, RenyiOrder p, const std::string& started,
               std::chrono::steady_clock::time_point t0) {
    addiviol::Subspace s = resolve_subspace(cfg);
    addiviol::MinEntropyResult res = addiviol::screen_subspace(s, p, minimize_options(cfg));
    double condition = addiviol::vn_violation_condition(s.d_A, s.k());
    json result{{"min_entropy", addiviol::to_json(res)},
                {"vn_condition_value", condition},
                {"vn_condition_below_2", condition < 2.0}};
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(cfg, "screen", std::move(result), dt, started);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Minimum output Renyi entropy toolkit for bipartite subspace channels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(addiviol::kToolName) + " " + addiviol::kVersion);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed (default 0)");
        sub->add_option("--restarts", cfg.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
        sub->add_option("--max-iter", cfg.max_iter, "iteration cap")->check(CLI::PositiveNumber);
        sub->add_option("--tol", cfg.tol, "convergence tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--rank-eps", cfg.rank_eps, "rank threshold for S_0")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", cfg.out_path, "write the JSON report here as well as stdout");
    };

    CLI::App* verify = app.add_subcommand("verify", "additivity violation via the conjugate pair");
    verify->add_option("--subspace", cfg.subspace, "antisym | parthasarathy | file:<path>");
    verify->add_option("--d", cfg.d, "local dimension")->check(CLI::Range(2, 64));
    verify->add_option("--p", cfg.p_text, "Renyi order (decimal, 0 or inf)")->required();
    add_common(verify);

    CLI::App* scan = app.add_subcommand("scan", "antisymmetric violation scan over d");
    scan->add_option("--p", cfg.p_text, "Renyi order")->required();
    scan->add_option("--dmax", cfg.d_max, "largest d")->required()->check(CLI::Range(2, 64));
    scan->add_option("--csv", cfg.csv_path, "write the per-d table here");
    add_common(scan);

    CLI::App* multicopy = app.add_subcommand("multicopy", "n-copy antisymmetric experiments");
    multicopy->add_option("--d", cfg.d, "local dimension")->required()->check(CLI::Range(2, 64));
    multicopy->add_option("--n", cfg.n, "copies")->required()->check(CLI::PositiveNumber);
    multicopy->add_option("--input", cfg.input, "antisym-total | pairing | search");
    multicopy->add_option("--p", cfg.p_text, "Renyi order");
    multicopy->add_flag("--large", cfg.large_ok, "allow states above 1e7 amplitudes");
    multicopy->add_option("--csv", cfg.csv_path, "write the output spectrum here");
    add_common(multicopy);

    CLI::App* upb = app.add_subcommand("upb", "UPB channel p=0 additivity evidence");
    upb->add_option("--basis", cfg.basis, "tiles | file:<path>");
    upb->add_option("--check", cfg.check, "all | partition | genericity");
    add_common(upb);

    CLI::App* screen = app.add_subcommand("screen", "minimum subspace entanglement + vN condition");
    screen->add_option("--subspace", cfg.subspace, "antisym | parthasarathy | file:<path>");
    screen->add_option("--d", cfg.d, "local dimension")->check(CLI::Range(2, 64));
    screen->add_option("--p", cfg.p_text, "Renyi order")->required();
    add_common(screen);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const std::string started = utc_timestamp();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        RenyiOrder p = RenyiOrder::parse(cfg.p_text);
        if (verify->parsed()) return cmd_verify(cfg, p, started, t0);
        if (scan->parsed()) return cmd_scan(cfg, p, started, t0);
        if (multicopy->parsed()) return cmd_multicopy(cfg, p, started, t0);
        if (upb->parsed()) return cmd_upb(cfg, started, t0);
        if (screen->parsed()) return cmd_screen(cfg, p, started, t0);
        std::cerr << "error: no command\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoInput;
    }
}
