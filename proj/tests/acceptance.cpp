// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria run at their stated tolerances and time budgets.

#include "addiviol/conjpair.hpp"
#include "addiviol/json_io.hpp"
#include "addiviol/maxoverlap.hpp"
#include "addiviol/minentropy.hpp"
#include "addiviol/multicopy.hpp"
#include "addiviol/upb.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace addiviol;
using nlohmann::json;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& name, double budget_seconds,
                   const std::function<bool(std::ostringstream&)>& body) {
    std::ostringstream detail;
    bool pass = false;
    auto t0 = std::chrono::steady_clock::now();
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail << "exception: " << e.what();
        pass = false;
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt > budget_seconds) {
        pass = false;
        detail << " [over budget " << budget_seconds << "s]";
    }
    std::printf("%s  criterion %d (%s): %.1fs  %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                dt, detail.str().c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct CliRun {
    int exit_code = -1;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(ADDIVIOL_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    CliRun run;
    if (!pipe) return run;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) run.output.append(buf, n);
    int status = pclose(pipe);
    run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return run;
}

bool criterion_single_copy_minimum(std::ostringstream& detail) {
    bool ok = true;
    for (int d : {3, 4, 5, 6}) {
        Channel ch = channel_from_subspace(antisymmetric_subspace(d));
        for (double p : {0.5, 1.0, 2.0, -1.0 /* -1 encodes infinity */}) {
            RenyiOrder order = (p < 0) ? RenyiOrder::infinity() : RenyiOrder(p);
            MinEntropyResult res = min_output_renyi(ch, order);
            if (std::abs(res.value - 1.0) > 1e-6) {
                ok = false;
                detail << " d=" << d << " p=" << order.to_string() << " -> " << res.value;
            }
        }
    }
    if (ok) detail << "min output entropy = 1.000000 +- 1e-6 over d in {3..6}, p in {0.5,1,2,inf}";
    return ok;
}

bool criterion_product_overlap(std::ostringstream& detail) {
    bool ok = true;
    for (int d = 3; d <= 8; ++d) {
        SeesawOptions opts;
        opts.record_trace = true;
        OverlapResult res = max_product_overlap(antisymmetric_subspace(d).projector(), d, d, opts);
        if (std::abs(res.value - 0.5) > 1e-7) {
            ok = false;
            detail << " d=" << d << " overlap=" << res.value;
        }
        for (const auto& it : res.trace) {
            double closed = 0.5 * (1.0 - std::norm(it.a.dot(it.b)));
            if (std::abs(it.objective - closed) > 1e-10) {
                ok = false;
                detail << " d=" << d << " iterate deviates from (1-|<a|b>|^2)/2 by "
                       << std::abs(it.objective - closed);
                break;
            }
        }
    }
    if (ok) detail << "overlap = 0.5 +- 1e-7 for d=3..8; iterates on the closed form to 1e-10";
    return ok;
}

bool criterion_joint_spectrum(std::ostringstream& detail) {
    bool ok = true;
    for (int d = 3; d <= 10; ++d) {
        SchmidtSpectrum spec = joint_schmidt_spectrum(antisymmetric_subspace(d));
        std::vector<double> expected{(d - 1.0) / (2.0 * d)};
        for (int i = 0; i < d * d - 1; ++i) expected.push_back(1.0 / (2.0 * d * (d - 1.0)));
        if (spec.size() != static_cast<int>(expected.size())) {
            ok = false;
            detail << " d=" << d << " unexpected spectrum length " << spec.size();
            continue;
        }
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (std::abs(spec.lambdas[i] - expected[i]) > 1e-9) {
                ok = false;
                detail << " d=" << d << " entry " << i << " off by "
                       << std::abs(spec.lambdas[i] - expected[i]);
                break;
            }
    }
    for (int t = 0; t < 50; ++t) {
        int d_A = 2 + t % 3;
        int d_B = 2 + (t / 3) % 3;
        int k = 1 + t % (d_A * d_B);
        Subspace s = random_subspace(d_A, d_B, k, 900 + t);
        if (joint_schmidt_spectrum(s).lambda_max() < hayden_bound(s) - 1e-9) {
            ok = false;
            detail << " random subspace " << t << " breaks the dimension bound";
        }
    }
    if (ok) detail << "closed-form spectrum to 1e-9 for d=3..10; bound holds on 50 random pairs";
    return ok;
}

bool criterion_cli_thresholds(std::ostringstream& detail) {
    bool ok = true;

    CliRun verify = run_cli("verify --subspace antisym --d 3 --p 4.8");
    if (verify.exit_code != 0) {
        ok = false;
        detail << " verify exit=" << verify.exit_code;
    } else {
        json j = json::parse(verify.output, nullptr, false);
        double joint = j.is_discarded() ? 0.0 : j["result"]["joint_entropy"].get<double>();
        bool violated = !j.is_discarded() && j["result"]["verdict"] == "violated";
        if (!violated || joint <= 1.99 || joint >= 2.00) {
            ok = false;
            detail << " verify joint=" << joint;
        }
    }

    CliRun warm = run_cli("scan --p 2.5 --dmax 12");
    json warm_json = json::parse(warm.output, nullptr, false);
    if (warm.exit_code != 0 || warm_json.is_discarded() ||
        warm_json["result"]["minimal_violating_d"] != 8) {
        ok = false;
        detail << " scan p=2.5 minimal d mismatch";
    }

    CliRun cold = run_cli("scan --p 2 --dmax 32");
    json cold_json = json::parse(cold.output, nullptr, false);
    if (cold.exit_code != 0 || cold_json.is_discarded() ||
        !cold_json["result"]["minimal_violating_d"].is_null()) {
        ok = false;
        detail << " scan p=2 should find none";
    }

    if (ok) detail << "verify d=3 p=4.8 violated in (1.99,2.00); scans hit d=8 and none";
    return ok;
}

bool criterion_multicopy(std::ostringstream& detail) {
    bool ok = true;
    PureState input = totally_antisymmetric_input(3);
    for (double p : {0.0, 1.0, 2.0, -1.0}) {
        RenyiOrder order = (p < 0) ? RenyiOrder::infinity() : RenyiOrder(p);
        MultiCopyResult res = multicopy_output_entropy(3, 3, input, order);
        if (std::abs(res.entropy - 4.0) > 1e-6) {
            ok = false;
            detail << " p=" << order.to_string() << " entropy=" << res.entropy;
        }
        if (res.entropy <= res.single_copy_sum) {
            ok = false;
            detail << " entropy does not exceed the single-copy sum";
        }
        if (res.spectrum.size() != 16) {
            ok = false;
            detail << " spectrum has " << res.spectrum.size() << " levels";
        }
        for (double l : res.spectrum.lambdas)
            if (std::abs(l - 1.0 / 16.0) > 1e-9) {
                ok = false;
                detail << " spectrum is not flat";
                break;
            }
    }
    if (ok) detail << "S_p = 4.000 +- 1e-6 with a flat 16-level spectrum, above the sum 3";
    return ok;
}

bool criterion_average_overlap(std::ostringstream& detail) {
    Matrix p = antisymmetric_subspace(4).projector();
    const int samples = 100000;
    double sum = 0.0, sumsq = 0.0;
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int s = 0; s < samples; ++s) {
        Vector a(4), b(4);
        for (int i = 0; i < 4; ++i) {
            a[i] = Complex(gauss(rng), gauss(rng));
            b[i] = Complex(gauss(rng), gauss(rng));
        }
        a /= a.norm();
        b /= b.norm();
        Vector prod(16);
        for (int i = 0; i < 4; ++i) prod.segment(4 * i, 4) = a[i] * b;
        double v = std::real(prod.dot(p * prod));
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / samples;
    double se = std::sqrt((sumsq / samples - mean * mean) / samples);
    double exact = average_product_overlap(p, 4, 4);
    bool ok = std::abs(mean - exact) < 3.0 * se && std::abs(exact - 0.375) < 1e-15;
    detail << "mean=" << mean << " exact=" << exact << " se=" << se;
    return ok;
}

bool criterion_upb_pipeline(std::ostringstream& detail) {
    P0AdditivityReport rep = p0_additivity_report(tiles_upb());
    bool ok = true;
    if (!rep.certificate.is_unextendible) {
        ok = false;
        detail << " partition criterion failed";
    }
    if (!rep.genericity_applicable || !rep.genericity.generic) {
        ok = false;
        detail << " genericity failed";
    }
    if (!(rep.complement_overlap < 1.0 - 1e-3)) {
        ok = false;
        detail << " complement overlap " << rep.complement_overlap;
    }
    if (rep.random_output_min_rank != 3 || !(rep.random_output_min_eigenvalue > 1e-6)) {
        ok = false;
        detail << " single-copy rank " << rep.random_output_min_rank << " min eig "
               << rep.random_output_min_eigenvalue;
    }
    if (!(rep.tensor_complement_overlap < 1.0 - 1e-4)) {
        ok = false;
        detail << " tensor complement overlap " << rep.tensor_complement_overlap;
    }
    if (std::abs(rep.s0_two_copy_estimate - 2.0 * std::log2(3.0)) > 1e-6) {
        ok = false;
        detail << " two-copy S_0 " << rep.s0_two_copy_estimate;
    }
    if (!rep.additive_evidence) ok = false;
    if (ok)
        detail << "tiles passes partition, genericity, rank and complement gates; S_0 = 2 log2 3";
    return ok;
}

bool criterion_property_suite(std::ostringstream& detail) {
    std::string cmd = std::string(ADDIVIOL_UNIT_TESTS_PATH) +
                      " --test-suite=properties 2>/dev/null >/dev/null";
    int status = std::system(cmd.c_str());
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    detail << "standalone property suite exit code " << code;
    return code == 0;
}

}  // namespace

int main() {
    run_criterion(1, "single-copy minimum", 60.0, criterion_single_copy_minimum);
    run_criterion(2, "antisymmetric product overlap", 60.0, criterion_product_overlap);
    run_criterion(3, "conjugate-pair spectrum and bound", 60.0, criterion_joint_spectrum);
    run_criterion(4, "violation thresholds via the CLI", 60.0, criterion_cli_thresholds);
    run_criterion(5, "three-copy determinant plateau", 120.0, criterion_multicopy);
    run_criterion(6, "averaged overlap monte carlo", 60.0, criterion_average_overlap);
    run_criterion(7, "upb p=0 additivity pipeline", 300.0, criterion_upb_pipeline);
    run_criterion(8, "property suites standalone", 600.0, criterion_property_suite);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
