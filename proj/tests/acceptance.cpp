// Acceptance gate: ten numbered end-to-end criteria covering size control,
// the two simulated experiments, the consistency trend, the Grothendieck
// sandwich, the norm bounds, oracle equivalence, the binary and rectangular
// reductions, and CLI determinism. Each prints one [PASS]/[FAIL] line with
// the measured numbers; the exit code is the number of failed criteria.
//
// Optional argv: criterion numbers to run (default: all ten).

#include "netnorm/edge_list.hpp"
#include "netnorm/network.hpp"
#include "netnorm/opnorm.hpp"
#include "netnorm/randomization.hpp"
#include "netnorm/simulation.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace netnorm;
namespace fs = std::filesystem;

namespace {

int failures = 0;

double seconds_since(const std::chrono::steady_clock::time_point &start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int number, const std::string &name, bool pass, const std::string &detail) {
    std::printf("[%s] %2d. %s: %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

/** Solver profile for the long randomization loops: the cheap coordinate
 *  ascent with few restarts, plenty for sign matrices of this size. */
statistic_context fast_context() {
    statistic_context ctx;
    ctx.sdp.method = sdp_options::ascent::row_update;
    ctx.sdp.restarts = 2;
    ctx.sdp.tol = 1e-5;
    ctx.sdp.max_iter = 200;
    ctx.sdp.roundings = 16;
    return ctx;
}

const std::vector<statistic_id> norm_battery{statistic_id::t22, statistic_id::s_inf1};

/** The sparse-pair study at a given size, shared between criteria 2 and 4 */
const study_table &sparse_study(index_t n) {
    static std::map<index_t, study_table> cache;
    const auto found = cache.find(n);
    if (found != cache.end()) return found->second;
    const auto [f1, f2] = preset_models("sparse-er", n);
    study_table table =
        power_study(f1, f2, 200, 999, 0.05, norm_battery, 1, fast_context());
    return cache.emplace(n, std::move(table)).first->second;
}

const study_summary &summary_for(const study_table &table, statistic_id id) {
    for (const auto &summary : table.summaries)
        if (summary.statistic == id) return summary;
    throw error("statistic missing from study table");
}

/** 100 random symmetric zero-diagonal sign matrices, n cycling over 4..12 */
std::vector<matrix_t> sign_matrix_suite() {
    std::mt19937_64 rng(20250825);
    std::vector<matrix_t> suite;
    suite.reserve(100);
    for (int i = 0; i < 100; ++i) {
        const index_t n = 4 + static_cast<index_t>(i % 9);
        suite.push_back(oracles::random_hollow_symmetric(n, rng, {-1.0, 0.0, 1.0}));
    }
    return suite;
}

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const random_graph_model model = er_model(30, 0.1);
    const std::vector<statistic_id> battery{statistic_id::t22, statistic_id::s_inf1,
                                            statistic_id::avg_degree_absdiff};
    const study_table table =
        power_study(model, model, 400, 199, 0.05, battery, 1, fast_context());
    const double limit = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 400.0);
    double worst = 0;
    for (const auto &summary : table.summaries) worst = std::max(worst, summary.rejection_rate);
    const double elapsed = seconds_since(start);
    const bool pass = worst <= limit && elapsed <= 600.0;
    std::string rates;
    for (const auto &summary : table.summaries) {
        if (!rates.empty()) rates += "/";
        rates += fmt(summary.rejection_rate, 4);
    }
    report(1, "size control under the null", pass,
           "rejection rates " + rates + " (limit " + fmt(limit, 4) + "), " + fmt(elapsed, 0) +
               " s");
}

void criterion_2() {
    const auto start = std::chrono::steady_clock::now();
    const study_table &table = sparse_study(50);
    const study_summary &t22s = summary_for(table, statistic_id::t22);
    const study_summary &s1s = summary_for(table, statistic_id::s_inf1);
    const double elapsed = seconds_since(start);
    const bool band_t22 = std::abs(t22s.mean_p - 0.070) <= 0.030;
    const bool band_s1 = std::abs(s1s.mean_p - 0.049) <= 0.030;
    const bool ordered = s1s.mean_p < t22s.mean_p;
    const bool pass = band_t22 && band_s1 && ordered && elapsed <= 1800.0;
    report(2, "sparse pair at N=50", pass,
           "mean p t22 " + fmt(t22s.mean_p) + " (target 0.070+-0.030), s_inf1 " +
               fmt(s1s.mean_p) + " (target 0.049+-0.030), s_inf1<t22 " +
               (ordered ? "yes" : "no") + ", " + fmt(elapsed, 0) + " s");
}

void criterion_3() {
    const auto start = std::chrono::steady_clock::now();
    const auto [f1, f2] = preset_models("degree-het", 50);
    const study_table table =
        power_study(f1, f2, 200, 999, 0.05, norm_battery, 1, fast_context());
    const study_summary &t22s = summary_for(table, statistic_id::t22);
    const study_summary &s1s = summary_for(table, statistic_id::s_inf1);
    const double elapsed = seconds_since(start);
    const bool band_t22 = std::abs(t22s.mean_p - 0.521) <= 0.100;
    const bool small_s1 = s1s.mean_p <= 0.02;
    const bool pass = band_t22 && small_s1 && elapsed <= 1800.0;
    report(3, "degree-heterogeneous pair at N=50", pass,
           "mean p t22 " + fmt(t22s.mean_p) + " (target 0.521+-0.100), s_inf1 " +
               fmt(s1s.mean_p) + " (target <=0.02), " + fmt(elapsed, 0) + " s");
}

void criterion_4() {
    const auto start = std::chrono::steady_clock::now();
    const study_table &at50 = sparse_study(50);
    const study_table &at100 = sparse_study(100);
    bool pass = true;
    std::string detail;
    for (statistic_id id : norm_battery) {
        const study_summary &small = summary_for(at50, id);
        const study_summary &large = summary_for(at100, id);
        const double drop = small.mean_p - large.mean_p;
        const double se =
            std::sqrt(small.se_mean_p * small.se_mean_p + large.se_mean_p * large.se_mean_p);
        const bool ok = drop > 2.0 * se;
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += statistic_name(id) + " " + fmt(small.mean_p) + "->" + fmt(large.mean_p) +
                  " (drop " + fmt(drop) + ", 2se " + fmt(2.0 * se) + ")";
    }
    report(4, "mean p-values fall from N=50 to N=100", pass,
           detail + ", " + fmt(seconds_since(start), 0) + " s");
}

void criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<matrix_t> suite = sign_matrix_suite();
    const scalar_t k = grothendieck_k();
    int lower_ok = 0;
    int upper_ok = 0;
    for (const matrix_t &m : suite) {
        const scalar_t exact = t_inf1_exact(m);
        const scalar_t sdp = sdp_inf1(m).value;  // reference solver settings
        const scalar_t slack = 1e-4 * std::max<scalar_t>(1.0, exact);
        lower_ok += exact <= sdp + slack;
        upper_ok += sdp <= k * exact + slack;
    }
    const double elapsed = seconds_since(start);
    const bool pass = lower_ok == 100 && upper_ok == 100 && elapsed <= 120.0;
    report(5, "semidefinite value sandwiches the exact norm", pass,
           "lower bound held " + std::to_string(lower_ok) + "/100, upper " +
               std::to_string(upper_ok) + "/100, " + fmt(elapsed, 1) + " s");
}

void criterion_6() {
    const std::vector<matrix_t> suite = sign_matrix_suite();
    const scalar_t k = grothendieck_k();
    int tau_ok = 0;
    int sigma_ok = 0;
    for (const matrix_t &m : suite) {
        const row_norms stats = row_norm_stats(m);
        tau_ok += stats.max <= spectral_norm(m) + 1e-10;
        sigma_ok += stats.sum <= k * t_inf1_exact(m) + 1e-9;
    }
    const bool pass = tau_ok == 100 && sigma_ok == 100;
    report(6, "row-norm bounds on the two statistics", pass,
           "max row norm <= spectral " + std::to_string(tau_ok) + "/100, row-norm sum <= K*exact " +
               std::to_string(sigma_ok) + "/100");
}

void criterion_7() {
    std::mt19937_64 rng(424242);
    int spectral_ok = 0;
    double worst_rel = 0;
    for (int i = 0; i < 50; ++i) {
        const matrix_t m = oracles::random_hollow_gaussian(20, rng);
        const scalar_t mine = spectral_norm(m);
        const scalar_t dense = oracles::dense_spectral_norm(m);
        const double rel = std::abs(mine - dense) / std::max<scalar_t>(1e-300, dense);
        worst_rel = std::max(worst_rel, rel);
        spectral_ok += rel <= 1e-8;
    }
    int inf1_ok = 0;
    for (int i = 0; i < 25; ++i) {
        const matrix_t m = oracles::random_hollow_symmetric(8, rng, {-1.0, 0.0, 1.0});
        inf1_ok += t_inf1_exact(m) == oracles::enumerate_inf1_full(m);
    }
    const bool pass = spectral_ok == 50 && inf1_ok == 25;
    report(7, "agreement with dense and enumeration oracles", pass,
           "spectral " + std::to_string(spectral_ok) + "/50 (worst rel err " + fmt(worst_rel, 12) +
               "), inf->1 exact " + std::to_string(inf1_ok) + "/25");
}

void criterion_8() {
    std::mt19937_64 rng(3030);
    int ok = 0;
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        const matrix_t wa = oracles::random_hollow_symmetric(30, rng, {0.0, 1.0});
        const matrix_t wb = oracles::random_hollow_symmetric(30, rng, {0.0, 1.0});
        const network_pair pair{make_network(wa), make_network(wb)};
        const double diff = std::abs(t22(pair) - spectral_norm(wb - wa));
        worst = std::max(worst, diff);
        ok += diff <= 1e-10;
    }
    report(8, "binary pairs reduce to the difference spectral norm", ok == 50,
           std::to_string(ok) + "/50 within 1e-10 (worst " + fmt(worst, 14) + ")");
}

void criterion_9() {
    std::mt19937_64 rng(606060);
    std::normal_distribution<scalar_t> normal(0.0, 1.0);
    int ok = 0;
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        matrix_t r(6, 4);
        for (index_t a = 0; a < 6; ++a)
            for (index_t b = 0; b < 4; ++b) r(a, b) = normal(rng);
        rectangular_network rect{r, {}, {}};
        for (int v = 0; v < 6; ++v) rect.row_labels.push_back("r" + std::to_string(v));
        for (int v = 0; v < 4; ++v) rect.col_labels.push_back("c" + std::to_string(v));
        const network net = embed_rectangular(rect);
        const scalar_t oracle = oracles::largest_singular_value(r);
        const double diff = std::abs(spectral_norm(net.weights) - oracle);
        worst = std::max(worst, diff);
        ok += diff <= 1e-10 * std::max<scalar_t>(1.0, oracle);
    }
    report(9, "rectangular embedding preserves the top singular value", ok == 20,
           std::to_string(ok) + "/20 within 1e-10 (worst " + fmt(worst, 14) + ")");
}

std::string run_and_capture(const std::string &command, const fs::path &stdout_path) {
    const std::string full = command + " > " + stdout_path.string() + " 2>&1";
    const int raw = std::system(full.c_str());
    if (!WIFEXITED(raw) || WEXITSTATUS(raw) != 0)
        throw error("command failed: " + command);
    std::ifstream in(stdout_path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void criterion_10() {
    const char *env = std::getenv("NETNORM_CLI");
    const std::string cli = env != nullptr ? env : "./netnorm";
    const fs::path dir = fs::temp_directory_path() / ("netnorm_acc_" + std::to_string(::getpid()));
    fs::create_directories(dir);

    const auto [f1, f2] = preset_models("sparse-er", 20);
    const network na = sample_network(f1, seed_stream(5));
    const network nb = sample_network(f2, seed_stream(6));
    const fs::path pa = dir / "a.csv";
    const fs::path pb = dir / "b.csv";
    {
        std::ofstream out(pa);
        save_matrix_csv(na, out);
    }
    {
        std::ofstream out(pb);
        save_matrix_csv(nb, out);
    }
    const std::string base = cli + " test --a " + pa.string() + " --b " + pb.string() +
                             " --R 199 --alpha 0.05 --seed 9 --stats t22,s_inf1";
    const std::string one_a = run_and_capture(base + " --threads 1", dir / "one_a.txt");
    const std::string one_b = run_and_capture(base + " --threads 1", dir / "one_b.txt");
    const std::string eight_a = run_and_capture(base + " --threads 8", dir / "eight_a.txt");
    const std::string eight_b = run_and_capture(base + " --threads 8", dir / "eight_b.txt");
    const bool repeat_ok = one_a == one_b && eight_a == eight_b;
    const bool thread_ok = one_a == eight_a;
    report(10, "command-line test output is byte-identical", repeat_ok && thread_ok,
           std::string("repeat runs equal: ") + (repeat_ok ? "yes" : "no") +
               ", 1 vs 8 threads equal: " + (thread_ok ? "yes" : "no"));
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> chosen;
    for (int i = 1; i < argc; ++i) chosen.insert(std::atoi(argv[i]));
    const auto wanted = [&](int n) { return chosen.empty() || chosen.count(n) > 0; };

    using criterion_fn = void (*)();
    const std::pair<int, criterion_fn> criteria[] = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7}, {8, criterion_8},
        {9, criterion_9}, {10, criterion_10},
    };
    for (const auto &[number, fn] : criteria) {
        if (!wanted(number)) continue;
        try {
            fn();
        } catch (const std::exception &e) {
            report(number, "criterion aborted", false, e.what());
        }
    }
    std::printf("acceptance: %d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
