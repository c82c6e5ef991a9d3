#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "durlab/csv.hpp"
#include "durlab/kv.hpp"

using namespace durlab;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const fs::path out = fs::temp_directory_path() / "durlab_cli_out.txt";
    const std::string cmd =
        std::string(DURLAB_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<fs::path> files_under(const fs::path& root) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file()) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("cli: unknown method and bad parameters exit with the documented codes") {
    CHECK(run_cli("estimate --method banana --input nope.csv").exit_code == 2);
    CHECK(run_cli("nonsense-subcommand").exit_code == 2);

    // rho_z outside (-1, 1) is a config error surfaced as validation
    const fs::path dir = fresh_dir("durlab_cli_badcfg");
    KvFile bad;
    bad.set("rho_z", 1.5);
    bad.set("rho_y", 0.4);
    bad.set("sigma_z", std::string("0.02,0,0"));
    bad.set("sigma_y", std::string("0,0.6,0"));
    bad.set("sigma_D", std::string("0.03,0,0.06"));
    bad.set("sigma_lambda", std::string("0,-0.8,0.4"));
    bad.set("Sigma", std::string("1,0,0;0,1,0;0,0,1"));
    bad.set("g_bar", 0.05);
    bad.set("lambda_bar", 0.4);
    bad.set("r_f", 0.03);
    bad.save((dir / "bad.kv").string());
    const RunResult r =
        run_cli("simulate --config " + (dir / "bad.kv").string() + " --out " + dir.string());
    CHECK(r.exit_code == 2);
    CHECK(r.stdout_text.find("rho_z") != std::string::npos);
}

TEST_CASE("cli: simulate writes panel and snapshots; strips inverts them") {
    const fs::path dir = fresh_dir("durlab_cli_sim");
    const RunResult sim =
        run_cli("simulate --T 120 --seed 5 --out " + (dir / "sim").string());
    REQUIRE(sim.exit_code == 0);

    fs::path run_dir;
    for (const auto& e : fs::directory_iterator(dir / "sim")) run_dir = e.path();
    REQUIRE(fs::exists(run_dir / "snapshots.csv"));
    REQUIRE(fs::exists(run_dir / "sim_panel.csv"));
    REQUIRE(fs::exists(run_dir / "strip_coefficients.csv"));
    CHECK(slurp(run_dir / "strip_coefficients.csv").rfind("n,A,B_1,B_2", 0) == 0);
    const auto snaps = load_snapshot_csv((run_dir / "snapshots.csv").string());
    CHECK(snaps.size() == 120);

    const RunResult strips = run_cli("strips --snapshots " + (run_dir / "snapshots.csv").string() +
                                     " --out " + (dir / "strips").string());
    REQUIRE(strips.exit_code == 0);
    fs::path strips_dir;
    for (const auto& e : fs::directory_iterator(dir / "strips")) strips_dir = e.path();
    const Panel valuation =
        load_panel_csv((strips_dir / "valuation.csv").string());
    const Panel sim_panel =
        load_panel_csv((run_dir / "sim_panel.csv").string());
    // dr from the file round trip matches the simulated dr to 1e-8
    const auto& dr_file = valuation.column("dr");
    const auto& dr_sim = sim_panel.column("dr");
    for (std::size_t t = 0; t < sim_panel.rows(); ++t)
        CHECK(std::abs(dr_file[t] - dr_sim[t]) < 1e-8 * std::abs(dr_sim[t]));
}

TEST_CASE("cli: strips skip policy logs one line per bad row") {
    const fs::path dir = fresh_dir("durlab_cli_skip");
    const RunResult sim = run_cli("simulate --T 40 --seed 6 --out " + (dir / "sim").string());
    REQUIRE(sim.exit_code == 0);
    fs::path run_dir;
    for (const auto& e : fs::directory_iterator(dir / "sim")) run_dir = e.path();

    // poison one row: futures far above the index make the implied strip negative
    auto snaps = load_snapshot_csv((run_dir / "snapshots.csv").string());
    for (auto& [m, v] : snaps[7].futures) v = snaps[7].index_level * 2.0;
    write_snapshot_csv((run_dir / "poisoned.csv").string(), snaps);

    const RunResult fail = run_cli("strips --snapshots " + (run_dir / "poisoned.csv").string() +
                                   " --out " + (dir / "f").string());
    CHECK(fail.exit_code == 3);

    const RunResult skip = run_cli("strips --skip-bad --snapshots " +
                                   (run_dir / "poisoned.csv").string() + " --out " +
                                   (dir / "s").string());
    REQUIRE(skip.exit_code == 0);
    fs::path skip_dir;
    for (const auto& e : fs::directory_iterator(dir / "s")) skip_dir = e.path();
    const Panel valuation =
        load_panel_csv((skip_dir / "valuation.csv").string());
    CHECK(valuation.rows() == snaps.size() - 1);
    CHECK(fs::exists(skip_dir / "skipped.log"));

    // missing Z_1 column is a schema error naming the column
    std::ofstream broken(run_dir / "broken.csv", std::ios::binary);
    broken << "date,index,dividend_ttm,F_1\n2000-01-31,100,2,101\n";
    broken.close();
    const RunResult schema = run_cli("strips --snapshots " + (run_dir / "broken.csv").string() +
                                     " --out " + (dir / "b").string());
    CHECK(schema.exit_code == 3);
    CHECK(schema.stdout_text.find("Z_") != std::string::npos);
}

TEST_CASE("cli: forecast report carries the full diagnostic set") {
    const fs::path dir = fresh_dir("durlab_cli_fc");
    REQUIRE(run_cli("demo --seed 11 --out " + (dir / "demo").string()).exit_code == 0);
    fs::path demo_dir;
    for (const auto& e : fs::directory_iterator(dir / "demo")) demo_dir = e.path();

    const KvFile report = KvFile::load((demo_dir / "forecast_report.kv").string());
    for (const char* key : {"beta_dr", "t_nw_dr", "t_hodrick_dr", "beta_stambaugh", "r2",
                            "r2_adjusted", "r2_oos", "enc_stat", "p_enc", "cw_stat", "p_cw",
                            "n_obs"})
        CHECK(report.has(key));
    CHECK(report.get_double("beta_dr") < 0.0);

    // scan mode over pairs of ratio columns
    const RunResult scan = run_cli(
        "forecast --panel " + (demo_dir / "valuation.csv").string() +
        " --target pd --predictors dr,s05,s1plus --horizon 1 --scan --out " +
        (dir / "scan").string());
    REQUIRE(scan.exit_code == 0);
    fs::path scan_dir;
    for (const auto& e : fs::directory_iterator(dir / "scan")) scan_dir = e.path();
    const std::string scan_csv = slurp(scan_dir / "scan.csv");
    CHECK(scan_csv.find("dr+s05") != std::string::npos);

    // bootstrap determinism under a fixed seed
    const std::string boot_args = "forecast --panel " + (demo_dir / "valuation.csv").string() +
                                  " --target pd --predictors dr --horizon 1 --bootstrap 300 "
                                  "--seed 9 --out ";
    REQUIRE(run_cli(boot_args + (dir / "b1").string()).exit_code == 0);
    REQUIRE(run_cli(boot_args + (dir / "b2").string()).exit_code == 0);
    fs::path b1, b2;
    for (const auto& e : fs::directory_iterator(dir / "b1")) b1 = e.path();
    for (const auto& e : fs::directory_iterator(dir / "b2")) b2 = e.path();
    CHECK(slurp(b1 / "bootstrap_ci.kv") == slurp(b2 / "bootstrap_ci.kv"));
}

TEST_CASE("cli: estimate emits the full fit report set") {
    const fs::path dir = fresh_dir("durlab_cli_est");
    REQUIRE(run_cli("demo --seed 12 --out " + (dir / "demo").string()).exit_code == 0);
    fs::path demo_dir;
    for (const auto& e : fs::directory_iterator(dir / "demo")) demo_dir = e.path();

    const KvFile kalman = KvFile::load((demo_dir / "kalman_fit.kv").string());
    for (const char* key : {"rho_z", "g", "sigma_d", "sigma_z", "loglik", "aic", "bic"})
        CHECK(kalman.has(key));
    const std::string table = slurp(demo_dir / "growth_persistence_table.csv");
    for (const char* row : {"Unrestricted", "Restricted", "MA(1)", "AR(1)"})
        CHECK(table.find(row) != std::string::npos);
    CHECK(slurp(demo_dir / "spectrum_dr.csv").rfind("frequency,cycle_periods,density", 0) == 0);
    CHECK(slurp(demo_dir / "cross_spectrum_dr_pd.csv")
              .rfind("frequency,cycle_periods,co,quad", 0) == 0);
    CHECK(slurp(demo_dir / "pca_ratios.csv").rfind("component,ratio", 0) == 0);

    const RunResult sys = run_cli("estimate --method system-Y1Y3 --input " +
                                  (demo_dir / "analyst_panel.csv").string() + " --out " +
                                  (dir / "sys").string());
    REQUIRE(sys.exit_code == 0);

    const RunResult rolling = run_cli("estimate --method rolling --window 156 --input " +
                                      (demo_dir / "analyst_panel.csv").string() + " --out " +
                                      (dir / "roll").string());
    REQUIRE(rolling.exit_code == 0);
    fs::path roll_dir;
    for (const auto& e : fs::directory_iterator(dir / "roll")) roll_dir = e.path();
    CHECK(fs::exists(roll_dir / "rolling_rhoz.csv"));
}

TEST_CASE("cli: backtest formula path prints the headline 0.58") {
    const fs::path dir = fresh_dir("durlab_cli_bt");
    const RunResult r =
        run_cli("backtest --s0 0.37 --r2 0.146 --out " + (dir / "f").string());
    REQUIRE(r.exit_code == 0);
    CHECK(r.stdout_text.find("0.58") != std::string::npos);

    // empty forecast file is a validation failure
    std::ofstream empty(dir / "empty.csv", std::ios::binary);
    empty << "date,value\n";
    empty.close();
    std::ofstream real(dir / "real.csv", std::ios::binary);
    real << "date,value\n2000-01-31,0.01\n2000-02-29,0.02\n";
    real.close();
    const RunResult bad = run_cli("backtest --forecasts " + (dir / "empty.csv").string() +
                                  " --realized " + (dir / "real.csv").string() + " --out " +
                                  (dir / "e").string());
    CHECK(bad.exit_code == 3);
}

TEST_CASE("cli: demo trees are byte-identical under one seed") {
    const fs::path a = fresh_dir("durlab_demo_a");
    const fs::path b = fresh_dir("durlab_demo_b");
    REQUIRE(run_cli("demo --seed 7 --out " + a.string()).exit_code == 0);
    REQUIRE(run_cli("demo --seed 7 --out " + b.string()).exit_code == 0);

    const auto fa = files_under(a);
    const auto fb = files_under(b);
    REQUIRE(fa.size() == fb.size());
    REQUIRE(!fa.empty());
    for (std::size_t i = 0; i < fa.size(); ++i) {
        CHECK(fa[i].lexically_relative(a) == fb[i].lexically_relative(b));
        CHECK(slurp(fa[i]) == slurp(fb[i]));
    }
}

TEST_CASE("cli: DURLAB_SEED is the seed fallback") {
    const fs::path a = fresh_dir("durlab_env_a");
    const fs::path b = fresh_dir("durlab_env_b");
    const std::string env_cmd = "DURLAB_SEED=31 " + std::string(DURLAB_CLI_PATH) +
                                " simulate --T 24 --out " + a.string() + " >/dev/null 2>&1";
    REQUIRE(WEXITSTATUS(std::system(env_cmd.c_str())) == 0);
    REQUIRE(run_cli("simulate --T 24 --seed 31 --out " + b.string()).exit_code == 0);
    const auto fa = files_under(a);
    const auto fb = files_under(b);
    REQUIRE(fa.size() == fb.size());
    for (std::size_t i = 0; i < fa.size(); ++i) CHECK(slurp(fa[i]) == slurp(fb[i]));
}
