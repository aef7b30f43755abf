// Copyright 2026 The uqclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "uqclone/harness.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <gtest/gtest.h>

namespace uqclone {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(SweepConfig, DefaultGrid) {
    const SweepConfig cfg;
    const auto g = cfg.theta_grid();
    ASSERT_EQ(g.size(), 19u);
    EXPECT_DOUBLE_EQ(g.front(), -kPi / 2.0 + kPi / 36.0);
    EXPECT_DOUBLE_EQ(g.back(), kPi / 2.0);
    EXPECT_EQ(cfg.delta_list.size(), 4u);
    EXPECT_NO_THROW(cfg.validate());
}

TEST(SweepConfig, Validation) {
    auto bad = [](auto mutate) {
        SweepConfig c;
        mutate(c);
        return c;
    };
    EXPECT_THROW(bad([](SweepConfig &c) { c.theta_steps = 0; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.theta_start = -kPi / 2.0; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.theta_end = 2.0; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.theta_start = 1.0, c.theta_end = 0.5; }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.delta_list.clear(); }).validate(), ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.mode = PipelineMode::MonteCarlo, c.trials = 0; }).validate(),
                 ConfigError);
    EXPECT_THROW(bad([](SweepConfig &c) { c.jitter_deg = -0.1; }).validate(), ConfigError);
    EXPECT_NO_THROW(bad([](SweepConfig &c) { c.theta_steps = 1, c.theta_start = c.theta_end = 0.0; }).validate());
}

TEST(RunSweep, ExactDefaults) {
    const SweepResult r = run_sweep(SweepConfig{});
    ASSERT_EQ(r.rows.size(), 19u * 4u * 2u);
    for (const auto &row : r.rows) EXPECT_NEAR(row.fidelity, 5.0 / 6.0, 1e-9);
    EXPECT_TRUE(r.summary.exact_ok);
    EXPECT_LE(r.summary.max_abs_deviation, 1e-9);
    EXPECT_TRUE(std::is_sorted(r.rows.begin(), r.rows.end(), [](const SweepRow &a, const SweepRow &b) {
        return std::tie(a.delta, a.theta, a.replica) < std::tie(b.delta, b.theta, b.replica);
    }));
}

TEST(RunSweep, CsvFormat) {
    SweepConfig cfg;
    cfg.theta_steps = 1;
    cfg.theta_start = cfg.theta_end = 0.0;
    cfg.delta_list = {0.0};
    const std::string csv = to_csv(run_sweep(cfg).rows);
    EXPECT_EQ(csv,
              "mode,delta_rad,theta_rad,replica,fidelity,stderr,seed\n"
              "exact,0.000000000,0.000000000,1,0.833333333,0.000000000,0\n"
              "exact,0.000000000,0.000000000,2,0.833333333,0.000000000,0\n");
}

TEST(RunSweep, MonteCarloIsReproducible) {
    SweepConfig cfg;
    cfg.mode = PipelineMode::MonteCarlo;
    cfg.theta_steps = 3;
    cfg.theta_start = -0.5;
    cfg.theta_end = 0.5;
    cfg.delta_list = {0.0, kPi / 2.0};
    cfg.bootstrap_resamples = 10;
    const std::string a = to_csv(run_sweep(cfg).rows);
    const std::string b = to_csv(run_sweep(cfg).rows);
    EXPECT_EQ(a, b);
    cfg.seed = 43;
    EXPECT_NE(a, to_csv(run_sweep(cfg).rows));
    for (const auto &row : run_sweep(cfg).rows) {
        EXPECT_GT(row.stderr_, 0.0);
        EXPECT_NE(row.seed, 0u);
    }
}

TEST(RunSweep, PerturbedSummaryComparesToReportedError) {
    SweepConfig cfg;
    cfg.mode = PipelineMode::Perturbed;
    cfg.theta_steps = 2;
    cfg.theta_start = 0.0;
    cfg.theta_end = 1.0;
    cfg.delta_list = {0.0};
    cfg.perturbed_samples = 20;
    const SweepResult r = run_sweep(cfg);
    EXPECT_EQ(r.rows.size(), 4u);
    EXPECT_GT(r.summary.mean_sample_error, 0.0);
    EXPECT_LE(r.summary.mean_sample_error, kReportedFidelityError);
    EXPECT_NEAR(r.summary.bound, 0.002 + 1.5 * 0.1 * kPi / 180.0, 1e-15);
    EXPECT_NE(to_text(r.summary).find("reported error 0.005"), std::string::npos);
}

TEST(Verify, PristineBuildPasses) {
    for (const CheckResult &c : run_verify()) EXPECT_TRUE(c.pass) << to_text(c);
}

TEST(Verify, MisalignedPlateFailsOpticsChecks) {
    VerifyOptions opt;
    opt.hwp_fault_deg = 0.1;
    for (const CheckResult &c : run_verify(opt)) {
        if (c.name == "optics_equivalence") {
            EXPECT_FALSE(c.pass);
            EXPECT_GT(c.deviation, 1e-4);
        }
    }
}

TEST(Verify, TightSolverToleranceStillPasses) {
    VerifyOptions opt;
    opt.solver.tolerance = 1e-14;
    const CheckResult c = run_verify(opt).front();
    EXPECT_EQ(c.name, "prep_solver");
    EXPECT_TRUE(c.pass) << to_text(c);
}

TEST(Verify, LineFormat) {
    const CheckResult c{"demo", true, 1.5e-13, 1e-12, "points=3"};
    EXPECT_EQ(to_text(c), "PASS demo deviation=1.500e-13 tolerance=1e-12 points=3");
}

// Command-line behaviour: exit codes and the config file.
class Cli : public ::testing::Test {
   protected:
    static int run(const std::string &args) {
        const std::string cmd = std::string(UQCLONE_CLI) + " " + args + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const std::string &path) {
        std::ifstream f(path, std::ios::binary);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    static std::string tmp(const std::string &name) {
        return (std::filesystem::temp_directory_path() / ("uqclone_cli_" + name)).string();
    }
};

TEST_F(Cli, ExitCodes) {
    EXPECT_EQ(run("verify"), kExitOk);
    EXPECT_EQ(run("verify --fault-hwp-deg 0.1"), kExitVerification);
    EXPECT_EQ(run("sweep --mode bogus"), kExitUsage);
    EXPECT_EQ(run("sweep --theta-steps 0"), kExitUsage);
    EXPECT_EQ(run("sweep --unknown-flag"), kExitUsage);
    EXPECT_EQ(run("sweep --out /nonexistent-dir/x.csv"), kExitIo);
    EXPECT_EQ(run("sweep --config /nonexistent-dir/c.ini"), kExitUsage);
}

TEST_F(Cli, ConfigFileAndOverride) {
    const std::string cfg = tmp("cfg.ini");
    std::ofstream(cfg) << "mode = montecarlo\ntrials = 2000\nseed = 5\ntheta-steps = 2\nbootstrap = 5\n";
    const std::string a = tmp("a.csv"), b = tmp("b.csv"), c = tmp("c.csv");
    ASSERT_EQ(run("sweep --config " + cfg + " --out " + a), kExitOk);
    ASSERT_EQ(run("sweep --config " + cfg + " --out " + b), kExitOk);
    ASSERT_EQ(run("sweep --config " + cfg + " --seed 6 --out " + c), kExitOk);
    const std::string ta = slurp(a);
    EXPECT_EQ(ta, slurp(b));
    EXPECT_NE(ta, slurp(c));
    EXPECT_EQ(ta.rfind("mode,", 0), 0u);
    EXPECT_NE(ta.find("\nmontecarlo,"), std::string::npos);
    std::ofstream(cfg) << "no-such-key = 1\n";
    EXPECT_EQ(run("sweep --config " + cfg), kExitUsage);
}

TEST_F(Cli, TomoWritesCountsRecord) {
    const std::string counts = tmp("counts.txt"), out = tmp("tomo.txt");
    ASSERT_EQ(run("tomo --mode montecarlo --theta 0.4 --delta 1.0 --trials 5000 --counts-out " + counts + " --out " + out),
              kExitOk);
    EXPECT_NO_THROW(parse_counts_record(slurp(counts)));
    EXPECT_NE(slurp(out).find("F1 = "), std::string::npos);
    EXPECT_EQ(run("tomo --mode perturbed"), kExitUsage);
}

}  // namespace
}  // namespace uqclone
