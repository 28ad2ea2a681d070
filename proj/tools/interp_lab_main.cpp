/*
   Copyright 2026 the interp-lab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// interp-lab: desk-scale interpolation-norm experiments.
//
//   interp-lab norm            --config c.json
//   interp-lab stafney         --config c.json --nmax 30 --out sweep.csv
//   interp-lab annulus-verify  --config c.json --nmax 20 --out cmp.csv
//   interp-lab operators-check --trials 1000 --out ops.json
//
// Exit codes: 0 success, 2 config error, 3 numerical failure in >= 1 cell.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "interp/experiment.hpp"

namespace lab = interp::experiment;

namespace {

struct CommonOpts {
    std::string configPath;
    std::string outPath;
    std::string recordPath;
    int jobs = 0;  // 0: take INTERP_LAB_JOBS or 1
    long long seed = -1;
    int nmax = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool configRequired) {
    auto* copt = cmd->add_option("--config", o.configPath, "experiment config JSON");
    if (configRequired) copt->required();
    cmd->add_option("--out", o.outPath, "output CSV/JSON path (overrides config)");
    cmd->add_option("--record", o.recordPath, "full JSON record path (overrides config)");
    cmd->add_option("--jobs", o.jobs, "worker threads (fallback: INTERP_LAB_JOBS, then 1)");
    cmd->add_option("--seed", o.seed, "solver seed (overrides config)");
    cmd->add_option("--nmax", o.nmax, "window sweep bound (overrides config)");
}

int run_mode(lab::Mode mode, const CommonOpts& o, int trials) {
    lab::ExperimentConfig cfg;
    if (!o.configPath.empty()) {
        cfg = lab::load_config(o.configPath);
    } else {
        // operators-check runs without a config file
        cfg.couple = interp::Couple(1, interp::NormSpec::lp(2.0), interp::NormSpec::lp(2.0));
        cfg.raw = lab::json{{"mode", "operators-check"}, {"trials", trials}};
        cfg.thetas = {0.5};
    }
    if (!o.outPath.empty()) cfg.outPath = o.outPath;
    if (!o.recordPath.empty()) cfg.recordPath = o.recordPath;
    if (o.seed >= 0) cfg.solver.seed = static_cast<std::uint64_t>(o.seed);
    if (o.nmax >= 0) cfg.nmax = o.nmax;
    if (trials > 0) cfg.trials = trials;

    lab::RunRecord rec = lab::run(cfg, mode, o.jobs);
    auto written = lab::emit_report(rec, cfg);

    if (mode == lab::Mode::OperatorsCheck) {
        std::cout << rec.opsSummary.dump(2) << "\n";
    } else {
        for (const auto& cell : rec.cells) {
            if (cell.failed) {
                std::cerr << "cell theta=" << cell.theta << " p=" << cell.p
                          << " failed: " << cell.error << "\n";
            }
        }
        if (mode == lab::Mode::Norm && !rec.cells.empty() && !rec.cells.front().failed) {
            std::cout << "value = " << lab::fmt_double(rec.cells.front().report.value)
                      << "  (relGap " << lab::fmt_double(rec.cells.front().report.relGap)
                      << ", converged " << (rec.cells.front().report.converged ? "yes" : "no")
                      << ")\n";
        }
    }
    for (const auto& p : written) std::cout << "wrote " << p << "\n";
    return rec.anyFailure ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"interp-lab: discrete interpolation-space norm laboratory"};
    app.set_version_flag("--version", std::string(lab::kToolVersion));
    app.require_subcommand(1);

    CommonOpts normOpts, stafneyOpts, annulusOpts, opsOpts;
    int trials = 1000;

    auto* cmdNorm = app.add_subcommand("norm", "single windowed interpolation-norm solve");
    add_common(cmdNorm, normOpts, true);

    auto* cmdStafney =
        app.add_subcommand("stafney", "windowed-representation convergence sweep over N");
    add_common(cmdStafney, stafneyOpts, true);

    auto* cmdAnnulus = app.add_subcommand(
        "annulus-verify", "compare the FC-method and annulus boundary-sup values per window");
    add_common(cmdAnnulus, annulusOpts, true);

    auto* cmdOps =
        app.add_subcommand("operators-check", "randomized audits of the coefficient operators");
    add_common(cmdOps, opsOpts, false);
    cmdOps->add_option("--trials", trials, "number of random trials")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmdNorm->parsed()) return run_mode(lab::Mode::Norm, normOpts, -1);
        if (cmdStafney->parsed()) return run_mode(lab::Mode::Stafney, stafneyOpts, -1);
        if (cmdAnnulus->parsed()) return run_mode(lab::Mode::AnnulusVerify, annulusOpts, -1);
        if (cmdOps->parsed()) return run_mode(lab::Mode::OperatorsCheck, opsOpts, trials);
    } catch (const interp::config_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const interp::input_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
