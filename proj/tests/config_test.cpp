#include "rwre/config.hpp"

#include <stdexcept>
#include <string>

#include "rwre/runner.hpp"
#include "support.hpp"

using namespace rwre;

namespace {

const char* kDriftConfig =
    "# annealed drift of the three-jump law\n"
    "experiment = drift\n"
    "jumps = (0,1):2 (1,-1):2 (-2,0):1\n"
    "trials = 200\n"
    "seed = 9\n";

void test_parse_basic() {
  ExperimentConfig cfg = parse_config(kDriftConfig, "drift.cfg");
  REQUIRE(cfg.experiment == "drift");
  REQUIRE(cfg.jumps.size() == 3);
  REQUIRE(cfg.jumps[0].y == (Site{0, 1}));
  REQUIRE(cfg.jumps[2].alpha == Rational(1));
  REQUIRE(cfg.trials == 200);
  REQUIRE(cfg.seed && *cfg.seed == 9);
  pass("basic config parse");
}

void test_parse_rational_weights() {
  ExperimentConfig cfg = parse_config(
      "experiment = drift\njumps = (1,0):2/3 (-1,0):1/3\n", "w.cfg");
  REQUIRE(cfg.jumps[0].alpha == Rational(2, 3));
  REQUIRE(cfg.jumps[1].alpha == Rational(1, 3));
  pass("rational weights survive the file boundary");
}

void test_parse_errors_are_anchored() {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_config(text, "bad.cfg");
    } catch (const std::invalid_argument& e) {
      REQUIRE_MSG(std::string(e.what()).find(needle) != std::string::npos,
                  "missing '" << needle << "' in: " << e.what());
      return;
    }
    REQUIRE_MSG(false, "expected parse failure for: " << text);
  };
  expect_error("experiment = drift\njumps = (0,1):1\nbogus = 3\n", "bad.cfg:3");
  expect_error("experiment = drift\njumps = (0,1):1\nbogus = 3\n", "unknown key");
  expect_error("experiment = warp\n", "unknown experiment");
  expect_error("experiment = drift\njumps = (0,1)\n", "bad jump token");
  expect_error("experiment = drift\njumps = (0,1):1\ntrials = 0\n", "out of range");
  expect_error("experiment = drift\njumps = (0,1):1\ntrials = x\n", "bad unsigned integer");
  expect_error("jumps = (0,1):1\n", "missing required key 'experiment'");
  expect_error("experiment = drift\n", "missing required key 'jumps'");
  expect_error("experiment = drift\nexperiment = drift\njumps = (0,1):1\n", "duplicate key");
  pass("parse errors carry file and line");
}

void test_digest_tracks_content() {
  ExperimentConfig a = parse_config(kDriftConfig, "a.cfg");
  ExperimentConfig b = a;
  REQUIRE(config_digest(a, 9) == config_digest(b, 9));
  REQUIRE(config_digest(a, 9) != config_digest(a, 10));
  b.trials = 201;
  REQUIRE(config_digest(a, 9) != config_digest(b, 9));
  pass("config digest tracks effective content");
}

void test_run_drift_summary() {
  ExperimentConfig cfg = parse_config(kDriftConfig, "drift.cfg");
  RunOutput out = run_experiment(cfg, 9, RunOptions{});
  REQUIRE(out.exit_code == 0);
  REQUIRE(out.summary.find("experiment=drift") != std::string::npos);
  REQUIRE(out.summary.find("drift=\"[0/1, 0/1]\"") != std::string::npos);
  REQUIRE(out.summary.find("seed=9") != std::string::npos);
  REQUIRE(out.summary.find("version=") != std::string::npos);
  REQUIRE(out.summary.find("digest=") != std::string::npos);

  // Same seed, same bytes; different seed, different digest field.
  RunOutput again = run_experiment(cfg, 9, RunOptions{});
  REQUIRE(again.summary == out.summary);
  pass("drift experiment summary");
}

void test_run_c3_check() {
  ExperimentConfig cfg = parse_config(
      "experiment = c3-check\njumps = (0,1):1 (1,-1):1 (-2,0):1\nbox_radius = 6\n", "c3.cfg");
  RunOutput out = run_experiment(cfg, 0, RunOptions{});
  REQUIRE(out.exit_code == 0);
  REQUIRE(out.summary.find("result=proven") != std::string::npos);

  ExperimentConfig even = parse_config(
      "experiment = c3-check\njumps = (2,0):1 (-2,0):1\nbox_radius = 6\n", "c3b.cfg");
  RunOutput out2 = run_experiment(even, 0, RunOptions{});
  REQUIRE(out2.exit_code == 3);
  REQUIRE(out2.summary.find("result=unknown") != std::string::npos);
  pass("c3-check experiment and exit codes");
}

void test_run_cylinder_audit() {
  ExperimentConfig cfg = parse_config(
      "experiment = cylinder-audit\njumps = (0,1):2 (1,-1):2 (-2,0):1\nu = 2,1\nN = 4\nL = 10\n",
      "audit.cfg");
  RunOutput out = run_experiment(cfg, 0, RunOptions{});
  REQUIRE(out.exit_code == 0);
  REQUIRE(out.summary.find("divergence_max=0/1") != std::string::npos);
  REQUIRE(out.summary.find("class_sums_equal=true") != std::string::npos);
  REQUIRE(out.summary.find("special_weight=16/1") != std::string::npos);
  REQUIRE(out.summary.find("audit=pass") != std::string::npos);

  ExperimentConfig drifted = parse_config(
      "experiment = cylinder-audit\njumps = (0,1):1 (1,-1):1 (-2,0):1\nu = 2,1\nN = 4\nL = 10\n",
      "audit2.cfg");
  RunOutput out2 = run_experiment(drifted, 0, RunOptions{});
  REQUIRE(out2.exit_code == 0);  // a drifted law is a valid audit subject
  REQUIRE(out2.summary.find("class_sums_equal=false") != std::string::npos);
  REQUIRE(out2.summary.find("skew_2c_minus_2a=-8/1") != std::string::npos);
  REQUIRE(out2.summary.find("sign_match=true") != std::string::npos);
  pass("cylinder-audit experiment");
}

void test_run_validation_errors() {
  ExperimentConfig cfg = parse_config(
      "experiment = loop-reversal\njumps = (0,1):2 (1,-1):2 (-2,0):1\n", "lr.cfg");
  REQUIRE_THROWS(run_experiment(cfg, 0, RunOptions{}), std::invalid_argument);  // no axis u

  ExperimentConfig t = parse_config(
      "experiment = transience\njumps = (0,1):1 (1,-1):1 (-2,0):1\n", "t.cfg");
  REQUIRE_THROWS(run_experiment(t, 0, RunOptions{}), std::invalid_argument);  // no direction
  pass("runner validation errors");
}

void test_per_trial_determinism_across_workers() {
  ExperimentConfig cfg = parse_config(
      "experiment = loop-reversal\njumps = (0,1):2 (1,-1):2 (-2,0):1\nu = 2,1\nN = 4\nL = 6\n"
      "trials = 400\nhorizon = 100000\n",
      "lr.cfg");
  RunOptions one;
  one.workers = 1;
  one.per_trial = true;
  RunOptions four;
  four.workers = 4;
  four.per_trial = true;
  RunOutput a = run_experiment(cfg, 31, one);
  RunOutput b = run_experiment(cfg, 31, four);
  REQUIRE(a.summary == b.summary);
  REQUIRE(a.trial_lines == b.trial_lines);
  REQUIRE(a.trial_lines.size() == 400);
  pass("per-trial records are worker-count independent");
}

}  // namespace

int main() {
  test_parse_basic();
  test_parse_rational_weights();
  test_parse_errors_are_anchored();
  test_digest_tracks_content();
  test_run_drift_summary();
  test_run_c3_check();
  test_run_cylinder_audit();
  test_run_validation_errors();
  test_per_trial_determinism_across_workers();
  return 0;
}
