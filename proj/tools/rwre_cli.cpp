#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rwre/config.hpp"
#include "rwre/runner.hpp"

namespace {

void usage(std::ostream& os) {
  os << "usage: rwre --config PATH [options]\n"
        "\n"
        "options:\n"
        "  --config PATH   experiment description (key = value lines)\n"
        "  --seed U64      overrides the config seed\n"
        "  --trials N      overrides the config trial count\n"
        "  --workers N     worker threads (default 1; output is worker-independent)\n"
        "  --out DIR       write summary.txt (and optional streams) under DIR\n"
        "  --per-trial     emit one record per trial to DIR/trials.txt\n"
        "  --emit-dot      write the constructed graph to DIR/graph.dot\n"
        "\n"
        "The environment variable RWRE_SEED supplies the seed when neither\n"
        "--seed nor the config sets one.\n"
        "\n"
        "exit codes: 0 success, 2 validation error, 3 property-check failure\n";
}

std::optional<std::uint64_t> parse_u64_arg(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::string config_path;
  std::optional<std::uint64_t> seed_flag;
  std::optional<std::uint64_t> trials_flag;
  std::string out_flag;
  rwre::RunOptions opts;

  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    auto next = [&]() -> std::string {
      if (i + 1 >= argc) {
        std::cerr << "error: " << arg << " needs a value\n";
        std::exit(2);
      }
      return argv[++i];
    };
    if (arg == "--help" || arg == "-h") {
      usage(std::cout);
      return 0;
    } else if (arg == "--config") {
      config_path = next();
    } else if (arg == "--seed") {
      seed_flag = parse_u64_arg(next());
      if (!seed_flag) {
        std::cerr << "error: bad --seed value\n";
        return 2;
      }
    } else if (arg == "--trials") {
      trials_flag = parse_u64_arg(next());
      if (!trials_flag || *trials_flag < 1) {
        std::cerr << "error: bad --trials value\n";
        return 2;
      }
    } else if (arg == "--workers") {
      auto w = parse_u64_arg(next());
      if (!w || *w < 1 || *w > 1024) {
        std::cerr << "error: bad --workers value\n";
        return 2;
      }
      opts.workers = static_cast<int>(*w);
    } else if (arg == "--out") {
      out_flag = next();
    } else if (arg == "--per-trial") {
      opts.per_trial = true;
    } else if (arg == "--emit-dot") {
      opts.emit_dot = true;
    } else {
      std::cerr << "error: unknown flag '" << arg << "'\n";
      usage(std::cerr);
      return 2;
    }
  }

  if (config_path.empty()) {
    std::cerr << "error: --config is required\n";
    usage(std::cerr);
    return 2;
  }

  try {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read " << config_path << "\n";
      return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    rwre::ExperimentConfig cfg = rwre::parse_config(buf.str(), config_path);
    if (trials_flag) cfg.trials = *trials_flag;
    if (!out_flag.empty()) cfg.out_dir = out_flag;

    // Seed precedence: flag, config file, RWRE_SEED, zero.
    std::uint64_t seed = 0;
    if (seed_flag) {
      seed = *seed_flag;
    } else if (cfg.seed) {
      seed = *cfg.seed;
    } else if (const char* env = std::getenv("RWRE_SEED")) {
      auto v = parse_u64_arg(env);
      if (!v) {
        std::cerr << "error: bad RWRE_SEED value\n";
        return 2;
      }
      seed = *v;
    }

    rwre::RunOutput out = rwre::run_experiment(cfg, seed, opts);
    std::cout << out.summary << "\n";

    if (!cfg.out_dir.empty()) {
      std::filesystem::create_directories(cfg.out_dir);
      const std::filesystem::path dir(cfg.out_dir);
      {
        std::ofstream f(dir / "summary.txt");
        f << out.summary << "\n";
      }
      if (opts.per_trial) {
        std::ofstream f(dir / "trials.txt");
        for (const std::string& line : out.trial_lines) f << line << "\n";
      }
      if (opts.emit_dot && !out.dot.empty()) {
        std::ofstream f(dir / "graph.dot");
        f << out.dot;
      }
    }
    return out.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
