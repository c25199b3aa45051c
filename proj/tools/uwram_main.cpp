// Command-line front end: walkthrough tables (demo), differential fuzzing
// against the word-RAM baseline and a flat referee (fuzz), and
// instruction-count measurement (bench). Exit code 0 on success, 1 when a
// checked property fails or an I/O or runtime error occurs, 2 on usage
// errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uwram/harness.hpp"

namespace {

using uwram::MachineMode;

MachineMode parse_mode(const std::string& name) {
  if (name == "restricted") return MachineMode::Restricted;
  if (name == "mult") return MachineMode::Multiplication;
  throw CLI::ValidationError("--mode", "must be 'restricted' or 'mult'");
}

int run_fuzz_modes(const uwram::harness::FuzzConfig& base,
                   const std::vector<MachineMode>& modes) {
  for (MachineMode mode : modes) {
    uwram::harness::FuzzConfig cfg = base;
    cfg.mode = mode;
    uwram::harness::FuzzReport rep = uwram::harness::run_fuzz(cfg);
    if (!rep.ok) {
      std::cout << rep.diagnostic << '\n';
      return 1;
    }
    std::cout << "fuzz " << uwram::to_string(mode) << ": "
              << rep.ops_executed << " ops, no divergence (seed=" << cfg.seed
              << " n=" << cfg.n << " w=" << cfg.w << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ultraword partial sums workbench"};
  app.require_subcommand(1);

  // demo
  std::size_t demo_i = 13, demo_n = 16;
  std::string demo_mode = "restricted";
  unsigned demo_w = 64;
  CLI::App* demo = app.add_subcommand(
      "demo", "print the index-chain pipeline tables for one i");
  demo->add_option("--i", demo_i, "query index")->capture_default_str();
  demo->add_option("--n", demo_n, "element count")->capture_default_str();
  demo->add_option("--mode", demo_mode, "restricted|mult")
      ->capture_default_str();
  demo->add_option("--w", demo_w, "word width in bits")
      ->capture_default_str();

  // fuzz
  uwram::harness::FuzzConfig fz;
  std::string fuzz_mode = "both";
  CLI::App* fuzz = app.add_subcommand(
      "fuzz", "random op interleavings vs. baseline and flat referee");
  fuzz->add_option("--n", fz.n, "element count")->capture_default_str();
  fuzz->add_option("--ops", fz.ops, "operations to run")
      ->capture_default_str();
  fuzz->add_option("--seed", fz.seed, "rng seed")->capture_default_str();
  fuzz->add_option("--mode", fuzz_mode, "restricted|mult|both")
      ->capture_default_str();
  fuzz->add_option("--w", fz.w, "word width in bits")->capture_default_str();

  // bench
  std::vector<std::size_t> sizes{16, 256, 4096};
  std::string bench_mode = "restricted";
  unsigned bench_w = 64;
  std::uint64_t bench_seed = 1;
  std::string out_path;
  bool markdown = false;
  CLI::App* bench = app.add_subcommand(
      "bench", "per-op instruction counts over a deterministic index sample");
  bench->add_option("--sizes", sizes, "comma-separated element counts")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--mode", bench_mode, "restricted|mult")
      ->capture_default_str();
  bench->add_option("--w", bench_w, "word width in bits")
      ->capture_default_str();
  bench->add_option("--seed", bench_seed, "rng seed")->capture_default_str();
  bench->add_option("--out", out_path, "write CSV here instead of stdout");
  bench->add_flag("--markdown", markdown, "render an aligned table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (demo->parsed()) {
      uwram::harness::render_demo(std::cout, demo_i, demo_n,
                                  parse_mode(demo_mode), demo_w);
      return 0;
    }

    if (fuzz->parsed()) {
      std::vector<MachineMode> modes;
      if (fuzz_mode == "both")
        modes = {MachineMode::Restricted, MachineMode::Multiplication};
      else
        modes = {parse_mode(fuzz_mode)};
      return run_fuzz_modes(fz, modes);
    }

    // bench
    std::vector<uwram::harness::BenchRecord> records =
        uwram::harness::run_bench(parse_mode(bench_mode), bench_w, sizes,
                                  bench_seed);
    if (markdown) {
      uwram::harness::write_markdown(std::cout, records);
    }
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "I/O error: cannot write " << out_path << '\n';
        return 1;
      }
      uwram::harness::write_csv(out, records);
      if (!out.flush()) {
        std::cerr << "I/O error: short write to " << out_path << '\n';
        return 1;
      }
    } else if (!markdown) {
      uwram::harness::write_csv(std::cout, records);
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
