// Command line front end: runs benchmark cases, produces the timing tables
// and merges interface traces for side-by-side comparison.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "slbm/errors.hpp"
#include "slbm/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitDiagnostics = 4;
constexpr int kExitIo = 5;

slbm::CaseSpec load_case(const std::string& source, const std::vector<std::string>& overrides) {
  slbm::CaseSpec spec;
  if (slbm::is_preset(source)) {
    spec = slbm::preset(source);
  } else {
    std::ifstream f(source);
    if (!f) throw slbm::ConfigError("cannot open case file '" + source + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    spec = slbm::parse_case(ss.str());
  }
  for (const auto& o : overrides) slbm::apply_override(spec, o);
  spec.validate();
  return spec;
}

std::vector<std::string> split_names(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_run(const std::string& source, const std::vector<std::string>& overrides,
            bool print_config) {
  const auto spec = load_case(source, overrides);
  if (print_config) {
    std::cout << slbm::serialize_case(spec);
    return 0;
  }
  const auto rep = slbm::run_case(spec);

  std::printf("case        : %s (hash %016llx)\n", source.c_str(),
              static_cast<unsigned long long>(slbm::case_hash(spec)));
  std::printf("method      : %s on %s, n=%d (dx=%g)\n",
              std::string(slbm::to_string(spec.method)).c_str(),
              std::string(slbm::to_string(spec.lattice)).c_str(), spec.n, rep.dx);
  std::printf("time        : t in [%g, %g], dt=%g, %ld steps (tau=%g)\n", rep.t_start,
              rep.t_final, rep.dt, rep.steps, rep.tau);
  std::printf("wall        : %.3f s (%.1f ns per node-step)\n", rep.wall_seconds,
              1e9 * rep.wall_seconds / (static_cast<double>(rep.nx) * rep.ny * rep.steps));
  if (spec.method == slbm::Method::IREBM)
    std::printf("newton      : %.2f iters/node/step (max %d), residual max %.2e\n",
                rep.newton_iter_mean, rep.newton_iter_max, rep.newton_residual_max);
  if (spec.method == slbm::Method::ILFBM)
    std::printf("inner loop  : %.2f iters/step (max %d)\n", rep.inner_iter_mean,
                rep.inner_iter_max);
  if (rep.final_linf)
    std::printf("final error : max |theta - exact| = %.3e\n", *rep.final_linf);
  if (!rep.trace.times.empty())
    std::printf("front       : x_f = %.5f (exact %.5f) at t = %g\n", rep.trace.positions.back(),
                rep.trace.exact_positions.back(), rep.trace.times.back());
  return 0;
}

int cmd_bench(const std::string& source, const std::string& methods_csv,
              const std::string& sizes_csv, long steps, const std::string& out,
              const std::vector<std::string>& overrides) {
  const auto base = load_case(source, overrides);

  std::vector<std::string> methods = split_names(methods_csv);
  std::vector<int> sizes;
  for (const auto& s : split_names(sizes_csv)) sizes.push_back(std::stoi(s));
  if (methods.empty() || sizes.empty())
    throw slbm::ConfigError("bench: need at least one method and one size");

  std::vector<std::vector<double>> seconds(sizes.size(),
                                           std::vector<double>(methods.size(), 0.0));
  std::printf("%8s", "n");
  for (const auto& m : methods) std::printf("%12s", m.c_str());
  std::printf("\n");
  for (size_t r = 0; r < sizes.size(); ++r) {
    std::printf("%8d", sizes[r]);
    std::fflush(stdout);
    for (size_t c = 0; c < methods.size(); ++c) {
      auto spec = base;
      slbm::apply_override(spec, "n=" + std::to_string(sizes[r]));
      slbm::apply_override(spec, "method=" + methods[c]);
      spec.output = {};
      double sec;
      if (steps > 0) {
        sec = slbm::measure_step_seconds(spec, steps, 1);
      } else {
        sec = slbm::run_case(spec).wall_seconds;
      }
      seconds[r][c] = sec;
      std::printf("%12.3f", sec);
      std::fflush(stdout);
    }
    std::printf("\n");
  }
  if (!out.empty()) {
    slbm::Metadata meta;
    meta["source"] = source;
    meta["steps"] = steps > 0 ? std::to_string(steps) : "full";
    slbm::write_timing_csv(out, meta, methods, sizes, seconds);
    std::printf("wrote %s\n", out.c_str());
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& files, const std::string& out) {
  std::vector<slbm::TraceFile> traces;
  traces.reserve(files.size());
  for (const auto& f : files) traces.push_back(slbm::read_interface_trace_csv(f));
  slbm::write_comparison_csv(out, traces);
  std::printf("wrote %s (%zu traces, %zu rows)\n", out.c_str(), traces.size(),
              traces.empty() ? 0 : traces[0].trace.size());
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Boltzmann solvers for conduction-driven melting and freezing"};
  app.require_subcommand(1);

  std::string source;
  std::vector<std::string> overrides;
  bool print_config = false;
  auto* run = app.add_subcommand("run", "Run a case file or preset (stefan1d, freeze2d)");
  run->add_option("case", source, "case file path or preset name")->required();
  run->add_option("-O,--override", overrides, "key=value or section.key=value override");
  run->add_flag("--print-config", print_config, "print the resolved configuration and exit");

  std::string bench_source, methods = "eebm,irebm,ilfbm", sizes = "201,401,801,1601";
  std::string bench_out;
  long bench_steps = 0;
  auto* bench = app.add_subcommand("bench", "Time full runs or fixed step counts per method/size");
  bench->add_option("preset", bench_source, "case file path or preset name")->required();
  bench->add_option("--methods", methods, "comma list of schemes (default eebm,irebm,ilfbm)");
  bench->add_option("--sizes", sizes, "comma list of nodes per axis (default 201,401,801,1601)");
  bench->add_option("--steps", bench_steps, "time a fixed number of steps instead of a full run");
  bench->add_option("--out", bench_out, "write the timing table as CSV");
  bench->add_option("-O,--override", overrides, "key=value override applied to every run");

  std::vector<std::string> compare_files;
  std::string compare_out = "compare.csv";
  auto* cmp = app.add_subcommand("compare", "Merge interface-trace CSVs into one table");
  cmp->add_option("traces", compare_files, "trace CSV files")->required()->expected(-1);
  cmp->add_option("--out", compare_out, "output CSV path (default compare.csv)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(source, overrides, print_config);
    if (bench->parsed()) return cmd_bench(bench_source, methods, sizes, bench_steps, bench_out,
                                          overrides);
    if (cmp->parsed()) return cmd_compare(compare_files, compare_out);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  } catch (const slbm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const slbm::ConvergenceError& e) {
    std::cerr << "scheme failure: " << e.what() << "\n";
    return kExitConvergence;
  } catch (const slbm::DiagnosticsError& e) {
    std::cerr << "diagnostics error: " << e.what() << "\n";
    return kExitDiagnostics;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const slbm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
