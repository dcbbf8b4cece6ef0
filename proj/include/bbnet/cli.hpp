#pragma once

// Command-line front end: generate, optimize, compare, sweep.
//
// Exit status: 0 success (a diverged run is a result, not a failure),
// 1 usage error, 2 validation or solver error.

#include "bbnet/harness.hpp"
#include "bbnet/instance_io.hpp"
#include "bbnet/report_io.hpp"
#include "bbnet/svg.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace bbnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFailure = 2;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline double to_real(const std::string& s, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(flag + ": '" + s + "' is not a number");
  }
}

inline std::vector<double> real_list(const std::string& s, const std::string& flag) {
  std::vector<double> out;
  if (s.empty()) throw ConfigError(flag + ": empty list");
  for (const auto& part : split(s, ',')) out.push_back(to_real(part, flag));
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

inline std::string describe(const CostBreakdown& c) {
  std::ostringstream s;
  s << std::setprecision(10) << "coverage=" << c.coverage << " connectivity=" << c.connectivity
    << " total=" << c.total;
  return s.str();
}

/// Generator flags shared by generate, compare and sweep.
struct GeneratorFlags {
  std::size_t hosts = 20;
  std::size_t backbones = 10;
  std::string plane = "100,100";
  double cluster_prob = 0.7;
  double cluster_range = 10.0;
  std::uint64_t seed = 1;

  void attach(CLI::App* app) {
    app->add_option("--hosts", hosts, "Number of host nodes");
    app->add_option("--backbones", backbones, "Number of backbone nodes");
    app->add_option("--plane", plane, "Plane size W,H");
    app->add_option("--cluster-prob", cluster_prob, "Probability of placing a host near the previous one");
    app->add_option("--cluster-range", cluster_range, "Half-width of the cluster neighbourhood");
    app->add_option("--seed", seed, "Base random seed");
  }

  GeneratorConfig config() const {
    GeneratorConfig cfg;
    cfg.n_hosts = hosts;
    cfg.m_backbones = backbones;
    const auto wh = real_list(plane, "--plane");
    if (wh.size() != 2) throw ConfigError("--plane: expected W,H");
    cfg.plane = {wh[0], wh[1]};
    cfg.cluster_prob = cluster_prob;
    cfg.cluster_range = cluster_range;
    cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

/// Solver flags shared by optimize, compare and sweep.
struct SolverFlags {
  std::optional<double> step;
  int max_iters = 10000;
  double grad_tol = 1e-6;
  double cost_tol = 0.0;
  bool freeze = false;

  void attach(CLI::App* app) {
    app->add_option("--step", step, "Fixed step for sd-fixed");
    app->add_option("--max-iters", max_iters, "Iteration limit");
    app->add_option("--grad-tol", grad_tol, "Gradient infinity-norm tolerance");
    app->add_option("--cost-tol", cost_tol, "Relative cost-change tolerance (0 disables)");
    app->add_flag("--freeze-assignment", freeze, "Keep the initial host assignment");
  }

  SolverConfig config(Method m) const {
    SolverConfig cfg;
    cfg.method = m;
    if (m == Method::SdFixed) {
      if (!step) throw ConfigError("--step is required for sd-fixed");
      cfg.fixed_step = step;
    }
    cfg.max_iters = max_iters;
    cfg.grad_tol = grad_tol;
    cfg.cost_tol = cost_tol;
    cfg.reassign_each_iteration = !freeze;
    cfg.validate();
    return cfg;
  }
};

inline void print_batch(std::ostream& out, const BatchSummary& s) {
  out << std::left << std::setw(10) << "method" << std::right << std::setw(16) << "initial_cost" << std::setw(16)
      << "final_cost" << std::setw(12) << "iterations" << std::setw(14) << "seconds" << '\n';
  for (const auto& m : s.per_method) {
    out << std::left << std::setw(10) << to_string(m.method) << std::right << std::fixed << std::setprecision(3)
        << std::setw(16) << m.mean_initial_cost << std::setw(16) << m.mean_final_cost << std::setprecision(1)
        << std::setw(12) << m.mean_iterations << std::setprecision(6) << std::setw(14) << m.mean_elapsed_seconds
        << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

inline void write_batch_plots(const std::filesystem::path& dir, const BatchSummary& s) {
  std::vector<std::string> labels;
  std::vector<double> cost, iters, secs;
  for (const auto& m : s.per_method) {
    labels.emplace_back(to_string(m.method));
    cost.push_back(m.mean_final_cost);
    iters.push_back(m.mean_iterations);
    secs.push_back(m.mean_elapsed_seconds);
  }
  write_file(dir / "mean_cost.svg", svg::bar_chart("Average optimized cost", labels, cost, "cost"));
  write_file(dir / "mean_iterations.svg", svg::bar_chart("Average iterations", labels, iters, "iterations"));
  write_file(dir / "mean_time.svg", svg::bar_chart("Average elapsed time", labels, secs, "seconds"));

  const std::size_t nm = s.methods.size();
  auto per_trial = [&](auto metric) {
    std::vector<svg::Series> series;
    for (std::size_t mi = 0; mi < nm; ++mi) {
      svg::Series sr{std::string(to_string(s.methods[mi].method)), {}, {}};
      for (std::size_t t = 0; t < s.trials; ++t) {
        sr.x.push_back(static_cast<double>(t + 1));
        sr.y.push_back(metric(s.per_trial[t * nm + mi].report));
      }
      series.push_back(std::move(sr));
    }
    return series;
  };
  write_file(dir / "trial_cost.svg",
             svg::line_chart("Optimized cost per network",
                             per_trial([](const SolverReport& r) { return r.final_cost.total; }), "network", "cost"));
  write_file(dir / "trial_iterations.svg",
             svg::line_chart("Iterations per network",
                             per_trial([](const SolverReport& r) { return static_cast<double>(r.iterations); }),
                             "network", "iterations"));
  write_file(dir / "trial_time.svg",
             svg::line_chart("Elapsed time per network",
                             per_trial([](const SolverReport& r) { return r.elapsed_seconds; }), "network",
                             "seconds"));
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Backbone placement optimizer for two-tier wireless networks", "bbnet"};
  app.require_subcommand(1);

  // generate
  GeneratorFlags gen_flags;
  double gen_lambda = 1.0;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a random instance file");
  gen_flags.attach(generate);
  generate->add_option("--lambda", gen_lambda, "Connectivity weight");
  generate->add_option("-o,--out", gen_out, "Instance file to write")->required();

  // optimize
  std::string opt_instance;
  std::string opt_solver = "sd-exact";
  std::optional<double> opt_lambda;
  std::string opt_out;
  bool opt_plot = false;
  SolverFlags opt_flags;
  auto* optimize_cmd = app.add_subcommand("optimize", "Run one solver on an instance file");
  optimize_cmd->add_option("instance", opt_instance, "Instance file")->required();
  optimize_cmd->add_option("--solver", opt_solver, "sd-exact | sd-fixed | newton | cg");
  optimize_cmd->add_option("--lambda", opt_lambda, "Override the instance's connectivity weight");
  optimize_cmd->add_option("-o,--out", opt_out, "Report file (stdout when omitted)");
  optimize_cmd->add_flag("--plot", opt_plot, "Write layout and cost-trajectory SVGs next to the report");
  opt_flags.attach(optimize_cmd);

  // compare
  GeneratorFlags cmp_gen;
  SolverFlags cmp_flags;
  double cmp_lambda = 1.0;
  std::size_t cmp_trials = 20;
  std::string cmp_methods = "sd-exact,newton,cg";
  std::string cmp_out = ".";
  bool cmp_plot = false;
  unsigned cmp_jobs = 1;
  auto* compare = app.add_subcommand("compare", "Compare solvers over independent random networks");
  cmp_gen.attach(compare);
  cmp_flags.attach(compare);
  compare->add_option("--lambda", cmp_lambda, "Connectivity weight");
  compare->add_option("--trials", cmp_trials, "Number of independent networks");
  compare->add_option("--methods", cmp_methods, "Comma-separated solver list");
  compare->add_option("-o,--out", cmp_out, "Output directory");
  compare->add_flag("--plot", cmp_plot, "Write bar and per-network charts");
  compare->add_option("--jobs", cmp_jobs, "Worker threads (0 = all cores)");

  // sweep
  std::string sw_mode;
  GeneratorFlags sw_gen;
  SolverFlags sw_flags;
  std::string sw_lambdas = "0.1,0.5,1,5,15";
  std::string sw_steps;
  std::string sw_solver = "sd-exact";
  std::string sw_instance;
  std::optional<double> sw_lambda;
  std::size_t sw_trials = 5;
  std::string sw_out = ".";
  bool sw_plot = false;
  bool sw_reassign = false;
  unsigned sw_jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Sweep lambda or the fixed step size");
  sweep->add_option("mode", sw_mode, "lambda | step")->required()->check(CLI::IsMember({"lambda", "step"}));
  sw_gen.attach(sweep);
  sw_flags.attach(sweep);
  sweep->add_option("--lambdas", sw_lambdas, "Comma-separated lambda values (lambda mode)");
  sweep->add_option("--steps", sw_steps, "Comma-separated fixed steps (step mode)");
  sweep->add_option("--solver", sw_solver, "Solver for lambda mode");
  sweep->add_option("--instance", sw_instance, "Instance file for step mode (generated when omitted)");
  sweep->add_option("--lambda", sw_lambda, "Connectivity weight for step mode");
  sweep->add_option("--trials", sw_trials, "Networks per lambda");
  sweep->add_option("-o,--out", sw_out, "Output directory");
  sweep->add_flag("--plot", sw_plot, "Write a summary chart");
  sweep->add_flag("--reassign", sw_reassign, "Step mode: re-derive the nearest assignment each iteration");
  sweep->add_option("--jobs", sw_jobs, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      const auto inst = generate_instance(gen_flags.config(), gen_lambda);
      write_file(gen_out, save_instance(inst));
      out << "wrote " << gen_out << " (hosts=" << inst.host_count() << ", backbones=" << inst.backbone_count()
          << ")\ninitial cost: " << describe(total_cost(inst)) << '\n';
      return kExitOk;
    }

    if (optimize_cmd->parsed()) {
      const SolverConfig cfg = opt_flags.config(parse_method(opt_solver));
      NetworkInstance inst = load_instance_file(opt_instance);
      if (opt_lambda) {
        inst.lambda = *opt_lambda;
        validate(inst);
      }
      const auto res = optimize(inst, cfg);
      const std::string doc = optimize_document(res.report, cfg, inst, res.instance).dump(2) + "\n";
      if (opt_out.empty()) {
        out << doc;
      } else {
        write_file(opt_out, doc);
        out << to_string(res.report.method) << ": " << to_string(res.report.termination) << " after "
            << res.report.iterations << " iterations, final cost " << describe(res.report.final_cost) << '\n';
      }
      if (opt_plot) {
        const std::filesystem::path base = opt_out.empty() ? std::filesystem::path("report") : std::filesystem::path(opt_out);
        auto sibling = [&](const std::string& suffix) {
          auto p = base;
          p.replace_filename(base.stem().string() + suffix);
          return p;
        };
        write_file(sibling("_initial.svg"), svg::layout(inst, "Initial network"));
        write_file(sibling("_layout.svg"),
                   svg::layout(res.instance, "Optimized network (" + std::string(to_string(cfg.method)) + ")"));
        svg::Series traj{"total cost", {}, res.report.trajectory};
        for (std::size_t i = 0; i < traj.y.size(); ++i) traj.x.push_back(static_cast<double>(i));
        write_file(sibling("_trajectory.svg"), svg::line_chart("Cost per iteration", {traj}, "iteration", "cost"));
      }
      return kExitOk;
    }

    if (compare->parsed()) {
      std::vector<SolverConfig> methods;
      for (const auto& tag : split(cmp_methods, ',')) methods.push_back(cmp_flags.config(parse_method(tag)));
      const auto summary = run_batch(cmp_gen.config(), cmp_lambda, methods, cmp_trials, {cmp_jobs});
      const std::filesystem::path dir(cmp_out);
      write_file(dir / "summary.json", to_json(summary).dump(2) + "\n");
      write_file(dir / "trials.csv", trials_csv(summary));
      if (cmp_plot) write_batch_plots(dir, summary);
      print_batch(out, summary);
      return kExitOk;
    }

    if (sweep->parsed()) {
      const std::filesystem::path dir(sw_out);
      if (sw_mode == "lambda") {
        const auto lambdas = real_list(sw_lambdas, "--lambdas");
        const auto rows =
            lambda_sweep(sw_gen.config(), lambdas, sw_flags.config(parse_method(sw_solver)), sw_trials, {sw_jobs});
        write_file(dir / "lambda_sweep.csv", lambda_sweep_csv(rows));
        if (sw_plot) {
          svg::Series pair{"backbone link length", {}, {}};
          svg::Series cover{"host cover distance", {}, {}};
          for (const auto& r : rows) {
            pair.x.push_back(r.lambda);
            pair.y.push_back(r.mean_backbone_pair_distance);
            cover.x.push_back(r.lambda);
            cover.y.push_back(r.mean_host_cover_distance);
          }
          write_file(dir / "lambda_sweep.svg",
                     svg::line_chart("Geometry versus lambda", {pair, cover}, "lambda", "mean distance"));
        }
        out << lambda_sweep_csv(rows);
        return kExitOk;
      }

      const auto steps = real_list(sw_steps, "--steps");
      NetworkInstance inst;
      if (sw_instance.empty()) {
        inst = generate_instance(sw_gen.config(), sw_lambda.value_or(1.0));
      } else {
        inst = load_instance_file(sw_instance);
        if (sw_lambda) inst.lambda = *sw_lambda;
      }
      validate(inst);
      const auto interval = stable_step_interval(hessian(inst, nearest_assignment(inst)));
      const auto rows = step_sweep(inst, steps, sw_flags.max_iters, sw_reassign);
      write_file(dir / "step_sweep.csv", step_sweep_csv(rows, interval));
      if (sw_plot) {
        std::vector<svg::Series> series;
        for (const auto& r : rows) {
          SolverConfig cfg = sd_fixed_config(r.step, sw_flags.max_iters);
          cfg.reassign_each_iteration = sw_reassign;
          const auto res = optimize(inst, cfg);
          svg::Series sr{"step " + svg::detail::label(r.step), {}, res.report.trajectory};
          for (std::size_t i = 0; i < sr.y.size(); ++i) sr.x.push_back(static_cast<double>(i));
          series.push_back(std::move(sr));
        }
        write_file(dir / "step_sweep.svg", svg::line_chart("Fixed-step cost trajectories", series, "iteration", "cost"));
      }
      out << "stable interval: (0, " << std::setprecision(10) << interval.upper << ")\n" << step_sweep_csv(rows, interval);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace bbnet::cli
