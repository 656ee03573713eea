#include "dcov/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>

#include "dcov/datagen.hpp"
#include "dcov/errors.hpp"
#include "dcov/estimators.hpp"
#include "dcov/inference.hpp"
#include "dcov/io.hpp"
#include "dcov/parallel.hpp"
#include "dcov/summary.hpp"
#include "dcov/ustat_theory.hpp"

namespace dcov::cli {
namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;
constexpr std::size_t kNaiveCap = 200;

struct InputOptions {
  std::string path;
  std::vector<std::string> x_columns;
  std::vector<std::string> y_columns;
  bool header = false;
  bool lenient = false;
};

void add_input_options(CLI::App* app, InputOptions& in) {
  app->add_option("--in", in.path, "Input CSV file")->required();
  app->add_option("--x", in.x_columns, "X columns (names or 0-based indices)")
      ->required()
      ->delimiter(',');
  app->add_option("--y", in.y_columns, "Y columns (names or 0-based indices)")
      ->required()
      ->delimiter(',');
  app->add_flag("--header", in.header, "First line is a header");
  app->add_flag("--lenient", in.lenient, "Drop rows with non-numeric selected cells");
}

PairedSample load(const InputOptions& in, std::ostream& err) {
  CsvOptions options;
  options.header = in.header;
  options.strict = !in.lenient;
  auto data = read_csv(in.path, {in.x_columns, in.y_columns}, options);
  if (data.dropped_rows > 0) {
    err << "dropped " << data.dropped_rows << " rows with non-numeric values\n";
  }
  return std::move(data.sample);
}

void emit(const Json& j, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw DataError("cannot write '" + out_path + "'");
  f << j.dump(2) << '\n';
}

Json quantile_table(std::vector<double> empirical, std::vector<double> limit) {
  std::sort(empirical.begin(), empirical.end());
  std::sort(limit.begin(), limit.end());
  Json rows = Json::array();
  for (double prob : {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99}) {
    Json row;
    row["prob"] = prob;
    row["empirical"] = quantile_sorted(empirical, prob);
    row["limit"] = quantile_sorted(limit, prob);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distance covariance estimation and independence testing"};
  app.require_subcommand(1);

  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string out_path;

  // estimate
  InputOptions est_in;
  bool naive = false, force = false, with_dcor = false;
  auto* estimate = app.add_subcommand("estimate", "Unbiased distance covariance of a CSV sample");
  add_input_options(estimate, est_in);
  estimate->add_flag("--naive", naive, "Use the O(n^4) estimator");
  estimate->add_flag("--force", force, "Allow --naive above n = 200");
  estimate->add_flag("--dcor", with_dcor, "Also report the squared distance correlation");
  estimate->add_option("--seed", seed, "Recorded in the output")->capture_default_str();
  estimate->add_option("--out", out_path, "Output JSON file (default stdout)");

  // test
  InputOptions test_in;
  std::string stat_tag = "dcov-fast";
  std::size_t B = 10000;
  auto* test = app.add_subcommand("test", "Permutation test of independence");
  add_input_options(test, test_in);
  test->add_option("--stat", stat_tag, "dcov-fast | dcov-naive | classical-cov")
      ->capture_default_str();
  test->add_option("--B", B, "Number of permutations")->capture_default_str();
  test->add_option("--seed", seed)->capture_default_str();
  test->add_option("--threads", threads, "Worker threads (0 = auto)")->capture_default_str();
  test->add_option("--out", out_path);

  // asymptest
  InputOptions asym_in;
  std::size_t basis = 200, mixture_reps = 10000;
  auto* asymptest = app.add_subcommand("asymptest", "Asymptotic test against the mixture limit");
  add_input_options(asymptest, asym_in);
  asymptest->add_option("--basis", basis, "Eigenbasis size")->capture_default_str();
  asymptest->add_option("--reps", mixture_reps, "Mixture draws")->capture_default_str();
  asymptest->add_option("--seed", seed)->capture_default_str();
  asymptest->add_option("--threads", threads)->capture_default_str();
  asymptest->add_option("--out", out_path);

  // simulate-limits
  std::string regime = "null";
  NullLimitConfig null_cfg;
  NormalLimitConfig normal_cfg;
  std::optional<std::size_t> sim_n, sim_reps, sim_draws;
  auto* simulate = app.add_subcommand("simulate-limits",
                                      "Compare the scaled estimator with its limit distribution");
  simulate->add_option("--regime", regime, "null (mixture limit) | normal (dependent, CLT)")
      ->check(CLI::IsMember({"null", "normal"}))
      ->capture_default_str();
  simulate->add_option("--n", sim_n, "Sample size per replicate (200 null, 400 normal)");
  simulate->add_option("--reps", sim_reps, "Replicates (2000 null, 1000 normal)");
  simulate->add_option("--draws", sim_draws, "Draws from the limit law (default 100000)");
  simulate->add_option("--basis", null_cfg.basis, "Eigenbasis size (null)")->capture_default_str();
  simulate->add_option("--spectrum-n", null_cfg.spectrum_n, "Spectrum sample size (null)")
      ->capture_default_str();
  simulate->add_option("--reference-n", normal_cfg.reference_n, "V^2 reference size (normal)")
      ->capture_default_str();
  simulate->add_option("--variance-n", normal_cfg.variance_n, "Var h1 sample size (normal)")
      ->capture_default_str();
  simulate->add_option("--noise", normal_cfg.noise_sd, "Noise sd in Y = X + noise (normal)")
      ->capture_default_str();
  simulate->add_option("--seed", seed)->capture_default_str();
  simulate->add_option("--threads", threads)->capture_default_str();
  simulate->add_option("--out", out_path);

  // verify-integral
  std::optional<int> dim;
  std::vector<double> x_arg;
  IntegralBudget budget;
  auto* verify = app.add_subcommand("verify-integral",
                                    "Numerical check of the fundamental integral");
  verify->add_option("--p", dim, "Dimension (defaults to the length of --x)");
  verify->add_option("--x", x_arg, "Argument vector")->required()->delimiter(',');
  verify->add_option("--tol", budget.tolerance, "Quadrature tolerance (p = 1)")
      ->capture_default_str();
  verify->add_option("--samples", budget.samples, "Monte Carlo draws (p >= 2)")
      ->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();
  verify->add_option("--threads", threads)->capture_default_str();
  verify->add_option("--out", out_path);

  // gen
  ShapeSpec shape_spec;
  std::string shape_tag;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Write a synthetic sample as CSV");
  gen->add_option("--shape", shape_tag, "circle | wave | cross | linear | independent")
      ->required();
  gen->add_option("--n", shape_spec.n)->capture_default_str();
  gen->add_option("--noise", shape_spec.noise_sd)->capture_default_str();
  gen->add_option("--rho", shape_spec.rho, "Correlation of the linear shape")
      ->capture_default_str();
  gen->add_option("--p", shape_spec.p, "X dimension (independent)")->capture_default_str();
  gen->add_option("--q", shape_spec.q, "Y dimension (independent)")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", gen_out, "Output CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  try {
    const unsigned workers = resolve_threads(threads);
    if (estimate->parsed()) {
      const auto sample = load(est_in, err);
      if (naive && sample.n() > kNaiveCap && !force) {
        err << "--naive is O(n^4); n = " << sample.n() << " exceeds " << kNaiveCap
            << " (pass --force to run anyway)\n";
        return kUsageError;
      }
      const auto dx = pairwise_distances(sample.x());
      const auto dy = pairwise_distances(sample.y());
      Json j = to_json(naive ? dcov_usq_naive(dx, dy) : dcov_usq_fast(dx, dy));
      if (with_dcor) j["dcor_sq"] = dcor_sq(dx, dy);
      j["seed"] = seed;
      emit(j, out_path, out);
    } else if (test->parsed()) {
      const auto statistic = parse_statistic(stat_tag);
      const auto sample = load(test_in, err);
      const auto report = permutation_test(sample, statistic, B, seed, workers);
      emit(to_json(report, iso8601_now()), out_path, out);
    } else if (asymptest->parsed()) {
      const auto sample = load(asym_in, err);
      const auto report = asymptotic_test(sample, basis, mixture_reps, seed, workers);
      emit(to_json(report, iso8601_now()), out_path, out);
    } else if (simulate->parsed()) {
      Json j;
      j["regime"] = regime;
      if (regime == "null") {
        if (sim_n) null_cfg.n = *sim_n;
        if (sim_reps) null_cfg.replicates = *sim_reps;
        if (sim_draws) null_cfg.limit_draws = *sim_draws;
        null_cfg.seed = seed;
        null_cfg.threads = workers;
        const auto r = simulate_null_limit(null_cfg);
        j["n"] = null_cfg.n;
        j["replicates"] = null_cfg.replicates;
        j["limit_draws"] = null_cfg.limit_draws;
        j["basis"] = null_cfg.basis;
        j["spectrum_n"] = null_cfg.spectrum_n;
        j["mixture_variance"] = mixture_variance(r.spectrum);
        j["leading_eigenvalues"] = std::vector<double>(
            r.spectrum.eigenvalues.begin(),
            r.spectrum.eigenvalues.begin() +
                static_cast<std::ptrdiff_t>(std::min<std::size_t>(10, r.spectrum.eigenvalues.size())));
        j["ks_distance"] = r.comparison.ks_distance;
        j["quantiles"] = quantile_table(r.comparison.empirical, r.comparison.limit);
      } else {
        if (sim_n) normal_cfg.n = *sim_n;
        if (sim_reps) normal_cfg.replicates = *sim_reps;
        if (sim_draws) normal_cfg.limit_draws = *sim_draws;
        normal_cfg.seed = seed;
        normal_cfg.threads = workers;
        const auto r = simulate_normal_limit(normal_cfg);
        j["n"] = normal_cfg.n;
        j["replicates"] = normal_cfg.replicates;
        j["limit_draws"] = normal_cfg.limit_draws;
        j["noise_sd"] = normal_cfg.noise_sd;
        j["v2_reference"] = r.v2_reference;
        j["var_h1"] = r.var_h1;
        j["ks_distance"] = r.comparison.ks_distance;
        j["quantiles"] = quantile_table(r.comparison.empirical, r.comparison.limit);
      }
      j["seed"] = seed;
      emit(j, out_path, out);
    } else if (verify->parsed()) {
      if (dim && static_cast<std::size_t>(*dim) != x_arg.size()) {
        err << "--p " << *dim << " does not match the length of --x (" << x_arg.size() << ")\n";
        return kUsageError;
      }
      Json j = to_json(verify_fundamental_integral(x_arg, budget, seed, workers));
      j["seed"] = seed;
      emit(j, out_path, out);
    } else if (gen->parsed()) {
      shape_spec.shape = parse_shape(shape_tag);
      shape_spec.seed = seed;
      const auto sample = generate(shape_spec);
      if (gen_out.empty()) {
        write_csv(out, sample);
      } else {
        write_csv(gen_out, sample);
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}

}  // namespace dcov::cli
