// Command-line driver: screening, iterated selection, simulation studies and
// a benchmark comparing the parallel screen against the serial reference.
#include "nis/csv.hpp"
#include "nis/housing.hpp"
#include "nis/inis.hpp"
#include "nis/joint_fit.hpp"
#include "nis/parallel.hpp"
#include "nis/permutation.hpp"
#include "nis/report.hpp"
#include "nis/rng.hpp"
#include "nis/simgen.hpp"
#include "nis/reference.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace {

using nis::Dataset;
using nis::SplineBasis;
using json = nlohmann::json;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct DataOpts {
  std::string path;
  std::string response = "y";
  std::string exposure = "w";
};

struct BasisOpts {
  int basis_size = 7;
  int degree = 3;
};

void add_data_opts(CLI::App* cmd, DataOpts& d) {
  cmd->add_option("--data", d.path, "input CSV file")->required();
  cmd->add_option("--response", d.response, "response column name");
  cmd->add_option("--exposure", d.exposure, "exposure column name");
}

void add_basis_opts(CLI::App* cmd, BasisOpts& b) {
  cmd->add_option("--basis-size", b.basis_size, "number of B-spline basis functions");
  cmd->add_option("--degree", b.degree, "B-spline degree");
}

Dataset load_dataset(const DataOpts& d) {
  return nis::dataset_from_table(nis::read_csv(d.path), d.response, d.exposure);
}

SplineBasis build_basis(const Dataset& data, const BasisOpts& b) {
  return SplineBasis::build({data.w.data(), static_cast<std::size_t>(data.w.size())},
                            b.basis_size, b.degree);
}

std::string covariate_name(const Dataset& data, int j) {
  return j < static_cast<int>(data.names.size()) ? data.names[j] : "x" + std::to_string(j + 1);
}

// ---------------------------------------------------------------- screen ---

struct ScreenArgs {
  DataOpts data;
  BasisOpts basis;
  bool standardize = false;
  bool permute = false;
  int rounds = 1;
  int q = 1;
  std::uint64_t seed = 0;
  int workers = 0;
  int top = 10;
  std::string out;
};

int cmd_screen(const ScreenArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const Dataset data = load_dataset(args.data);
  const SplineBasis basis = build_basis(data, args.basis);
  nis::ScreenOptions opt;
  opt.standardize = args.standardize;
  opt.workers = args.workers;
  const nis::ScreenReport report = nis::screen_all(data, basis, opt);

  json results = nis::screen_json(report, data.names);
  if (args.permute) {
    const nis::BasisDesign bd = nis::make_basis_design(basis, data.w);
    std::vector<int> all(data.p());
    std::iota(all.begin(), all.end(), 0);
    nis::PermutationConfig pc;
    pc.rounds = args.rounds;
    pc.q = args.q;
    pc.seed = args.seed;
    pc.screen = opt;
    const nis::ThresholdResult thr = nis::permutation_threshold(data.y, bd, data.x, all, pc);
    std::vector<int> selected;
    for (int j = 0; j < data.p(); ++j)
      if (report.u[j] > thr.tau) selected.push_back(j);
    results["threshold"] = json{{"tau", thr.tau},
                                {"q", pc.q},
                                {"rounds", pc.rounds},
                                {"selected", nis::covariates_json(selected, data.names)}};
    std::cout << "permutation threshold tau=" << thr.tau << " selects " << selected.size()
              << " of " << data.p() << " covariates\n";
  }

  const int top = std::min<int>(args.top, data.p());
  std::cout << "top " << top << " covariates by marginal utility:\n";
  for (int i = 0; i < top; ++i) {
    const int j = report.ranking[i];
    std::cout << "  " << (i + 1) << ". " << covariate_name(data, j) << "  u=" << report.u[j]
              << "  v=" << report.v[j] << "\n";
  }

  if (!args.out.empty()) {
    json config{{"basis_size", args.basis.basis_size},
                {"degree", args.basis.degree},
                {"standardize", args.standardize},
                {"response", args.data.response},
                {"exposure", args.data.exposure},
                {"seed", args.seed}};
    if (args.permute) config["permute"] = json{{"rounds", args.rounds}, {"q", args.q}};
    json out = nis::report_envelope("screen", data, config);
    out["results"] = results;
    nis::write_report(args.out, out);
    std::cout << "report written to " << args.out << "\n";
  }
  std::cerr << "[screen] wall time " << seconds_since(start) << " s\n";
  return 0;
}

// ------------------------------------------------------------------ inis ---

struct InisArgs {
  DataOpts data;
  BasisOpts basis;
  std::string variant = "conditional";
  int init_k = 5;
  std::vector<int> conditioning;  // 1-based on the command line
  int p0 = 1;
  int rounds = 1;
  int q = 1;
  int zeta = 0;
  int max_iter = 20;
  int num_lambda = 30;
  double scad_a = 3.7;
  bool standardize = false;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
};

int cmd_inis(const InisArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const Dataset data = load_dataset(args.data);
  const SplineBasis basis = build_basis(data, args.basis);

  nis::InisConfig cfg;
  cfg.variant = args.variant == "greedy" ? nis::InisVariant::greedy
                                         : nis::InisVariant::conditional;
  cfg.init_k = args.init_k;
  for (const int j : args.conditioning) {
    if (j < 1 || j > data.p())
      throw nis::SchemaError("--conditioning index " + std::to_string(j) + " out of 1.." +
                             std::to_string(data.p()));
    cfg.conditioning.push_back(j - 1);
  }
  cfg.p0 = args.p0;
  cfg.rounds = args.rounds;
  cfg.q = args.q;
  cfg.zeta = args.zeta;
  cfg.max_iter = args.max_iter;
  cfg.seed = args.seed;
  cfg.screen.standardize = args.standardize;
  cfg.screen.workers = args.workers;
  cfg.scad.num_lambda = args.num_lambda;
  cfg.scad.a = args.scad_a;
  cfg.scad.workers = args.workers;

  const nis::InisResult result = nis::run_inis(data, basis, cfg);

  std::cout << nis::to_string(cfg.variant) << " selection finished after " << result.iterations
            << " iteration(s), termination: " << nis::to_string(result.termination) << "\n";
  std::cout << "selected " << result.selected.size() << " covariate(s):";
  for (const int j : result.selected) std::cout << " " << covariate_name(data, j);
  std::cout << "\n";

  if (!args.out.empty()) {
    json config{{"variant", args.variant},
                {"init_k", args.init_k},
                {"p0", args.p0},
                {"rounds", args.rounds},
                {"q", args.q},
                {"zeta", args.zeta},
                {"max_iter", args.max_iter},
                {"num_lambda", args.num_lambda},
                {"scad_a", args.scad_a},
                {"standardize", args.standardize},
                {"seed", args.seed},
                {"basis_size", args.basis.basis_size},
                {"degree", args.basis.degree},
                {"response", args.data.response},
                {"exposure", args.data.exposure}};
    if (!args.conditioning.empty()) config["conditioning"] = args.conditioning;
    json out = nis::report_envelope("inis", data, config);
    out["results"] = nis::inis_json(result, data.names);
    nis::write_report(args.out, out);
    std::cout << "report written to " << args.out << "\n";
  }
  std::cerr << "[inis] wall time " << seconds_since(start) << " s\n";
  return 0;
}

// -------------------------------------------------------------- simulate ---

struct SimulateArgs {
  std::string example = "ex3";
  std::string method = "cinis";
  int n = 400;
  int p = 1000;
  int s = 8;
  double t1 = 0, t2 = 0;
  double t = 2;  // housing augmentation weight
  int reps = 20;
  int test_n = -1;  // -1: n/2 for synthetic, 100 for housing
  BasisOpts basis;
  std::string data_path;  // housing CSV
  int init_k = 5;
  int p0 = 1;
  int rounds = 1, q = 1, zeta = 0, max_iter = 20;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
  std::string dump_train;
};

nis::InisConfig inis_config_from(const SimulateArgs& args, bool greedy) {
  nis::InisConfig cfg;
  cfg.variant = greedy ? nis::InisVariant::greedy : nis::InisVariant::conditional;
  cfg.init_k = args.init_k;
  cfg.p0 = args.p0;
  cfg.rounds = args.rounds;
  cfg.q = args.q;
  cfg.zeta = args.zeta;
  cfg.max_iter = args.max_iter;
  cfg.screen.workers = args.workers;
  cfg.scad.workers = args.workers;
  return cfg;
}

void dump_dataset_csv(const Dataset& data, const std::string& path) {
  nis::CsvTable table;
  table.header = {"y", "w"};
  for (int j = 0; j < data.p(); ++j)
    table.header.push_back(j < static_cast<int>(data.names.size()) ? data.names[j]
                                                                   : "x" + std::to_string(j + 1));
  table.values.resize(data.n(), 2 + data.p());
  table.values.col(0) = data.y;
  table.values.col(1) = data.w;
  table.values.rightCols(data.p()) = data.x;
  nis::write_csv(path, table);
}

json summarize(const std::string& key, std::vector<double> values) {
  json out;
  out["median"] = nis::median(values);
  if (values.size() >= 2) out["robust_sd"] = nis::robust_sd(values);
  out["key"] = key;
  return out;
}

int cmd_simulate_housing(const SimulateArgs& args) {
  if (args.data_path.empty())
    throw nis::SchemaError("--example housing requires --data <boston.csv>");
  const Dataset housing = nis::load_housing(args.data_path);
  const int test_n = args.test_n < 0 ? 100 : args.test_n;
  if (test_n >= housing.n())
    throw nis::SchemaError("--test-n leaves no training rows");
  const int real_p = housing.p();

  json reps = json::array();
  std::vector<double> sizes, artificial, pes;
  for (int rep = 0; rep < args.reps; ++rep) {
    nis::Rng rng(nis::derive_seed(args.seed, static_cast<std::uint64_t>(rep)));
    Dataset full = nis::augment_covariates(housing, args.p, args.t, rng);
    const auto order = nis::random_permutation(full.n(), rng);
    const std::vector<int> train_rows(order.begin(), order.end() - test_n);
    const std::vector<int> test_rows(order.end() - test_n, order.end());
    Dataset train = nis::take_rows(full, train_rows);
    Dataset test = nis::take_rows(full, test_rows);
    const nis::ColumnScaling scaling = nis::fit_scaling(train.x);
    nis::apply_scaling(train.x, scaling);
    nis::apply_scaling(test.x, scaling);

    const SplineBasis basis = build_basis(train, args.basis);
    nis::InisConfig cfg = inis_config_from(args, args.method == "greedy");
    cfg.seed = nis::derive_seed(args.seed, 0x1000000ULL + rep);
    const nis::InisResult result = nis::run_inis(train, basis, cfg);

    int art = 0;
    for (const int j : result.selected)
      if (j >= real_p) ++art;
    const double pe =
        nis::prediction_error(nis::predict(result.model.coef, basis, test.w, test.x), test.y);
    sizes.push_back(static_cast<double>(result.selected.size()));
    artificial.push_back(static_cast<double>(art));
    pes.push_back(pe);
    reps.push_back(json{{"rep", rep},
                        {"size", result.selected.size()},
                        {"artificial", art},
                        {"pe", pe},
                        {"iterations", result.iterations},
                        {"termination", nis::to_string(result.termination)},
                        {"selected", nis::covariates_json(result.selected, train.names)}});
    std::cout << "rep " << rep << ": size=" << result.selected.size() << " artificial=" << art
              << " pe=" << pe << "\n";
  }

  json summary = json::array();
  summary.push_back(summarize("size", sizes));
  summary.push_back(summarize("artificial", artificial));
  summary.push_back(summarize("pe", pes));
  std::cout << "medians: size=" << nis::median(sizes) << " artificial=" << nis::median(artificial)
            << " pe=" << nis::median(pes) << "\n";

  if (!args.out.empty()) {
    json config{{"example", "housing"}, {"method", args.method}, {"p", args.p},
                {"t", args.t},          {"reps", args.reps},     {"test_n", test_n},
                {"seed", args.seed},    {"basis_size", args.basis.basis_size},
                {"degree", args.basis.degree}};
    json out = nis::report_envelope("simulate", housing, config);
    out["results"] = json{{"replicates", reps}, {"summary", summary}};
    nis::write_report(args.out, out);
    std::cout << "report written to " << args.out << "\n";
  }
  return 0;
}

int cmd_simulate(const SimulateArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  if (args.example == "housing") return cmd_simulate_housing(args);

  nis::SimSpec spec;
  spec.example = nis::example_from_string(args.example);
  spec.n = args.n;
  spec.p = args.p;
  spec.s = args.s;
  spec.t1 = args.t1;
  spec.t2 = args.t2;
  spec.seed = args.seed;
  const std::vector<int> truth = nis::true_support(spec);
  const int test_n = args.test_n < 0 ? args.n / 2 : args.test_n;
  const double snr = nis::snr_estimate(spec);
  std::cout << "example " << args.example << " (n=" << spec.n << ", p=" << spec.p
            << ", SNR ~= " << snr << ")\n";

  if (!args.dump_train.empty()) {
    const Dataset train = nis::generate_replicate(spec, 0);
    dump_dataset_csv(train, args.dump_train);
    std::cout << "replicate-0 training data written to " << args.dump_train << "\n";
  }

  json reps = json::array();
  std::vector<double> tps, fps, pes, sizes, mms_nis, mms_sis, min_true, max_false;
  for (int rep = 0; rep < args.reps; ++rep) {
    nis::Rng rng(nis::derive_seed(spec.seed, static_cast<std::uint64_t>(rep)));
    const Dataset train = nis::generate(spec, rng);
    json r{{"rep", rep}};

    if (args.method == "screen" || args.method == "mms") {
      const SplineBasis basis = build_basis(train, args.basis);
      nis::ScreenOptions opt;
      opt.workers = args.workers;
      const nis::ScreenReport sr = nis::screen_all(train, basis, opt);
      const int mms = nis::minimum_model_size(sr.ranking, truth);
      r["mms_nis"] = mms;
      mms_nis.push_back(mms);
      if (args.method == "mms") {
        const auto sis = nis::sis_scores(train.y, train.x);
        const auto sis_rank = nis::ranking_by_utility(sis);
        const int mms2 = nis::minimum_model_size(sis_rank, truth);
        r["mms_sis"] = mms2;
        mms_sis.push_back(mms2);
      } else {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (int j = 0; j < spec.p; ++j) {
          const bool is_true = std::find(truth.begin(), truth.end(), j) != truth.end();
          if (is_true) lo = std::min(lo, sr.u[j]);
          else hi = std::max(hi, sr.u[j]);
        }
        r["min_true_u"] = lo;
        r["max_false_u"] = hi;
        min_true.push_back(lo);
        max_false.push_back(hi);
      }
    } else {
      nis::SimSpec test_spec = spec;
      test_spec.n = test_n;
      const Dataset test = nis::generate(test_spec, rng);
      const SplineBasis basis = build_basis(train, args.basis);
      nis::InisConfig cfg = inis_config_from(args, args.method == "greedy");
      cfg.seed = nis::derive_seed(spec.seed, 0x1000000ULL + rep);
      const nis::InisResult result = nis::run_inis(train, basis, cfg);
      const nis::SelMetrics m = nis::selection_metrics(result.selected, truth);
      const double pe =
          nis::prediction_error(nis::predict(result.model.coef, basis, test.w, test.x), test.y);
      tps.push_back(m.tp);
      fps.push_back(m.fp);
      pes.push_back(pe);
      sizes.push_back(static_cast<double>(result.selected.size()));
      r["tp"] = m.tp;
      r["fp"] = m.fp;
      r["pe"] = pe;
      r["size"] = result.selected.size();
      r["iterations"] = result.iterations;
      r["termination"] = nis::to_string(result.termination);
      r["selected"] = nis::covariates_json(result.selected, train.names);
      std::cout << "rep " << rep << ": tp=" << m.tp << " fp=" << m.fp << " pe=" << pe << " ("
                << result.iterations << " iters)\n";
    }
    reps.push_back(r);
  }

  json summary = json::array();
  if (!tps.empty()) {
    summary.push_back(summarize("tp", tps));
    summary.push_back(summarize("fp", fps));
    summary.push_back(summarize("pe", pes));
    summary.push_back(summarize("size", sizes));
    std::cout << "medians: tp=" << nis::median(tps) << " fp=" << nis::median(fps)
              << " pe=" << nis::median(pes) << "\n";
  }
  if (!mms_nis.empty()) {
    summary.push_back(summarize("mms_nis", mms_nis));
    std::cout << "median NIS minimum model size: " << nis::median(mms_nis) << "\n";
  }
  if (!mms_sis.empty()) {
    summary.push_back(summarize("mms_sis", mms_sis));
    std::cout << "median SIS minimum model size: " << nis::median(mms_sis) << "\n";
  }
  if (!min_true.empty()) {
    summary.push_back(summarize("min_true_u", min_true));
    summary.push_back(summarize("max_false_u", max_false));
    std::cout << "median min-true-u=" << nis::median(min_true)
              << " median max-false-u=" << nis::median(max_false) << "\n";
  }

  if (!args.out.empty()) {
    json config{{"example", args.example}, {"method", args.method},
                {"n", args.n},             {"p", args.p},
                {"s", args.s},             {"t1", args.t1},
                {"t2", args.t2},           {"reps", args.reps},
                {"test_n", test_n},        {"seed", args.seed},
                {"basis_size", args.basis.basis_size}, {"degree", args.basis.degree},
                {"init_k", args.init_k},   {"p0", args.p0},
                {"rounds", args.rounds},   {"q", args.q},
                {"zeta", args.zeta},       {"max_iter", args.max_iter}};
    json out;
    out["report_version"] = nis::kReportVersion;
    out["command"] = "simulate";
    out["config"] = config;
    out["snr_mc"] = snr;
    out["results"] = json{{"replicates", reps}, {"summary", summary}};
    nis::write_report(args.out, out);
    std::cout << "report written to " << args.out << "\n";
  }
  std::cerr << "[simulate] wall time " << seconds_since(start) << " s\n";
  return 0;
}

// ----------------------------------------------------------------- bench ---

struct BenchArgs {
  int n = 400;
  int p = 1000;
  int reps = 3;
  int workers = 0;
  std::uint64_t seed = 0;
  BasisOpts basis;
};

int cmd_bench(const BenchArgs& args) {
  nis::SimSpec spec;
  spec.example = nis::Example::ex3;
  spec.n = args.n;
  spec.p = args.p;
  spec.seed = args.seed;
  const Dataset data = nis::generate_replicate(spec, 0);
  const SplineBasis basis = build_basis(data, args.basis);
  const int workers = nis::resolve_workers(args.workers);

  auto time_screen = [&](int nworkers) {
    nis::ScreenOptions opt;
    opt.workers = nworkers;
    double best = std::numeric_limits<double>::infinity();
    nis::ScreenReport report;
    for (int r = 0; r < args.reps; ++r) {
      const auto t0 = std::chrono::steady_clock::now();
      report = nis::screen_all(data, basis, opt);
      best = std::min(best, seconds_since(t0));
    }
    return std::pair{best, report};
  };

  const auto [t_serial, serial] = time_screen(1);
  const auto [t_par, parallel] = time_screen(workers);

  const auto t0 = std::chrono::steady_clock::now();
  const auto ref = nis::reference::screen_utilities_serial(data, args.basis.basis_size,
                                                           args.basis.degree);
  const double t_ref = seconds_since(t0);

  double max_diff_ref = 0.0;
  bool bitwise = true;
  for (int j = 0; j < data.p(); ++j) {
    max_diff_ref = std::max(max_diff_ref, std::abs(serial.u[j] - ref[j]));
    if (parallel.u[j] != serial.u[j]) bitwise = false;
  }

  std::cout << "screen_all n=" << args.n << " p=" << args.p << " L=" << args.basis.basis_size
            << " (best of " << args.reps << ")\n"
            << "  library, 1 worker:   " << t_serial << " s\n"
            << "  library, " << workers << " worker(s): " << t_par << " s\n"
            << "  reference serial:    " << t_ref << " s\n"
            << "  max |u - u_ref| = " << max_diff_ref << "\n"
            << "  parallel/serial results bitwise identical: " << (bitwise ? "yes" : "NO") << "\n";
  if (!bitwise) throw nis::NumericError("parallel screen diverged from the 1-worker run");
  if (!(max_diff_ref <= 1e-8))
    throw nis::NumericError("library screen disagrees with the serial reference beyond 1e-8");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonparametric independence screening for varying-coefficient regression"};
  app.require_subcommand(1);

  ScreenArgs screen_args;
  CLI::App* screen = app.add_subcommand("screen", "rank covariates by marginal utility");
  add_data_opts(screen, screen_args.data);
  add_basis_opts(screen, screen_args.basis);
  screen->add_flag("--standardize", screen_args.standardize, "standardize covariate columns");
  screen->add_flag("--permute", screen_args.permute, "compute a permutation threshold");
  screen->add_option("--rounds", screen_args.rounds, "permutation rounds");
  screen->add_option("--q", screen_args.q, "q-th largest pooled null utility");
  screen->add_option("--seed", screen_args.seed, "random seed");
  screen->add_option("--workers", screen_args.workers, "worker threads (0 = NIS_WORKERS/auto)");
  screen->add_option("--top", screen_args.top, "covariates to print");
  screen->add_option("--out", screen_args.out, "write a JSON report here");

  InisArgs inis_args;
  CLI::App* inis = app.add_subcommand("inis", "iterated screening and penalized selection");
  add_data_opts(inis, inis_args.data);
  add_basis_opts(inis, inis_args.basis);
  inis->add_option("--variant", inis_args.variant, "conditional or greedy")
      ->check(CLI::IsMember({"conditional", "greedy"}));
  inis->add_option("--init-k", inis_args.init_k, "initial conditioning set size");
  inis->add_option("--conditioning", inis_args.conditioning,
                   "explicit 1-based conditioning indices")->delimiter(',');
  inis->add_option("--p0", inis_args.p0, "greedy recruits per iteration");
  inis->add_option("--rounds", inis_args.rounds, "permutation rounds");
  inis->add_option("--q", inis_args.q, "q-th largest pooled null utility");
  inis->add_option("--zeta", inis_args.zeta, "model-size cap (0 = n/(L ln n))");
  inis->add_option("--max-iter", inis_args.max_iter, "iteration budget");
  inis->add_option("--num-lambda", inis_args.num_lambda, "penalty grid size");
  inis->add_option("--scad-a", inis_args.scad_a, "SCAD shape parameter");
  inis->add_flag("--standardize", inis_args.standardize, "standardize covariate columns");
  inis->add_option("--seed", inis_args.seed, "random seed");
  inis->add_option("--workers", inis_args.workers, "worker threads (0 = NIS_WORKERS/auto)");
  inis->add_option("--out", inis_args.out, "write a JSON report here");

  SimulateArgs sim_args;
  CLI::App* sim = app.add_subcommand("simulate", "replicate synthetic or housing experiments");
  sim->add_option("--example", sim_args.example, "ex1, ex2, ex3, ex4 or housing");
  sim->add_option("--method", sim_args.method, "screen, mms, cinis or greedy")
      ->check(CLI::IsMember({"screen", "mms", "cinis", "greedy"}));
  sim->add_option("--n", sim_args.n, "training sample size");
  sim->add_option("--p", sim_args.p, "number of covariates");
  sim->add_option("--s", sim_args.s, "ex1 true-model size");
  sim->add_option("--t1", sim_args.t1, "covariate correlation control");
  sim->add_option("--t2", sim_args.t2, "exposure correlation control");
  sim->add_option("--t", sim_args.t, "housing augmentation weight");
  sim->add_option("--reps", sim_args.reps, "number of replicates");
  sim->add_option("--test-n", sim_args.test_n, "held-out rows (-1 = default)");
  add_basis_opts(sim, sim_args.basis);
  sim->add_option("--data", sim_args.data_path, "housing CSV (with --example housing)");
  sim->add_option("--init-k", sim_args.init_k, "conditional variant initial set size");
  sim->add_option("--p0", sim_args.p0, "greedy recruits per iteration");
  sim->add_option("--rounds", sim_args.rounds, "permutation rounds");
  sim->add_option("--q", sim_args.q, "q-th largest pooled null utility");
  sim->add_option("--zeta", sim_args.zeta, "model-size cap (0 = n/(L ln n))");
  sim->add_option("--max-iter", sim_args.max_iter, "iteration budget");
  sim->add_option("--seed", sim_args.seed, "random seed");
  sim->add_option("--workers", sim_args.workers, "worker threads (0 = NIS_WORKERS/auto)");
  sim->add_option("--out", sim_args.out, "write a JSON report here");
  sim->add_option("--dump-train", sim_args.dump_train, "write replicate-0 training CSV here");

  BenchArgs bench_args;
  CLI::App* bench = app.add_subcommand("bench", "time the screen against the serial reference");
  bench->add_option("--n", bench_args.n, "sample size");
  bench->add_option("--p", bench_args.p, "number of covariates");
  bench->add_option("--reps", bench_args.reps, "timing repetitions");
  bench->add_option("--workers", bench_args.workers, "worker threads (0 = NIS_WORKERS/auto)");
  bench->add_option("--seed", bench_args.seed, "random seed");
  add_basis_opts(bench, bench_args.basis);

  try {
    app.parse(argc, argv);
    if (screen->parsed()) return cmd_screen(screen_args);
    if (inis->parsed()) return cmd_inis(inis_args);
    if (sim->parsed()) return cmd_simulate(sim_args);
    if (bench->parsed()) return cmd_bench(bench_args);
    return 64;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 64;  // help/version exit cleanly, usage errors map to 64
  } catch (const nis::SchemaError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 65;
  } catch (const nis::InvalidBasisSize& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 64;
  } catch (const nis::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 70;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
}
