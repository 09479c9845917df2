#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "skewhowe/exact_oracle.hpp"
#include "skewhowe/fluctuations.hpp"
#include "skewhowe/harness.hpp"
#include "skewhowe/kernels.hpp"
#include "skewhowe/philox.hpp"
#include "skewhowe/saddle.hpp"
#include "skewhowe/sampler.hpp"
#include "skewhowe/tilings.hpp"

using namespace skewhowe;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (arg.empty() || arg.front() != '{') {
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot read " + arg);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in " + arg + ": " + e.what());
  }
}

SpecPair read_spec(const std::string& arg) {
  json j = read_json_arg(arg);
  try {
    return spec_from_json(j);
  } catch (const json::exception& e) {
    throw Error(Errc::InvalidFamily, std::string("bad spec: ") + e.what());
  }
}

json tableau_json(const Tableau& t) { return t.rows; }

Tableau tableau_from(const json& j) {
  Tableau t;
  t.rows = j.get<std::vector<std::vector<int>>>();
  return t;
}

std::ostream* open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw UsageError("cannot write " + path);
  return &file;
}

// ---------------------------------------------------------------- sample
struct SampleArgs {
  std::string spec, out;
  int n = 0, k = 0, samples = 1, threads = default_threads();
  std::uint64_t seed = 0;
  bool tableaux = false;
};

void run_sample(const SampleArgs& a) {
  SpecPair s = read_spec(a.spec);
  if (a.n < 1 || a.k < 1 || a.samples < 1) throw Error(Errc::InvalidArgument, "n, k and samples must be positive");
  std::ofstream file;
  std::ostream& os = *open_out(a.out, file);
  MatrixSampler sampler(x_values(s, a.n), y_values(s, a.k));
  auto lines = parallel_map<std::string>(a.samples, a.seed, a.threads, [&](int, std::uint64_t seed) {
    BinaryMatrix m = sampler.sample(seed);
    json j;
    j["seed"] = seed;
    if (a.tableaux) {
      TableauPair pq = dual_rsk(m);
      j["shape"] = pq.P.shape().parts();
      j["n"] = a.n;
      j["k"] = a.k;
      j["P"] = tableau_json(pq.P);
      j["Q"] = tableau_json(pq.Q);
    } else {
      j["shape"] = rsk_shape(m).parts();
    }
    return j.dump();
  });
  for (const auto& l : lines) os << l << '\n';
}

// ---------------------------------------------------------------- limitshape / support
void run_limitshape(const std::string& spec, int grid, const std::string& format) {
  SpecPair s = read_spec(spec);
  if (grid < 2) throw Error(Errc::InvalidArgument, "grid needs at least 2 points");
  LimitShape shape(s);
  if (format == "json") {
    json rows = json::array();
    for (int i = 0; i < grid; ++i) {
      double u = -1 + (s.c + 1) * i / (grid - 1);
      rows.push_back({{"u", u}, {"rho", shape.rho(u)}, {"omega", shape.omega(u)}});
    }
    std::cout << json{{"support", support_to_json(shape.support())}, {"grid", rows}}.dump() << '\n';
    return;
  }
  std::cout << "u,rho,omega\n";
  for (int i = 0; i < grid; ++i) {
    double u = -1 + (s.c + 1) * i / (grid - 1);
    std::cout << fmt_num(u) << ',' << fmt_num(shape.rho(u)) << ',' << fmt_num(shape.omega(u)) << '\n';
  }
}

void run_support(const std::string& spec) {
  SpecPair s = read_spec(spec);
  std::cout << edge_report_to_json(classify_edges(s)).dump(2) << '\n';
}

// ---------------------------------------------------------------- kernel
void run_kernel(const std::string& spec, int n, int k, double m, double mp, double tol) {
  SpecPair s = read_spec(spec);
  if (n < 1 || k < 1) throw Error(Errc::InvalidArgument, "n and k must be positive");
  KernelValue v = finite_kernel(x_values(s, n), y_values(s, k), m, mp, tol);
  std::cout << json{{"m", m}, {"mprime", mp}, {"value", v.value}, {"error_estimate", v.error}, {"nodes", v.nodes}}.dump()
            << '\n';
}

// ---------------------------------------------------------------- gap / tw
void run_gap(const std::string& mode, double s, int dmax) {
  if (dmax < 1) throw Error(Errc::InvalidArgument, "delta-max must be at least 1");
  if (mode == "hermite") {
    std::cout << "delta,gap,pmf\n";
    double prev = 1;
    for (int d = 1; d <= dmax; ++d) {
      double g = hermite_gap(s, d);
      std::cout << d << ',' << fmt_num(g) << ',' << fmt_num(prev - g) << '\n';
      prev = g;
    }
  } else {
    std::cout << "delta,gap\n";
    for (int d = 1; d <= dmax; ++d) std::cout << d << ',' << fmt_num(gtw_gap(d)) << '\n';
  }
}

void run_tw(const std::string& grid, const std::string& method) {
  double a, b, h;
  char c1, c2;
  std::istringstream is(grid);
  if (!(is >> a >> c1 >> b >> c2 >> h) || c1 != ':' || c2 != ':' || !is.eof())
    throw UsageError("--s-grid expects a:b:step");
  if (!(h > 0) || b < a) throw Error(Errc::InvalidArgument, "grid needs a <= b and step > 0");
  const long count = static_cast<long>(std::floor((b - a) / h + 1e-9)) + 1;
  if (count > 100000) throw Error(Errc::TooLarge, "grid has more than 100000 points");
  TwMethod m = method == "mapped" ? TwMethod::Mapped : TwMethod::Truncated;
  std::cout << "s,F\n";
  for (long i = 0; i < count; ++i) {
    double s = a + h * i;
    std::cout << fmt_num(s) << ',' << fmt_num(tracy_widom_cdf(s, m)) << '\n';
  }
}

// ---------------------------------------------------------------- tiling
void run_tiling(const std::string& in_path, const std::string& kind, const std::string& dir) {
  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot read " + in_path);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create " + dir);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw UsageError("line " + std::to_string(lineno) + " is not JSON");
    }
    if (!j.contains("P") || !j.contains("Q") || !j.contains("n") || !j.contains("k"))
      throw Error(Errc::InvalidArgument, "sample lines need P, Q, n and k (sample --tableaux)");
    TableauPair pq{tableau_from(j["P"]), tableau_from(j["Q"])};
    const int n = j["n"], k = j["k"];
    TilingScene sc = kind == "lozenge" ? lozenge_scene(pq, n, k) : aztec_scene(pq, n, k);
    TilingCheck chk = check_scene(sc, pq.P.shape());
    const std::string name = j["seed"].dump() + "_" + kind + ".svg";
    std::ofstream out(std::filesystem::path(dir) / name);
    if (!out) throw UsageError("cannot write " + name);
    out << render_svg(sc);
    std::cout << json{{"seed", j["seed"]}, {"file", name}, {"tiles", sc.tiles.size()}, {"valid", chk.ok()}}.dump()
              << '\n';
  }
}

// ---------------------------------------------------------------- validate
std::vector<Rational> random_rationals(std::mt19937_64& rng, int count) {
  std::vector<Rational> v;
  for (int i = 0; i < count; ++i) {
    Rational r(static_cast<long>(rng() % 9 + 1), static_cast<long>(rng() % 9 + 1));
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

void run_validate(const std::string& suite, int trials, std::uint64_t seed, const std::string& config,
                  const std::string& table, int threads) {
  std::mt19937_64 rng(seed);
  json out{{"suite", suite}};
  if (suite == "cauchy") {
    Rational worst = 0;
    for (int t = 0; t < trials; ++t) {
      int n = static_cast<int>(rng() % 4 + 1), k = static_cast<int>(rng() % 4 + 1);
      Rational r = dual_cauchy_residual(n, k, random_rationals(rng, n), random_rationals(rng, k));
      if (abs(r) > worst) worst = abs(r);
    }
    out["trials"] = trials;
    out["max_residual"] = worst.get_d();
    out["exact_zero"] = worst == 0;
  } else if (suite == "oracle") {
    double worst = 0;
    bool normalized = true;
    for (int t = 0; t < trials; ++t) {
      int n = static_cast<int>(rng() % 3 + 1), k = static_cast<int>(rng() % 3 + 1);
      auto x = random_rationals(rng, n), y = random_rationals(rng, k);
      MeasureTable tab = measure_table(n, k, x, y);
      normalized = normalized && tab.total() == 1;
      KernelMatrix km = kernel_matrix(to_double(x), to_double(y), box_window(n, k), 1e-11);
      worst = std::max(worst, determinantal_check(tab, [&](int a, int b) { return km.at_doubled(a, b); }));
    }
    out["trials"] = trials;
    out["max_residual"] = worst;
    out["normalized"] = normalized;
  } else if (suite == "identities") {
    DfReport df = verify_df_identities(50);
    double eq = 0;
    for (int d = 1; d <= 12; ++d) eq = std::max(eq, kernel_equivalence_residual(d).max());
    out["double_factorial"] = {{"checked", df.checked}, {"failures", df.failures}};
    out["kernel_equivalence_max_residual"] = eq;
    out["hermite_gap"] = {hermite_gap(0, 1), hermite_gap(0, 2)};
    out["max_residual"] = eq;
    out["pass"] = df.ok() && eq <= 1e-9;
  } else {
    if (config.empty()) throw UsageError("--suite montecarlo needs --config");
    json j = read_json_arg(config);
    ExperimentConfig cfg = config_from_json(j);
    if (!j.contains("threads")) cfg.threads = threads;
    StatReport r = run_experiment(cfg);
    if (!table.empty()) {
      std::ofstream t(table);
      if (!t) throw UsageError("cannot write " + table);
      t << r.table_csv();
    }
    out["report"] = r.to_json();
  }
  std::cout << out.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sampling, limit shapes, kernels and fluctuation statistics for the skew Howe duality measure"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "skewhowe 1.0.0");

  SampleArgs sa;
  auto* sample = app.add_subcommand("sample", "Draw diagrams as NDJSON lines {seed, shape}");
  sample->add_option("--spec", sa.spec, "Spec JSON file or inline object")->required();
  sample->add_option("--n", sa.n, "Number of x parameters")->required();
  sample->add_option("--k", sa.k, "Number of y parameters")->required();
  sample->add_option("--samples", sa.samples, "Number of samples");
  sample->add_option("--seed", sa.seed, "Base seed; per-sample seeds are derived from it")->required();
  sample->add_option("--threads", sa.threads, "Worker threads")->check(CLI::PositiveNumber);
  sample->add_option("--out", sa.out, "Output file (default stdout)");
  sample->add_flag("--tableaux", sa.tableaux, "Also write n, k and the tableaux P, Q");

  std::string ls_spec, ls_out = "csv";
  int ls_grid = 201;
  auto* limitshape = app.add_subcommand("limitshape", "Density and limit shape on a uniform grid over [-1, c]");
  limitshape->add_option("--spec", ls_spec, "Spec JSON")->required();
  limitshape->add_option("--grid", ls_grid, "Grid points");
  limitshape->add_option("--out", ls_out, "Output format")->check(CLI::IsMember({"csv", "json"}));

  std::string sp_spec;
  auto* support = app.add_subcommand("support", "Support intervals and edge classification as JSON");
  support->add_option("--spec", sp_spec, "Spec JSON")->required();

  std::string k_spec;
  int kn = 0, kk = 0;
  double km = 0, kmp = 0, ktol = 1e-9;
  auto* kernel = app.add_subcommand("kernel", "Finite correlation kernel K(m, m')");
  kernel->add_option("--spec", k_spec, "Spec JSON")->required();
  kernel->add_option("--n", kn, "Number of x parameters")->required();
  kernel->add_option("--k", kk, "Number of y parameters")->required();
  kernel->add_option("--m", km, "Half-integer position")->required();
  kernel->add_option("--mprime", kmp, "Half-integer position")->required();
  kernel->add_option("--tol", ktol, "Relative tolerance")->check(CLI::PositiveNumber);

  std::string g_mode;
  double g_s = 0;
  int g_dmax = 0;
  auto* gap = app.add_subcommand("gap", "Corner gap probabilities as CSV");
  gap->add_option("--mode", g_mode, "hermite or gtw")->required()->check(CLI::IsMember({"hermite", "gtw"}));
  gap->add_option("--s", g_s, "Shift of the discrete Hermite kernel");
  gap->add_option("--delta-max", g_dmax, "Largest gap size")->required();

  std::string tw_grid, tw_method = "truncated";
  auto* tw = app.add_subcommand("tw", "Tracy-Widom GUE distribution as CSV");
  tw->add_option("--s-grid", tw_grid, "a:b:step")->required();
  tw->add_option("--method", tw_method, "Discretization")->check(CLI::IsMember({"truncated", "mapped"}));

  std::string t_in, t_kind, t_out;
  auto* tiling = app.add_subcommand("tiling", "Render sampled tableau pairs as SVG tilings");
  tiling->add_option("--in", t_in, "NDJSON from sample --tableaux")->required();
  tiling->add_option("--kind", t_kind, "lozenge or aztec")->required()->check(CLI::IsMember({"lozenge", "aztec"}));
  tiling->add_option("--out", t_out, "Output directory")->required();

  std::string v_suite, v_config, v_table;
  int v_trials = 100, v_threads = default_threads();
  std::uint64_t v_seed = 1;
  auto* validate = app.add_subcommand("validate", "Exact identities, oracle checks and Monte Carlo reports");
  validate->add_option("--suite", v_suite, "cauchy, oracle, identities or montecarlo")
      ->required()
      ->check(CLI::IsMember({"cauchy", "oracle", "identities", "montecarlo"}));
  validate->add_option("--trials", v_trials, "Random parameter sets")->check(CLI::PositiveNumber);
  validate->add_option("--seed", v_seed, "Seed for random parameter sets");
  validate->add_option("--config", v_config, "Experiment JSON (montecarlo)");
  validate->add_option("--table", v_table, "Write the plot-ready table as CSV");
  validate->add_option("--threads", v_threads, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) run_sample(sa);
    if (*limitshape) run_limitshape(ls_spec, ls_grid, ls_out);
    if (*support) run_support(sp_spec);
    if (*kernel) run_kernel(k_spec, kn, kk, km, kmp, ktol);
    if (*gap) run_gap(g_mode, g_s, g_dmax);
    if (*tw) run_tw(tw_grid, tw_method);
    if (*tiling) run_tiling(t_in, t_kind, t_out);
    if (*validate) run_validate(v_suite, v_trials, v_seed, v_config, v_table, v_threads);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cout << json{{"error", e.name()}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
  return 0;
}
