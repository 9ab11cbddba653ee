// forge: verification suites, counterexample export and transform sampling.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tempered/counterexamples.hpp"
#include "tempered/serialize.hpp"
#include "tempered/suites.hpp"

namespace {

using namespace tempered;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::size_t budget_atoms = std::size_t{1} << 20;
};

struct VerifyArgs {
  std::string suite;
  int n_max = 8;
  int m_max = 6;
  double grid_step = 0.0;
  std::vector<double> window;
  std::uint64_t seed = 0;
  std::string report;
};

struct ExportArgs {
  std::string construction;
  std::string format;
  std::string out;
  double a = 0.0, b = 0.0, A = 10.0;
  int n = 1, m = 1, M = 1, N = 1;
  std::size_t samples = 4096;
};

struct SampleArgs {
  std::string source;
  std::vector<double> window{0.0, 10.0};
  double step = 0.01;
  std::string out;
  double a = 0.0, b = 0.0, A = 10.0;
  int n = 1, m = 1, M = 1;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << text;
  if (!os) throw std::runtime_error("write to " + path + " failed");
}

// a, b default to the first q-independent pair.
std::pair<double, double> ks_pair(double a, double b) {
  if (a > 0.0 && b > 0.0) return {a, b};
  const KSParameters p = q_independent_sample(1);
  return {p.a[0], p.b[0]};
}

int run_verify(const VerifyArgs& v, const Common& c) {
  SuiteOptions opt;
  opt.n_max = v.n_max;
  opt.m_max = v.m_max;
  opt.seed = v.seed;
  opt.budgets.atoms = c.budget_atoms;
  if (v.grid_step > 0.0) opt.grid_step = v.grid_step;
  if (!v.window.empty()) opt.window = Window::interval(v.window.at(0), v.window.at(1));
  SuiteReport report;
  try {
    report = run_suite(v.suite, opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return kExitUsage;
  }
  std::size_t passed = 0;
  for (const Claim& claim : report.claims.claims) {
    passed += claim.pass ? 1 : 0;
    if (!claim.pass) {
      std::cout << "FAIL " << claim.id << ": " << format_double(claim.lhs) << ' ' << claim.relation << ' '
                << format_double(claim.rhs) << " (tol " << format_double(claim.tolerance) << ")\n";
    }
  }
  for (const std::string& e : report.errors) std::cout << "ERROR " << e << '\n';
  std::printf("%s: %zu/%zu claims pass, %.2f s, %s\n", report.name.c_str(), passed,
              report.claims.claims.size(), report.runtime_seconds,
              report.pass() ? "PASS" : (report.budget_exceeded ? "BUDGET EXCEEDED" : "FAIL"));
  if (!v.report.empty()) write_file(v.report, dump(to_json(report)) + "\n");
  return report.exit_code();
}

int run_export(const ExportArgs& x, const Common& c) {
  const std::string& id = x.construction;
  const bool density = id == "g" || id == "g-n";
  const std::string format = x.format.empty() ? (density ? "csv" : "json") : x.format;
  std::ostringstream os;
  if (density) {
    if (format != "csv") throw CLI::ValidationError("--format", "densities export as csv");
    const CompactFunction g = id == "g" ? construct_g(x.A).g : make_g_n(x.n).g;
    write_density_csv(os, g, x.samples);
  } else {
    if (format != "json") throw CLI::ValidationError("--format", "measures export as json");
    Json j;
    if (id == "ks-block") {
      const auto [a, b] = ks_pair(x.a, x.b);
      j = to_json(ks_block(a, b));
    } else if (id == "nu") {
      j = to_json(make_nu(q_independent_sample(x.n)).enumerate(c.budget_atoms));
    } else if (id == "omega") {
      const OmegaBlock w = make_omega(x.m);
      j["m"] = w.m;
      j["n"] = w.n;
      j["scale"] = w.scale;
      j["sup_est"] = to_json(w.sup_est);
      j["measure"] = to_json(w.omega);
      j["report"] = to_json(w.report);
    } else if (id == "discrete") {
      j = to_json(discrete_counterexample(x.M));
    } else if (id == "continuous") {
      const ContinuousCounterexample mu = continuous_counterexample(x.N);
      j["measure"] = to_json(mu.measure);
      j["report"] = to_json(mu.report);
    } else {
      throw CLI::ValidationError("construction", "unknown construction " + id);
    }
    os << dump(j) << '\n';
  }
  if (x.out.empty()) {
    std::cout << os.str();
  } else {
    write_file(x.out, os.str());
  }
  return kExitPass;
}

int run_sample(const SampleArgs& s, const Common& c) {
  const std::string& id = s.source;
  std::optional<FTEvaluator> e;
  if (id == "ks-block") {
    const auto [a, b] = ks_pair(s.a, s.b);
    e.emplace(ks_block(a, b));
  } else if (id == "nu") {
    e.emplace(make_nu(q_independent_sample(s.n)));
  } else if (id == "omega") {
    e.emplace(make_omega(s.m).omega);
  } else if (id == "discrete") {
    e.emplace(discrete_counterexample(s.M));
  } else if (id == "g") {
    e.emplace(construct_g(s.A).g);
  } else if (id == "g-n") {
    e.emplace(make_g_n(s.n).g);
  } else {
    throw CLI::ValidationError("source", "unknown source " + id);
  }
  (void)c;
  std::ostringstream os;
  write_ft_samples_csv(os, *e, Window::interval(s.window.at(0), s.window.at(1)), s.step);
  if (s.out.empty()) {
    std::cout << os.str();
  } else {
    write_file(s.out, os.str());
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: tempered-measure counterexamples and their verification"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--budget-atoms", common.budget_atoms, "Enumeration budget (atoms)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Run a verification suite");
  v->add_option("suite", verify.suite, "ks, omega, discrete, continuous, plateau, growth or all")->required();
  v->add_option("--n-max", verify.n_max, "Largest n for the nu_n exactness checks")->check(CLI::Range(1, 10));
  v->add_option("--m-max", verify.m_max, "Largest m for the omega_m checks")->check(CLI::Range(1, 30));
  v->add_option("--grid-step", verify.grid_step, "Sup-search grid step")->check(CLI::PositiveNumber);
  v->add_option("--window", verify.window, "Sup-search window lo,hi")->delimiter(',')->expected(2);
  v->add_option("--seed", verify.seed, "Seed for randomized checks");
  v->add_option("--report", verify.report, "Write the JSON report here");
  v->add_option("--budget-atoms", common.budget_atoms, "Enumeration budget (atoms)");

  ExportArgs exp;
  auto* x = app.add_subcommand("export", "Construct and serialize a measure or density");
  x->add_option("construction", exp.construction, "ks-block, nu, omega, discrete, g, g-n or continuous")
      ->required();
  x->add_option("--format", exp.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  x->add_option("-o", exp.out, "Output path (default: stdout)");
  x->add_option("--a", exp.a, "KS parameter a");
  x->add_option("--b", exp.b, "KS parameter b");
  x->add_option("--A", exp.A, "Target mass for g")->check(CLI::PositiveNumber);
  x->add_option("--n", exp.n, "Index n for nu and g-n")->check(CLI::PositiveNumber);
  x->add_option("--m", exp.m, "Index m for omega")->check(CLI::PositiveNumber);
  x->add_option("--M", exp.M, "Block count for discrete")->check(CLI::PositiveNumber);
  x->add_option("--N", exp.N, "Block count for continuous")->check(CLI::PositiveNumber);
  x->add_option("--samples", exp.samples, "Density samples")->check(CLI::Range(2, 100'000'000));
  x->add_option("--budget-atoms", common.budget_atoms, "Enumeration budget (atoms)");

  SampleArgs smp;
  auto* s = app.add_subcommand("sample-ft", "Sample a transform on a grid as CSV");
  s->add_option("source", smp.source, "ks-block, nu, omega, discrete, g or g-n")->required();
  s->add_option("--window", smp.window, "Window lo,hi")->delimiter(',')->expected(2);
  s->add_option("--grid-step", smp.step, "Grid step")->check(CLI::PositiveNumber);
  s->add_option("-o", smp.out, "Output path (default: stdout)");
  s->add_option("--a", smp.a, "KS parameter a");
  s->add_option("--b", smp.b, "KS parameter b");
  s->add_option("--A", smp.A, "Target mass for g")->check(CLI::PositiveNumber);
  s->add_option("--n", smp.n, "Index n")->check(CLI::PositiveNumber);
  s->add_option("--m", smp.m, "Index m")->check(CLI::PositiveNumber);
  s->add_option("--M", smp.M, "Block count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*v) return run_verify(verify, common);
    if (*x) return run_export(exp, common);
    return run_sample(smp, common);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "forge: budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const VerificationFailure& e) {
    std::cerr << "forge: verification failed: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return kExitFailure;
  }
}
