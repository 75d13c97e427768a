// soblab: numerical laboratory for gradient-level stability of the Sobolev
// inequality. Subcommands: constant, certify, clarkson, asymmetry, corpus.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "soblab/certify.hpp"
#include "soblab/config.hpp"
#include "soblab/corpus.hpp"
#include "soblab/inequalities.hpp"
#include "soblab/projection.hpp"
#include "soblab/rng.hpp"
#include "soblab/sobolev_core.hpp"

namespace {

using namespace soblab;

int cmd_constant(int n, double p, int resolution) {
  Exponents e;
  try {
    e = make_exponents(n, p);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  QuadratureScheme scheme;
  scheme.radial_resolution = resolution;
  const SobolevConstant S = sobolev_constant(e, scheme);
  std::cout << "S(" << n << "," << format_g17(p) << ") = " << format_g17(S.value)
            << "  delta = " << format_g17(S.delta)
            << "  resolution = " << resolution << "\n";
  return 0;
}

struct CliOverrides {
  CLI::App* cmd = nullptr;
  RunConfig flags;
  std::string config_file;

  void attach(CLI::App* app) {
    cmd = app;
    cmd->add_option("--config", config_file, "config file (key = value lines)");
    cmd->add_option("--n", flags.n, "dimension (2 or 3 for tensor grids)");
    cmd->add_option("--p", flags.p, "exponent in (1,n)");
    cmd->add_option("--samples", flags.samples, "corpus size");
    cmd->add_option("--eps", flags.eps_grid, "eps grid (comma separated)")
        ->delimiter(',');
    cmd->add_option("--kinds", flags.kinds,
                    "perturbation kinds: gaussian,compact,tangent")
        ->delimiter(',');
    cmd->add_option("--resolution", flags.resolution,
                    "tensor nodes per axis (power of two >= 64)");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--output", flags.output_path, "report path");
    cmd->add_option("--format", flags.format, "csv or json");
    cmd->add_option("--shrink-constants", flags.shrink_constants,
                    "divide C1 and C2 (checker mutation test)");
    cmd->add_option("--ratio-stride", flags.ratio_stride,
                    "corollary ratio study on every k-th sample (0 = off)");
    cmd->add_flag("--project-v", flags.project_v,
                  "also certify against the projected bubble");
    cmd->add_option("--threads", flags.threads, "worker threads (0 = auto)");
  }

  // defaults, then file values, then explicitly passed flags
  RunConfig resolve() const {
    RunConfig c;
    if (!config_file.empty()) c = load_config_file(config_file, c);
    auto passed = [&](const std::string& name) {
      return cmd->count(name) > 0;
    };
    if (passed("--n")) c.n = flags.n;
    if (passed("--p")) c.p = flags.p;
    if (passed("--samples")) c.samples = flags.samples;
    if (passed("--eps")) c.eps_grid = flags.eps_grid;
    if (passed("--kinds")) c.kinds = flags.kinds;
    if (passed("--resolution")) c.resolution = flags.resolution;
    if (passed("--seed")) c.seed = flags.seed;
    if (passed("--output")) c.output_path = flags.output_path;
    if (passed("--format")) c.format = flags.format;
    if (passed("--shrink-constants")) c.shrink_constants = flags.shrink_constants;
    if (passed("--ratio-stride")) c.ratio_stride = flags.ratio_stride;
    if (passed("--project-v")) c.project_v = flags.project_v;
    if (passed("--threads")) c.threads = flags.threads;
    return c;
  }
};

int cmd_certify(const RunConfig& config) {
  const CorpusReport report = run_corpus(config);
  write_report_file(report);
  std::cout << "samples = " << report.records.size()
            << "  certified = " << report.certified
            << "  violated = " << report.violated
            << "  inconclusive = " << report.inconclusive
            << "  errors = " << report.errors << "\n";
  std::cout << "min slack = " << format_g17(report.min_slack)
            << "  min order slack = " << format_g17(report.min_order_slack)
            << "\n";
  if (report.has_ratios)
    std::cout << "max log10 ratio = " << format_g17(report.max_log10_ratio)
              << "  (empirical lower bound witness for the corollary constant)\n";
  std::cout << "report written to " << config.output_path << "\n";
  return report.violated > 0 ? 1 : 0;
}

int cmd_clarkson(double p, long trials, std::uint64_t seed) {
  if (trials < 1) {
    std::cerr << "error: trials must be >= 1\n";
    return 2;
  }
  if (!(p > 1.0)) {
    std::cerr << "error: p must exceed 1\n";
    return 2;
  }
  Rng rng(seed);
  struct Row {
    const char* name;
    double min_slack = 0.0;
    long violations = 0;
    bool ran = false;
  };
  std::vector<Row> rows;
  auto track = [](Row& row, const SlackResult& s) {
    row.ran = true;
    const double ns = normalized_slack(s);
    if (!row.ran || ns < row.min_slack) row.min_slack = std::min(row.min_slack, ns);
    if (!s.holds) ++row.violations;
  };

  const bool sub2 = p < 2.0;
  Row scalar{"clarkson_scalar"}, pointwise{"clarkson_pointwise"},
      super{"clarkson_pointwise_super"}, mink{"reverse_minkowski_finite"},
      mono{"elementary_monotone"};

  for (long t = 0; t < trials; ++t) {
    if (sub2) {
      const double a1 = rng.uniform(-10, 10);
      const double b1 = rng.uniform(-10, 10);
      track(scalar, clarkson_scalar(a1, b1, p));
      VecN F{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
      VecN G{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
      track(pointwise, clarkson_pointwise(F, G, p));
      const double s = 2.0 * (p - 1.0) / p;  // 2/p'
      VecN a{rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)};
      VecN b{rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)};
      track(mink, reverse_minkowski_finite(a, b, s));
    } else {
      VecN F{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
      VecN G{rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)};
      track(super, clarkson_pointwise_super(F, G, p));
      VecN a{rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)};
      VecN b{rng.uniform(0, 100), rng.uniform(0, 100), rng.uniform(0, 100)};
      const double s = rng.uniform(0.05, 0.95);
      track(mink, reverse_minkowski_finite(a, b, s));
    }
    const double bb = rng.uniform(1.0, 50.0);
    const double aa = bb + rng.uniform(0.0, 50.0);
    const double qq = rng.uniform(1.0, 5.0);
    track(mono, elementary_monotone(aa, bb, qq));
  }
  rows = {scalar, pointwise, super, mink, mono};
  bool all_hold = true;
  for (const Row& r : rows) {
    if (!r.ran) continue;
    std::printf("%-28s min normalized slack = %.3e  violations = %ld\n", r.name,
                r.min_slack, r.violations);
    if (r.violations > 0) all_hold = false;
  }
  return all_hold ? 0 : 1;
}

int cmd_asymmetry(const std::string& spec, int n, double p, int resolution) {
  Exponents e;
  try {
    e = make_exponents(n, p);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(spec);
  } catch (const nlohmann::json::parse_error& ex) {
    std::cerr << "spec parse error at byte " << ex.byte << ": " << ex.what()
              << "\n";
    return 2;
  }
  TestFunction u;
  try {
    u = function_from_spec_json(j, e);
  } catch (const std::exception& ex) {
    std::cerr << "spec error: " << ex.what() << "\n";
    return 2;
  }
  QuadratureScheme scheme;
  scheme.resolution = resolution;
  scheme.radial_resolution = std::max(256, 2 * resolution);
  const ProjectionResult A = asymmetry_gradient(u, e, scheme);
  const ProjectionResult L = asymmetry_lpstar(u, e, scheme);
  auto print = [&](const char* name, const ProjectionResult& r) {
    std::cout << name << " = " << format_g17(r.value) << "\n  argmin: c = "
              << format_g17(r.argmin.c)
              << "  scale = " << format_g17(r.argmin.lam_scale) << "  center = (";
    for (int d = 0; d < n; ++d)
      std::cout << (d ? ", " : "") << format_g17(r.argmin.center[d]);
    std::cout << ")\n  multistarts = " << r.multistart_count
              << "  converged = " << (r.converged ? "yes" : "no") << "\n";
  };
  print("gradient asymmetry A(u)", A);
  print("lpstar asymmetry", L);
  return 0;
}

int cmd_corpus(const RunConfig& config) {
  const Exponents e = make_exponents(config.n, config.p);
  const std::vector<SampleSpec> specs = generate_corpus(config, e);
  nlohmann::json j;
  j["config"] = nlohmann::json::parse("{}");
  {
    nlohmann::json c;
    std::istringstream kv(config_to_kv(config));
    std::string line;
    while (std::getline(kv, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      c[line.substr(0, eq - 1)] = line.substr(eq + 2);
    }
    j["config"] = c;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const SampleSpec& s : specs) arr.push_back(sample_to_json(s));
  j["samples"] = arr;
  std::ofstream f(config.output_path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open " << config.output_path << "\n";
    return 2;
  }
  f << j.dump(2) << "\n";
  std::cout << "wrote " << specs.size() << " sample specs to "
            << config.output_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical stability laboratory for the Sobolev inequality"};
  app.require_subcommand(1);

  // constant
  auto* constant = app.add_subcommand("constant", "compute S(n,p)");
  int cn = 3;
  double cp = 2.0;
  int cres = 512;
  constant->add_option("--n", cn, "dimension")->required();
  constant->add_option("--p", cp, "exponent in (1,n)")->required();
  constant->add_option("--resolution", cres, "radial nodes");

  // certify
  auto* certify = app.add_subcommand("certify", "run a certification corpus");
  CliOverrides cert_over;
  cert_over.attach(certify);

  // clarkson
  auto* clark = app.add_subcommand("clarkson", "inequality property sweep");
  double kp = 1.5;
  long ktrials = 100000;
  std::uint64_t kseed = 7;
  clark->add_option("--p", kp, "exponent > 1")->required();
  clark->add_option("--trials", ktrials, "number of random trials");
  clark->add_option("--seed", kseed, "RNG seed");

  // asymmetry
  auto* asym = app.add_subcommand("asymmetry", "project a function onto M");
  std::string spec;
  int an = 2;
  double ap = 1.5;
  int ares = 64;
  asym->add_option("--spec", spec, "inline JSON function description")->required();
  asym->add_option("--n", an, "dimension")->required();
  asym->add_option("--p", ap, "exponent in (1,n)")->required();
  asym->add_option("--resolution", ares, "tensor nodes per axis");

  // corpus
  auto* corpus = app.add_subcommand("corpus", "generate and save a corpus spec");
  CliOverrides corp_over;
  corp_over.attach(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (constant->parsed()) return cmd_constant(cn, cp, cres);
    if (certify->parsed()) {
      RunConfig c = cert_over.resolve();
      c.validate();
      return cmd_certify(c);
    }
    if (clark->parsed()) return cmd_clarkson(kp, ktrials, kseed);
    if (asym->parsed()) return cmd_asymmetry(spec, an, ap, ares);
    if (corpus->parsed()) {
      RunConfig c = corp_over.resolve();
      c.validate();
      return cmd_corpus(c);
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return 2;
  } catch (const std::domain_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
