#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "soblab/config.hpp"
#include "soblab/corpus.hpp"
#include "soblab/exponents.hpp"
#include "soblab/inequalities.hpp"
#include "soblab/projection.hpp"
#include "soblab/sobolev_core.hpp"

namespace soblab {

// Explicit constants of the reduction inequality, by branch:
//   p <  2: C1 = 2^{p'},  C2 = p' 2^{p'-1}
//   p >= 2: C1 = 2^{p},   C2 = p  2^{p-1}
struct ReductionConstants {
  double c1 = 0.0;
  double c2 = 0.0;
};
ReductionConstants reduction_constants(const Exponents& e);
ReductionConstants reduction_constants_branch(const Exponents& e, Branch b);

enum class Verdict { Certified, Violated, Inconclusive };
std::string verdict_name(Verdict v);

// Per-sample evidence for
//   (||grad u - grad v||_p / ||u||_{p*})^alpha <= C1 delta(u) + C2 ||u-v||_{p*}/||u||_{p*}
// Certified iff slack >= -budget, Violated iff slack < -10*budget; the band
// in between is Inconclusive (quadrature noise, not a counterexample).
struct CertificateRecord {
  int sample_id = 0;
  int n = 0;
  double p = 0.0;
  double eps = 0.0;
  std::string kind;
  double lhs = 0.0;
  double deficit_term = 0.0;
  double distance_term = 0.0;
  double slack = 0.0;
  double slack_budget = 0.0;
  Verdict verdict = Verdict::Inconclusive;
  // extras not part of the fixed CSV schema
  double lhs_budget = 0.0;       // budget share of the lhs alone
  double order_slack = 0.0;      // linear deficit <= deficit check
  double order_budget = 0.0;
  std::string error;             // nonempty when the sample failed
};

Verdict classify(double slack, double budget);

// v is given by its parameters; requires ||u||_{p*} = ||v||_{p*} to 1e-6
// relative (normalize first), throws std::invalid_argument otherwise.
CertificateRecord reduction_certificate(const TestFunction& u,
                                        const BubbleParams& v,
                                        const Exponents& e,
                                        const QuadratureScheme& scheme,
                                        double shrink = 1.0,
                                        Branch* force_branch = nullptr);

// (||grad u||_p - S||u||_{p*})/||u||_{p*} <= delta(u)
SlackResult order_deficits_check(const TestFunction& u, const Exponents& e,
                                 const QuadratureScheme& scheme);

// Empirical witness for the corollary: ratio = delta(u) / A(u)^beta, where
// the found A(u) is an upper bound, so the ratio is a valid lower bound for
// the (non-explicit) constant. log10_ratio avoids double overflow at the
// very large beta values.
struct RatioRecord {
  int sample_id = 0;
  double asymmetry_upper = 0.0;
  double deficit_val = 0.0;
  double ratio = 0.0;
  double log10_ratio = 0.0;
  bool caveat = false;    // projection did not flag convergence
  bool excluded = false;  // asymmetry below the 1e-6 floor
};

RatioRecord corollary_ratio(const TestFunction& u, const Exponents& e,
                            const QuadratureScheme& scheme,
                            const ProjectionOptions& opt = {});

struct CorpusReport {
  RunConfig config;
  std::vector<CertificateRecord> records;
  std::vector<RatioRecord> ratios;
  int certified = 0;
  int violated = 0;
  int inconclusive = 0;
  int errors = 0;
  double min_slack = 0.0;
  double min_order_slack = 0.0;
  double max_log10_ratio = 0.0;
  bool has_ratios = false;
};

// Samples are processed in parallel; records land at their sample index and
// aggregates are reduced serially, so the report is deterministic in
// (config, seed) regardless of thread count. Per-sample errors are recorded,
// never fatal.
CorpusReport run_corpus(const RunConfig& config);

// re-evaluates stored verdicts under constants divided by `factor`
// (no quadrature; terms are linear in the constants)
void reclassify_with_shrink(CorpusReport& report, double factor);

void write_csv(const CorpusReport& report, std::ostream& os);
void write_json(const CorpusReport& report, std::ostream& os);
void write_report_file(const CorpusReport& report);  // honors config format/path

}  // namespace soblab
