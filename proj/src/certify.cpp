#include "soblab/certify.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace soblab {

ReductionConstants reduction_constants_branch(const Exponents& e, Branch b) {
  ReductionConstants c;
  if (b == Branch::SubTwo) {
    c.c1 = std::pow(2.0, e.p_prime);
    c.c2 = e.p_prime * std::pow(2.0, e.p_prime - 1.0);
  } else {
    c.c1 = std::pow(2.0, e.p);
    c.c2 = e.p * std::pow(2.0, e.p - 1.0);
  }
  return c;
}

ReductionConstants reduction_constants(const Exponents& e) {
  return reduction_constants_branch(e, e.branch());
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Certified: return "Certified";
    case Verdict::Violated: return "Violated";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

Verdict classify(double slack, double budget) {
  if (slack >= -budget) return Verdict::Certified;
  if (slack < -10.0 * budget) return Verdict::Violated;
  return Verdict::Inconclusive;
}

CertificateRecord reduction_certificate(const TestFunction& u,
                                        const BubbleParams& v,
                                        const Exponents& e,
                                        const QuadratureScheme& scheme,
                                        double shrink, Branch* force_branch) {
  const Branch b = force_branch ? *force_branch : e.branch();
  CertificateRecord rec;
  rec.n = e.n;
  rec.p = e.p;

  const TestFunction vf = make_bubble(v, e);
  const NormResult norm_u = lp_norm(u, e.p_star, e, scheme);
  const NormResult norm_v = lp_norm(vf, e.p_star, e, scheme);
  if (!(norm_u.value > 0.0))
    throw std::domain_error("certificate undefined: ||u||_{p*} = 0");
  if (std::abs(norm_u.value - norm_v.value) > 1e-6 * norm_v.value)
    throw std::invalid_argument(
        "reduction certificate requires ||u||_{p*} = ||v||_{p*} (normalize first)");

  ReductionConstants C = reduction_constants_branch(e, b);
  C.c1 /= shrink;
  C.c2 /= shrink;
  const double alpha = b == Branch::SubTwo ? e.p_prime : e.p;

  const DeficitValue d = deficit_branch(u, e, scheme, b);
  const NormResult gdist = gradient_distance(u, vf, e, scheme);
  const TestFunction diff = linear_combo(1.0, u, -1.0, vf);
  const NormResult fdist = lp_norm(diff, e.p_star, e, scheme);

  const double B = norm_u.value;
  const double relB = norm_u.delta / B;

  const double ratio = gdist.value / B;
  rec.lhs = std::pow(ratio, alpha);
  rec.lhs_budget =
      rec.lhs > 0.0
          ? alpha * rec.lhs * (gdist.value > 0.0 ? gdist.delta / gdist.value + relB : relB)
          : 0.0;

  rec.deficit_term = C.c1 * d.value;
  const double deficit_budget = C.c1 * d.numerical_slack;

  rec.distance_term = C.c2 * fdist.value / B;
  const double distance_budget =
      rec.distance_term > 0.0
          ? rec.distance_term *
                ((fdist.value > 0.0 ? fdist.delta / fdist.value : 0.0) + relB)
          : C.c2 * fdist.delta / B;

  rec.slack = rec.deficit_term + rec.distance_term - rec.lhs;
  rec.slack_budget = rec.lhs_budget + deficit_budget + distance_budget + 1e-12;
  rec.verdict = classify(rec.slack, rec.slack_budget);
  return rec;
}

SlackResult order_deficits_check(const TestFunction& u, const Exponents& e,
                                 const QuadratureScheme& scheme) {
  const NormResult lin = linear_deficit(u, e, scheme);
  const DeficitValue d = deficit(u, e, scheme);
  return make_slack(lin.value, d.value,
                    lin.delta + d.numerical_slack + 1e-12);
}

RatioRecord corollary_ratio(const TestFunction& u, const Exponents& e,
                            const QuadratureScheme& scheme,
                            const ProjectionOptions& opt) {
  RatioRecord r;
  const ProjectionResult proj = asymmetry_gradient(u, e, scheme, opt);
  const DeficitValue d = deficit(u, e, scheme);
  r.asymmetry_upper = proj.value;
  r.deficit_val = d.value;
  r.caveat = !proj.converged;
  if (!(proj.value > 1e-6) || !(d.value > 0.0)) {
    r.excluded = true;
    return r;
  }
  r.log10_ratio = std::log10(d.value) - e.beta_cor * std::log10(proj.value);
  r.ratio = std::pow(10.0, r.log10_ratio);  // may overflow to inf at large beta
  return r;
}

CorpusReport run_corpus(const RunConfig& config) {
  config.validate();
  const Exponents e = make_exponents(config.n, config.p);
  const QuadratureScheme scheme = config.scheme();
  CorpusReport report;
  report.config = config;
  const std::vector<SampleSpec> specs = generate_corpus(config, e);
  report.records.resize(specs.size());
  std::vector<RatioRecord> ratios(specs.size());
  std::vector<char> has_ratio(specs.size(), 0);

  // the Sobolev constant cache is write-once; prime it before going parallel
  (void)sobolev_constant(e, scheme);

  const int nthreads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const int count = static_cast<int>(specs.size());
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int i = 0; i < count; ++i) {
    const SampleSpec& s = specs[i];
    CertificateRecord rec;
    rec.sample_id = s.id;
    rec.n = e.n;
    rec.p = e.p;
    rec.eps = s.eps;
    rec.kind = kind_name(s.dir.kind);
    try {
      const TestFunction raw = build_sample(s, e);
      const TestFunction vf = make_bubble(s.base, e);
      const NormResult norm_v = lp_norm(vf, e.p_star, e, scheme);
      const TestFunction u = normalize_lpstar(raw, norm_v.value, e, scheme);

      CertificateRecord core = reduction_certificate(
          u, s.base, e, scheme, config.shrink_constants);
      core.sample_id = s.id;
      core.eps = s.eps;
      core.kind = rec.kind;

      const SlackResult order = order_deficits_check(u, e, scheme);
      core.order_slack = order.slack;
      core.order_budget = order.tolerance;

      if (config.project_v) {
        // the theorem quantifies over every norm-matched v; the projected
        // bubble is the adversarial choice
        const ProjectionResult proj = asymmetry_gradient(u, e, scheme);
        BubbleParams vp = proj.argmin;
        const TestFunction vpf = make_bubble(vp, e);
        const NormResult nvp = lp_norm(vpf, e.p_star, e, scheme);
        vp.c *= norm_v.value / nvp.value;
        CertificateRecord alt = reduction_certificate(
            u, vp, e, scheme, config.shrink_constants);
        if (alt.slack < core.slack) {
          alt.sample_id = s.id;
          alt.eps = s.eps;
          alt.kind = core.kind;
          alt.order_slack = core.order_slack;
          alt.order_budget = core.order_budget;
          core = alt;
        }
      }

      if (config.ratio_stride > 0 && s.id % config.ratio_stride == 0) {
        RatioRecord rr = corollary_ratio(u, e, scheme);
        rr.sample_id = s.id;
        ratios[i] = rr;
        has_ratio[i] = 1;
      }
      rec = core;
    } catch (const std::exception& ex) {
      rec.error = ex.what();
      rec.verdict = Verdict::Inconclusive;
      rec.slack = std::numeric_limits<double>::quiet_NaN();
      rec.lhs = rec.deficit_term = rec.distance_term = rec.slack_budget =
          std::numeric_limits<double>::quiet_NaN();
    }
    report.records[i] = rec;
  }

  report.min_slack = std::numeric_limits<double>::infinity();
  report.min_order_slack = std::numeric_limits<double>::infinity();
  report.max_log10_ratio = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    const CertificateRecord& rec = report.records[i];
    if (!rec.error.empty()) {
      ++report.errors;
      ++report.inconclusive;
      continue;
    }
    switch (rec.verdict) {
      case Verdict::Certified: ++report.certified; break;
      case Verdict::Violated: ++report.violated; break;
      case Verdict::Inconclusive: ++report.inconclusive; break;
    }
    report.min_slack = std::min(report.min_slack, rec.slack);
    report.min_order_slack = std::min(report.min_order_slack, rec.order_slack);
    if (has_ratio[i]) {
      report.ratios.push_back(ratios[i]);
      if (!ratios[i].excluded) {
        report.has_ratios = true;
        report.max_log10_ratio =
            std::max(report.max_log10_ratio, ratios[i].log10_ratio);
      }
    }
  }
  if (report.records.empty()) {
    report.min_slack = 0.0;
    report.min_order_slack = 0.0;
  }
  return report;
}

void reclassify_with_shrink(CorpusReport& report, double factor) {
  report.certified = report.violated = report.inconclusive = 0;
  report.min_slack = std::numeric_limits<double>::infinity();
  for (CertificateRecord& rec : report.records) {
    if (!rec.error.empty()) {
      ++report.inconclusive;
      continue;
    }
    rec.deficit_term /= factor;
    rec.distance_term /= factor;
    rec.slack = rec.deficit_term + rec.distance_term - rec.lhs;
    // the constant-dependent budget shares shrink with the terms
    rec.slack_budget = rec.lhs_budget +
                       (rec.slack_budget - rec.lhs_budget) / factor + 1e-12;
    rec.verdict = classify(rec.slack, rec.slack_budget);
    switch (rec.verdict) {
      case Verdict::Certified: ++report.certified; break;
      case Verdict::Violated: ++report.violated; break;
      case Verdict::Inconclusive: ++report.inconclusive; break;
    }
    report.min_slack = std::min(report.min_slack, rec.slack);
  }
  if (report.records.empty()) report.min_slack = 0.0;
  report.config.shrink_constants *= factor;
}

}  // namespace soblab
