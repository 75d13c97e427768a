#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "soblab/certify.hpp"

namespace soblab {

namespace {

// embedded config block: each line prefixed with "# " so the report is both
// a CSV file and a loadable config
void write_config_block(const RunConfig& c, std::ostream& os) {
  os << "# soblab certify report\n";
  std::istringstream kv(config_to_kv(c));
  std::string line;
  while (std::getline(kv, line)) os << "# " << line << "\n";
}

std::string output_path_with_env(const std::string& path) {
  const char* dir = std::getenv("SOBLAB_OUTPUT_DIR");
  if (!dir || !*dir) return path;
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(dir) / p).string();
}

}  // namespace

void write_csv(const CorpusReport& report, std::ostream& os) {
  write_config_block(report.config, os);
  os << "sampleId,n,p,eps,kind,lhs,deficitTerm,distanceTerm,slack,slackBudget,"
        "verdict\n";
  for (const CertificateRecord& r : report.records) {
    os << r.sample_id << ',' << r.n << ',' << format_g17(r.p) << ','
       << format_g17(r.eps) << ',' << r.kind << ',' << format_g17(r.lhs) << ','
       << format_g17(r.deficit_term) << ',' << format_g17(r.distance_term)
       << ',' << format_g17(r.slack) << ',' << format_g17(r.slack_budget)
       << ',' << verdict_name(r.verdict) << '\n';
  }
}

void write_json(const CorpusReport& report, std::ostream& os) {
  nlohmann::json j;
  {
    nlohmann::json c;
    c["n"] = report.config.n;
    c["p"] = report.config.p;
    c["samples"] = report.config.samples;
    c["eps"] = report.config.eps_grid;
    c["kinds"] = report.config.kinds;
    c["resolution"] = report.config.resolution;
    c["seed"] = report.config.seed;
    c["output"] = report.config.output_path;
    c["format"] = report.config.format;
    c["shrink-constants"] = report.config.shrink_constants;
    c["ratio-stride"] = report.config.ratio_stride;
    c["project-v"] = report.config.project_v;
    c["threads"] = report.config.threads;
    j["config"] = c;
  }
  nlohmann::json recs = nlohmann::json::array();
  for (const CertificateRecord& r : report.records) {
    nlohmann::json e;
    e["sampleId"] = r.sample_id;
    e["n"] = r.n;
    e["p"] = r.p;
    e["eps"] = r.eps;
    e["kind"] = r.kind;
    e["lhs"] = r.lhs;
    e["deficitTerm"] = r.deficit_term;
    e["distanceTerm"] = r.distance_term;
    e["slack"] = r.slack;
    e["slackBudget"] = r.slack_budget;
    e["verdict"] = verdict_name(r.verdict);
    e["orderSlack"] = r.order_slack;
    e["orderBudget"] = r.order_budget;
    if (!r.error.empty()) e["error"] = r.error;
    recs.push_back(e);
  }
  j["records"] = recs;
  nlohmann::json rats = nlohmann::json::array();
  for (const RatioRecord& r : report.ratios) {
    nlohmann::json e;
    e["sampleId"] = r.sample_id;
    e["asymmetryUpper"] = r.asymmetry_upper;
    e["deficit"] = r.deficit_val;
    e["ratio"] = r.ratio;
    e["log10Ratio"] = r.log10_ratio;
    e["caveat"] = r.caveat;
    e["excluded"] = r.excluded;
    rats.push_back(e);
  }
  j["ratios"] = rats;
  nlohmann::json agg;
  agg["certified"] = report.certified;
  agg["violated"] = report.violated;
  agg["inconclusive"] = report.inconclusive;
  agg["errors"] = report.errors;
  agg["minSlack"] = report.min_slack;
  agg["minOrderSlack"] = report.min_order_slack;
  if (report.has_ratios) agg["maxLog10Ratio"] = report.max_log10_ratio;
  j["aggregates"] = agg;
  os << j.dump(2) << "\n";
}

void write_report_file(const CorpusReport& report) {
  const std::string path = output_path_with_env(report.config.output_path);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  if (report.config.format == "json")
    write_json(report, f);
  else
    write_csv(report, f);
}

}  // namespace soblab
