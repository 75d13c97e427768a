#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "soblab/quadrature.hpp"

namespace soblab {

// Resolved configuration of one certification run. Serialized as
// `key = value` lines; every report embeds these lines so a run can be
// reproduced directly from its own report file.
struct RunConfig {
  int n = 2;
  double p = 1.5;
  int samples = 100;
  std::vector<double> eps_grid = {0.01, 0.1, 0.5};
  std::vector<std::string> kinds = {"gaussian", "compact", "tangent"};
  int resolution = 128;  // tensor nodes per axis; power of two >= 64
  std::uint64_t seed = 42;
  std::string output_path = "report.csv";
  std::string format = "csv";  // csv | json
  double shrink_constants = 1.0;  // divides C1 and C2 (checker mutation test)
  int ratio_stride = 0;  // >0: corollary ratio study on every k-th sample
  bool project_v = false;  // certify against the projected bubble as well
  int threads = 0;  // 0: library default

  void validate() const;  // throws std::invalid_argument
  QuadratureScheme scheme() const;
};

std::string config_to_kv(const RunConfig& c);

// Accepts plain `key = value` lines as well as report files where the config
// block is embedded as `# key = value` comments; unknown keys are rejected,
// non-config comment lines are skipped.
RunConfig config_from_kv_text(const std::string& text, const RunConfig& base = {});
RunConfig load_config_file(const std::string& path, const RunConfig& base = {});

std::vector<double> parse_double_list(const std::string& s);
std::vector<std::string> parse_string_list(const std::string& s);
std::string join_doubles(const std::vector<double>& v);
std::string join_strings(const std::vector<std::string>& v);

// 17-significant-digit float formatting used by every report writer
std::string format_g17(double x);

}  // namespace soblab
