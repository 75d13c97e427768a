#include "soblab/config.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace soblab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunConfig::validate() const {
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  if (!(p > 1.0 && p < static_cast<double>(n)))
    throw std::invalid_argument("p must lie in (1,n)");
  if (samples < 0) throw std::invalid_argument("samples must be nonnegative");
  if (resolution < 64 || !std::has_single_bit(static_cast<unsigned>(resolution)))
    throw std::invalid_argument("resolution must be a power of two >= 64");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("format must be csv or json");
  if (!(shrink_constants > 0.0))
    throw std::invalid_argument("shrink-constants must be positive");
  if (ratio_stride < 0) throw std::invalid_argument("ratio-stride must be >= 0");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  for (double e : eps_grid)
    if (!std::isfinite(e)) throw std::invalid_argument("eps values must be finite");
  if (eps_grid.empty()) throw std::invalid_argument("eps grid must be nonempty");
  if (kinds.empty()) throw std::invalid_argument("kinds must be nonempty");
  for (const std::string& k : kinds)
    if (k != "gaussian" && k != "compact" && k != "tangent")
      throw std::invalid_argument("unknown perturbation kind: " + k);
}

QuadratureScheme RunConfig::scheme() const {
  QuadratureScheme s;
  s.resolution = resolution;
  s.radial_resolution = std::max(256, 2 * resolution);
  return s;
}

std::string format_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number: " + item);
    out.push_back(v);
  }
  return out;
}

std::vector<std::string> parse_string_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_g17(v[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i];
  }
  return out;
}

std::string config_to_kv(const RunConfig& c) {
  std::ostringstream os;
  os << "n = " << c.n << "\n";
  os << "p = " << format_g17(c.p) << "\n";
  os << "samples = " << c.samples << "\n";
  os << "eps = " << join_doubles(c.eps_grid) << "\n";
  os << "kinds = " << join_strings(c.kinds) << "\n";
  os << "resolution = " << c.resolution << "\n";
  os << "seed = " << c.seed << "\n";
  os << "output = " << c.output_path << "\n";
  os << "format = " << c.format << "\n";
  os << "shrink-constants = " << format_g17(c.shrink_constants) << "\n";
  os << "ratio-stride = " << c.ratio_stride << "\n";
  os << "project-v = " << (c.project_v ? 1 : 0) << "\n";
  os << "threads = " << c.threads << "\n";
  return os.str();
}

RunConfig config_from_kv_text(const std::string& text, const RunConfig& base) {
  RunConfig c = base;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      // embedded config block inside a report: "# key = value"
      t = trim(t.substr(1));
      if (t.find('=') == std::string::npos) continue;  // ordinary comment
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      // a CSV header or data row once the config block ended
      if (t.find(',') != std::string::npos) continue;
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    try {
      if (key == "n") c.n = std::stoi(val);
      else if (key == "p") c.p = std::stod(val);
      else if (key == "samples") c.samples = std::stoi(val);
      else if (key == "eps") c.eps_grid = parse_double_list(val);
      else if (key == "kinds") c.kinds = parse_string_list(val);
      else if (key == "resolution") c.resolution = std::stoi(val);
      else if (key == "seed") c.seed = std::stoull(val);
      else if (key == "output") c.output_path = val;
      else if (key == "format") c.format = val;
      else if (key == "shrink-constants") c.shrink_constants = std::stod(val);
      else if (key == "ratio-stride") c.ratio_stride = std::stoi(val);
      else if (key == "project-v") c.project_v = std::stoi(val) != 0;
      else if (key == "threads") c.threads = std::stoi(val);
      else
        throw std::invalid_argument("unknown config key: " + key);
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for " + key);
    }
  }
  return c;
}

RunConfig load_config_file(const std::string& path, const RunConfig& base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open config file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return config_from_kv_text(ss.str(), base);
}

}  // namespace soblab
