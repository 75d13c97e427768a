#include "soblab/corpus.hpp"

#include <cmath>
#include <stdexcept>

#include "soblab/rng.hpp"

namespace soblab {

namespace {

VecN vec_from_json(const nlohmann::json& j, int n) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument("expected an array of length " + std::to_string(n));
  VecN v = VecN::zero(n);
  for (int i = 0; i < n; ++i) v[i] = j[i].get<double>();
  return v;
}

nlohmann::json vec_to_json(const VecN& v) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < v.n; ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::vector<SampleSpec> generate_corpus(const RunConfig& config,
                                        const Exponents& e) {
  Rng rng(config.seed);
  std::vector<SampleSpec> specs;
  specs.reserve(static_cast<std::size_t>(config.samples));
  for (int i = 0; i < config.samples; ++i) {
    SampleSpec s;
    s.id = i;
    s.base.c = rng.uniform(0.5, 2.0);
    s.base.lam_scale = rng.log_uniform(0.5, 2.0);
    s.base.center = VecN::zero(e.n);
    for (int d = 0; d < e.n; ++d) s.base.center[d] = rng.uniform(-1.0, 1.0);
    s.eps = config.eps_grid[i % config.eps_grid.size()];
    const std::string kind = config.kinds[i % config.kinds.size()];
    s.dir.kind = kind_from_name(kind);
    const double lam = s.base.lam_scale;
    switch (s.dir.kind) {
      case PerturbationKind::GaussianBump: {
        s.dir.center = VecN::zero(e.n);
        for (int d = 0; d < e.n; ++d)
          s.dir.center[d] = s.base.center[d] + rng.uniform(-1.0, 1.0) / lam;
        s.dir.width = rng.uniform(0.6, 1.4) / lam;
        // draws sequenced explicitly; argument evaluation order is unspecified
        const int sgn = rng.sign();
        const double amp = rng.uniform(0.5, 1.5);
        s.dir.amplitude = sgn * amp * s.base.c;
        break;
      }
      case PerturbationKind::CompactBump: {
        s.dir.center = VecN::zero(e.n);
        for (int d = 0; d < e.n; ++d)
          s.dir.center[d] = s.base.center[d] + rng.uniform(-1.0, 1.0) / lam;
        s.dir.width = rng.uniform(0.9, 2.0) / lam;
        const int sgn = rng.sign();
        const double amp = rng.uniform(0.5, 1.5);
        s.dir.amplitude = sgn * amp * s.base.c;
        break;
      }
      case PerturbationKind::ManifoldTangent: {
        s.dir.tangent_coord = rng.uniform_int(0, e.n + 1);
        s.dir.tangent_step = 1e-3 * rng.sign();
        break;
      }
    }
    specs.push_back(s);
  }
  return specs;
}

TestFunction build_sample(const SampleSpec& s, const Exponents& e) {
  return make_perturbed_bubble(s.base, s.dir, s.eps, e);
}

nlohmann::json sample_to_json(const SampleSpec& s) {
  nlohmann::json j;
  j["id"] = s.id;
  j["bubble"] = {{"c", s.base.c},
                 {"scale", s.base.lam_scale},
                 {"center", vec_to_json(s.base.center)}};
  j["eps"] = s.eps;
  nlohmann::json d;
  d["kind"] = kind_name(s.dir.kind);
  if (s.dir.kind == PerturbationKind::ManifoldTangent) {
    d["coord"] = s.dir.tangent_coord;
    d["step"] = s.dir.tangent_step;
  } else {
    d["center"] = vec_to_json(s.dir.center);
    d["width"] = s.dir.width;
    d["amplitude"] = s.dir.amplitude;
  }
  j["perturbation"] = d;
  return j;
}

SampleSpec sample_from_json(const nlohmann::json& j, int n) {
  SampleSpec s;
  s.id = j.value("id", 0);
  const auto& b = j.at("bubble");
  s.base.c = b.at("c").get<double>();
  s.base.lam_scale = b.at("scale").get<double>();
  s.base.center = vec_from_json(b.at("center"), n);
  s.eps = j.at("eps").get<double>();
  const auto& d = j.at("perturbation");
  s.dir.kind = kind_from_name(d.at("kind").get<std::string>());
  if (s.dir.kind == PerturbationKind::ManifoldTangent) {
    s.dir.tangent_coord = d.at("coord").get<int>();
    s.dir.tangent_step = d.at("step").get<double>();
  } else {
    s.dir.center = vec_from_json(d.at("center"), n);
    s.dir.width = d.at("width").get<double>();
    s.dir.amplitude = d.at("amplitude").get<double>();
  }
  return s;
}

TestFunction function_from_spec_json(const nlohmann::json& j, const Exponents& e,
                                     BubbleParams* base_out) {
  const auto& b = j.at("bubble");
  BubbleParams base;
  base.c = b.value("c", 1.0);
  base.lam_scale = b.value("scale", 1.0);
  base.center = b.contains("center") ? vec_from_json(b.at("center"), e.n)
                                     : VecN::zero(e.n);
  if (base_out) *base_out = base;
  TestFunction u = make_bubble(base, e);
  if (!j.contains("perturbations")) return u;
  for (const auto& pj : j.at("perturbations")) {
    PerturbationDirection dir;
    dir.kind = kind_from_name(pj.at("kind").get<std::string>());
    if (dir.kind == PerturbationKind::ManifoldTangent) {
      const std::string param = pj.value("param", "scale");
      if (param == "c") dir.tangent_coord = 0;
      else if (param == "scale") dir.tangent_coord = 1;
      else if (param.rfind("center", 0) == 0) {
        const int axis = param.size() > 6 ? std::stoi(param.substr(6)) : 0;
        if (axis < 0 || axis >= e.n)
          throw std::invalid_argument("tangent center axis out of range");
        dir.tangent_coord = 2 + axis;
      } else {
        throw std::invalid_argument("unknown tangent param: " + param);
      }
      dir.tangent_step = pj.value("step", 1e-3);
    } else {
      dir.center = pj.contains("center") ? vec_from_json(pj.at("center"), e.n)
                                         : base.center;
      dir.width = pj.value("width", 1.0);
      dir.amplitude = pj.value("amplitude", 1.0);
    }
    const double eps = pj.value("eps", 1.0);
    u = linear_combo(1.0, u, eps, make_perturbation(dir, base, e));
  }
  u.kind = FunctionKind::PerturbedBubble;
  return u;
}

}  // namespace soblab
