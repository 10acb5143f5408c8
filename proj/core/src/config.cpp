// Copyright 2026 The hbqme Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hbqme/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Reads an object while tracking which keys were consumed.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json* raw(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& require(const std::string& key) {
    const Json* v = raw(key);
    if (!v) throw ConfigError(join(path_, key), "missing required key '" + key + "'");
    return *v;
  }

  void number(const std::string& key, double& out) {
    if (const Json* v = raw(key)) out = as_number(*v, key);
  }

  void integer(const std::string& key, int& out) {
    if (const Json* v = raw(key)) out = as_int(*v, key);
  }

  void size(const std::string& key, std::size_t& out) {
    if (const Json* v = raw(key)) {
      const int i = as_int(*v, key);
      if (i < 0) throw ConfigError(join(path_, key), "must be >= 0");
      out = static_cast<std::size_t>(i);
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const Json* v = raw(key)) {
      if (!v->is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
      out = v->get<bool>();
    }
  }

  std::optional<std::string> string(const std::string& key) {
    const Json* v = raw(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ConfigError(join(path_, key), "expected a string");
    return v->get<std::string>();
  }

  double as_number(const Json& v, const std::string& key) const {
    if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
    return v.get<double>();
  }

  int as_int(const Json& v, const std::string& key) const {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
      const double d = v.get<double>();
      if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
    }
    throw ConfigError(join(path_, key), "expected an integer");
  }

  std::string key_path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(join(path_, it.key()), "unknown key '" + it.key() + "'");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

// Re-throws a validation failure with the key path of the parameter.
template <class F>
void validated(const std::string& path, F&& f) {
  try {
    f();
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    const auto& p = e.parameter();
    std::string where = path;
    if (p == "dt" || p == "tau" || p == "t_end" || p == "steady_tol" || p == "steady_window" || p == "record_stride") {
      where = join(path, "integrator");
    }
    const std::string msg = e.what();
    throw ConfigError(join(where, p), msg.substr(std::min(msg.size(), p.size() + 2)));
  }
}

BasisState state_from_json(const Json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) throw ConfigError(path, "expected [d, p, n]");
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ConfigError(path, "expected integer labels");
  }
  return {v[0].get<int>(), v[1].get<int>(), v[2].get<int>()};
}

Json state_to_json(const BasisState& s) { return Json::array({s.d, s.p, s.n}); }

std::vector<double> axis_values(Reader& r) {
  const bool explicit_values = r.has("values");
  if (explicit_values && (r.has("from") || r.has("to") || r.has("count"))) {
    throw ConfigError(r.key_path("values"), "give either values or from/to/count");
  }
  double scale = 1.0;
  if (auto s = r.string("scale")) {
    if (*s == "g") scale = kReferenceCouplingEv;
    else if (*s == "gamma") scale = kReferenceRateEv;
    else if (*s != "1") throw ConfigError(r.key_path("scale"), "expected \"g\", \"gamma\" or \"1\"");
  }
  std::vector<double> out;
  if (explicit_values) {
    const Json& v = r.require("values");
    if (!v.is_array()) throw ConfigError(r.key_path("values"), "expected an array");
    for (const auto& x : v) out.push_back(scale * r.as_number(x, "values"));
    return out;
  }
  const double from = r.as_number(r.require("from"), "from");
  const double to = r.as_number(r.require("to"), "to");
  const int count = r.as_int(r.require("count"), "count");
  if (count < 1) throw ConfigError(r.key_path("count"), "must be >= 1");
  if (count == 1) return {scale * from};
  for (int i = 0; i < count; ++i) {
    // Endpoints are exact; interior points are evenly spaced.
    const double t = static_cast<double>(i) / (count - 1);
    out.push_back(scale * (i == count - 1 ? to : from + (to - from) * t));
  }
  return out;
}

}  // namespace

Json to_json(const IntegratorConfig& c) {
  return Json{{"tau_s", c.tau},
              {"dt_s", c.dt},
              {"scheme", std::string(to_string(c.scheme))},
              {"project_every", c.project_every},
              {"t_end_s", c.t_end},
              {"steady_stop", c.steady_stop},
              {"steady_tol", c.steady_tol},
              {"steady_window", c.steady_window},
              {"record_stride", c.record_stride}};
}

Json to_json(const ModelParams& p) {
  Json initial;
  if (p.initial.kind == InitialState::Kind::basis_state) {
    initial = Json{{"state", state_to_json(p.initial.state)}};
  } else {
    initial = Json{{"thermal", {{"d", p.initial.state.d}, {"p", p.initial.state.p},
                                {"temperature_k", p.initial.temperature_k}}}};
  }
  const auto& h = p.hamiltonian;
  return Json{{"basis", std::string(to_string(p.basis_mode))},
              {"n_max", p.n_max},
              {"hbond_energy_ev", p.hbond_energy_ev},
              {"hbar_omega_dist", h.hbar_omega_dist},
              {"hbar_omega_prot", h.hbar_omega_prot},
              {"hbar_omega_phn", h.hbar_omega_phn},
              {"g_dist", h.g_dist},
              {"g_prot", h.g_prot},
              {"zero_rest_energies", h.zero_rest_energies},
              {"coupling_convention", std::string(to_string(h.coupling_convention))},
              {"gamma_bond", p.bond.gamma_out},
              {"mu_bond", p.bond.mu},
              {"gamma_isol", p.isol.gamma_out},
              {"mu_isol", p.isol.mu},
              {"gamma_phn", p.phn.gamma_out},
              {"mu_phn", p.phn.mu},
              {"jump_convention", std::string(to_string(p.jump_convention))},
              {"channel_hbar_omega", p.channel_hbar_omega},
              {"initial", initial},
              {"steady_method", std::string(to_string(p.steady_method))},
              {"cross_check_tol", p.cross_check_tol},
              {"integrator", to_json(p.integrator)}};
}

Json to_json(const SweepSpec& s) {
  Json panels = Json::array();
  for (const auto& p : s.panels) {
    Json set = Json::object();
    for (const auto& [k, v] : p.set) set[k] = v;
    Json jp{{"label", p.label}, {"set", set}};
    if (p.initial) jp["initial"] = state_to_json(*p.initial);
    panels.push_back(jp);
  }
  return Json{{"x", {{"param", s.x.param}, {"values", s.x.values}}},
              {"y", {{"param", s.y.param}, {"values", s.y.values}}},
              {"observable", std::string(to_string(s.observable))},
              {"panels", panels}};
}

Json to_json(const ScenarioConfig& s) {
  Json j{{"name", s.name}, {"description", s.description}, {"model", to_json(s.model)}};
  if (s.sweep) j["sweep"] = to_json(*s.sweep);
  if (s.series) j["series"] = Json{{"n_values", s.series->n_values}};
  return j;
}

IntegratorConfig integrator_from_json(const Json& j, const std::string& path) {
  IntegratorConfig c;
  Reader r(j, path);
  r.number("tau_s", c.tau);
  if (r.has("dt_s") && r.has("dt_over_tau")) throw ConfigError(r.key_path("dt_s"), "give dt_s or dt_over_tau, not both");
  c.dt = 0.01 * c.tau;
  r.number("dt_s", c.dt);
  if (const Json* v = r.raw("dt_over_tau")) c.dt = r.as_number(*v, "dt_over_tau") * c.tau;
  if (auto s = r.string("scheme")) {
    try {
      c.scheme = scheme_from_string(*s);
    } catch (const DomainError& e) {
      throw ConfigError(r.key_path("scheme"), e.what());
    }
  }
  r.size("project_every", c.project_every);
  if (r.has("t_end_s") && r.has("t_end_over_tau")) {
    throw ConfigError(r.key_path("t_end_s"), "give t_end_s or t_end_over_tau, not both");
  }
  c.t_end = 1e4 * c.tau;
  r.number("t_end_s", c.t_end);
  if (const Json* v = r.raw("t_end_over_tau")) c.t_end = r.as_number(*v, "t_end_over_tau") * c.tau;
  r.boolean("steady_stop", c.steady_stop);
  r.number("steady_tol", c.steady_tol);
  r.size("steady_window", c.steady_window);
  r.size("record_stride", c.record_stride);
  r.finish();
  const std::string parent = path.substr(0, path.rfind('.') == std::string::npos ? 0 : path.rfind('.'));
  validated(parent, [&] { c.validate(); });
  return c;
}

ModelParams model_from_json(const Json& j, const std::string& path) {
  ModelParams p;
  Reader r(j, path);
  auto enum_key = [&](const std::string& key, auto parse, auto& out) {
    if (auto s = r.string(key)) {
      try {
        out = parse(*s);
      } catch (const DomainError& e) {
        throw ConfigError(r.key_path(key), e.what());
      }
    }
  };
  enum_key("basis", basis_mode_from_string, p.basis_mode);
  r.integer("n_max", p.n_max);
  r.number("hbond_energy_ev", p.hbond_energy_ev);
  p.hamiltonian = HamiltonianParams::reference(p.hbond_energy_ev);
  p.channel_hbar_omega = p.hbond_energy_ev / 2.0;
  auto& h = p.hamiltonian;
  r.number("hbar_omega_dist", h.hbar_omega_dist);
  r.number("hbar_omega_prot", h.hbar_omega_prot);
  if (!r.has("hbar_omega_phn")) h.hbar_omega_phn = h.hbar_omega_prot;
  r.number("hbar_omega_phn", h.hbar_omega_phn);
  r.number("g_dist", h.g_dist);
  r.number("g_prot", h.g_prot);
  r.boolean("zero_rest_energies", h.zero_rest_energies);
  enum_key("coupling_convention", phonon_convention_from_string, h.coupling_convention);
  r.number("gamma_bond", p.bond.gamma_out);
  r.number("mu_bond", p.bond.mu);
  r.number("gamma_isol", p.isol.gamma_out);
  r.number("mu_isol", p.isol.mu);
  r.number("gamma_phn", p.phn.gamma_out);
  r.number("mu_phn", p.phn.mu);
  enum_key("jump_convention", phonon_convention_from_string, p.jump_convention);
  r.number("channel_hbar_omega", p.channel_hbar_omega);
  if (const Json* v = r.raw("initial")) {
    const std::string ipath = r.key_path("initial");
    Reader ir(*v, ipath);
    if (ir.has("state") == ir.has("thermal")) throw ConfigError(ipath, "give exactly one of 'state' or 'thermal'");
    if (const Json* s = ir.raw("state")) {
      p.initial.kind = InitialState::Kind::basis_state;
      p.initial.state = state_from_json(*s, join(ipath, "state"));
    } else {
      Reader tr(*ir.raw("thermal"), join(ipath, "thermal"));
      p.initial.kind = InitialState::Kind::thermal;
      p.initial.state = {0, 0, 0};
      tr.integer("d", p.initial.state.d);
      tr.integer("p", p.initial.state.p);
      p.initial.temperature_k = tr.as_number(tr.require("temperature_k"), "temperature_k");
      tr.finish();
    }
    ir.finish();
  }
  enum_key("steady_method", steady_method_from_string, p.steady_method);
  r.number("cross_check_tol", p.cross_check_tol);
  if (const Json* v = r.raw("integrator")) p.integrator = integrator_from_json(*v, r.key_path("integrator"));
  r.finish();
  validated(path, [&] { p.validate(); });
  return p;
}

SweepSpec sweep_from_json(const Json& j, const std::string& path) {
  SweepSpec s;
  Reader r(j, path);
  auto axis = [&](const std::string& key, SweepAxis& a) {
    Reader ar(r.require(key), r.key_path(key));
    a.param = ar.require("param").is_string() ? ar.require("param").get<std::string>() : "";
    if (!is_sweep_parameter(a.param)) throw ConfigError(ar.key_path("param"), "unknown parameter '" + a.param + "'");
    a.values = axis_values(ar);
    ar.finish();
  };
  axis("x", s.x);
  axis("y", s.y);
  if (auto o = r.string("observable")) {
    try {
      s.observable = observable_from_string(*o);
    } catch (const DomainError& e) {
      throw ConfigError(r.key_path("observable"), e.what());
    }
  }
  if (const Json* v = r.raw("panels")) {
    if (!v->is_array()) throw ConfigError(r.key_path("panels"), "expected an array");
    for (std::size_t i = 0; i < v->size(); ++i) {
      const std::string ppath = r.key_path("panels") + "[" + std::to_string(i) + "]";
      Reader pr((*v)[i], ppath);
      SweepPanel panel;
      panel.label = pr.require("label").is_string() ? pr.require("label").get<std::string>() : "";
      if (panel.label.empty()) throw ConfigError(join(ppath, "label"), "expected a non-empty string");
      if (const Json* set = pr.raw("set")) {
        Reader sr(*set, join(ppath, "set"));
        for (auto it = set->begin(); it != set->end(); ++it) {
          if (!is_sweep_parameter(it.key())) throw ConfigError(sr.key_path(it.key()), "not a sweepable parameter");
          panel.set.emplace_back(it.key(), sr.as_number(*sr.raw(it.key()), it.key()));
        }
        sr.finish();
      }
      if (const Json* init = pr.raw("initial")) panel.initial = state_from_json(*init, join(ppath, "initial"));
      pr.finish();
      s.panels.push_back(std::move(panel));
    }
  }
  r.finish();
  validated(path, [&] { s.validate(); });
  return s;
}

ScenarioConfig scenario_from_json(const Json& j) {
  if (j.is_object() && j.contains("config") && !j.contains("model")) return scenario_from_json(j.at("config"));
  ScenarioConfig s;
  Reader r(j, "");
  const Json& name = r.require("name");
  if (!name.is_string() || name.get<std::string>().empty()) throw ConfigError("name", "expected a non-empty string");
  s.name = name.get<std::string>();
  if (auto d = r.string("description")) s.description = *d;
  s.model = model_from_json(r.require("model"), "model");
  if (const Json* v = r.raw("sweep")) s.sweep = sweep_from_json(*v, "sweep");
  if (const Json* v = r.raw("series")) {
    Reader sr(*v, "series");
    SeriesSpec series;
    const Json& n = sr.require("n_values");
    if (!n.is_array() || n.empty()) throw ConfigError("series.n_values", "expected a non-empty array");
    for (const auto& x : n) {
      const int k = sr.as_int(x, "n_values");
      if (k < 1) throw ConfigError("series.n_values", "phonon numbers must be >= 1");
      series.n_values.push_back(k);
    }
    sr.finish();
    s.series = std::move(series);
  }
  if (s.sweep && s.series) throw ConfigError("series", "a scenario holds either a sweep or a series");
  r.finish();
  return s;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("config", "cannot open '" + file.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON in '") + file.string() + "': " + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace hbqme
