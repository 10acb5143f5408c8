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

#include "hbqme/io.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "hbqme/errors.hpp"

namespace hbqme {

namespace {

constexpr const char* kVersion = "0.1.0";

void write_state_header(std::ostream& out, const Basis& basis) {
  for (const auto& s : basis.states()) out << ',' << s.label();
}

std::string optional_time(const std::optional<double>& t) { return t ? format_double(*t) : std::string(); }

// Keeps statuses CSV-safe without quoting.
std::string csv_field(std::string s) {
  for (auto& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return s;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return {buf.data(), end};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "time_s";
  write_state_header(out, *traj.basis);
  out << ",p_stable,purity\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out << format_double(traj.times[k]);
    for (double p : traj.populations[k]) out << ',' << format_double(p);
    out << ',' << format_double(traj.p_stable[k]) << ',' << format_double(traj.purity[k]) << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, const HeatMap& map) {
  out << "x_param,y_param,x_value,y_value,value,region,steady_time_s,status\n";
  for (const auto& c : map.cells) {
    out << map.x_param << ',' << map.y_param << ',' << format_double(c.x) << ',' << format_double(c.y) << ','
        << (c.value ? format_double(*c.value) : "") << ',' << (c.region ? std::string(to_string(*c.region)) : "")
        << ',' << optional_time(c.steady_time) << ',' << csv_field(c.status) << '\n';
  }
}

void write_series_csv(std::ostream& out, const std::vector<SeriesPoint>& series) {
  out << "n,p_stable,p_broken,steady_time_s,status\n";
  for (const auto& pt : series) {
    const auto& r = pt.result;
    out << pt.n << ',' << (r.failed ? "" : format_double(r.p_stable)) << ','
        << (r.failed ? "" : format_double(r.p_broken)) << ',' << optional_time(r.steady_time) << ','
        << csv_field(r.status) << '\n';
  }
}

void write_steady_csv(std::ostream& out, const Basis& basis, const std::vector<double>& pops) {
  if (pops.size() != basis.dim()) throw DomainError("populations", "length does not match basis");
  bool first = true;
  for (const auto& s : basis.states()) {
    out << (first ? "" : ",") << s.label();
    first = false;
  }
  out << ",p_stable\n";
  for (std::size_t i = 0; i < pops.size(); ++i) out << (i ? "," : "") << format_double(pops[i]);
  out << ',' << format_double(stable_bond_probability(basis, pops)) << '\n';
}

Json sidecar(const std::string& command, const ScenarioConfig& scenario, const Json& extra) {
  Json j{{"tool", "hbqme"}, {"version", kVersion}, {"command", command}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  j["config"] = to_json(scenario);
  return j;
}

void write_text(const std::filesystem::path& file, const std::string& body) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + file.string() + "'");
  out << body;
  if (!out) throw std::runtime_error("write failed for '" + file.string() + "'");
}

void write_json(const std::filesystem::path& file, const Json& j) { write_text(file, j.dump(2) + "\n"); }

}  // namespace hbqme
