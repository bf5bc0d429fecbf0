// Copyright 2026 The nfvplace Authors
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

#include "nfvplace/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "json_util.hpp"
#include "nfvplace/error.hpp"

namespace nfvplace {

using detail::json;

DelayMatrix DelayMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  DelayMatrix m(rows.size());
  for (std::size_t p = 0; p < rows.size(); ++p) {
    if (rows[p].size() != rows.size()) {
      std::ostringstream os;
      os << "delays: row " << p << " has " << rows[p].size()
         << " entries, expected " << rows.size();
      throw Error(ErrorCode::kValidation, os.str());
    }
    for (std::size_t q = 0; q < rows.size(); ++q)
      m(static_cast<PopId>(p), static_cast<PopId>(q)) = rows[p][q];
  }
  return m;
}

std::vector<std::vector<double>> DelayMatrix::rows() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t p = 0; p < n_; ++p)
    for (std::size_t q = 0; q < n_; ++q)
      out[p][q] = values_[p * n_ + q];
  return out;
}

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

ValidationReport validate_instance(const InstanceData& data) {
  ValidationReport report;
  auto add = [&report](const std::string& s) { report.violations.push_back(s); };
  const auto n = static_cast<int>(data.pops.size());

  if (n < 1) add("pops: at least one PoP is required");
  for (int i = 0; i < n; ++i) {
    if (data.pops[static_cast<std::size_t>(i)].id != i) {
      std::ostringstream os;
      os << "pops[" << i << "]: id " << data.pops[static_cast<std::size_t>(i)].id
         << " is not the dense index " << i;
      add(os.str());
    }
  }

  if (static_cast<int>(data.delays.size()) != n) {
    std::ostringstream os;
    os << "delays: matrix is " << data.delays.size() << "x" << data.delays.size()
       << " but there are " << n << " PoPs";
    add(os.str());
  } else {
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        const double d = data.delays(p, q);
        std::ostringstream os;
        if (!std::isfinite(d) || d < 0.0) {
          if (p > q && d == data.delays(q, p)) continue;  // mirror already reported
          os << "delays[" << p << "][" << q << "]: " << d
             << " is not a finite nonnegative delay";
        } else if (p == q && d != 0.0) {
          os << "delays[" << p << "][" << p << "]: diagonal must be zero, got " << d;
        } else if (p < q && d != data.delays(q, p)) {
          os << "delays: matrix is not symmetric at (" << p << "," << q << "): "
             << d << " vs " << data.delays(q, p);
        } else {
          continue;
        }
        add(os.str());
      }
    }
  }

  for (std::size_t i = 0; i < data.vnfs.size(); ++i) {
    const auto& v = data.vnfs[i];
    std::ostringstream prefix;
    prefix << "vnfs[" << i << "]: ";
    if (v.id != static_cast<VnfId>(i)) {
      std::ostringstream os;
      os << prefix.str() << "id " << v.id << " is not the dense index " << i;
      add(os.str());
    }
    if (v.location < 0 || v.location >= n) {
      std::ostringstream os;
      os << prefix.str() << "location " << v.location << " is not a valid PoP id";
      add(os.str());
    }
    if (!positive_finite(v.vnfm_delay_bound_ms))
      add(prefix.str() + "omega_ms must be positive");
    if (!positive_finite(v.nfvo_vnfm_delay_bound_ms))
      add(prefix.str() + "big_omega_ms must be positive");
  }

  const auto& prm = data.params;
  if (prm.nfvo_capacity < 1) add("params: phi_nfvo must be at least 1");
  if (prm.vnfm_capacity < 1) add("params: phi_vnfm must be at least 1");
  if (!positive_finite(prm.gso_nfvo_delay_bound_ms))
    add("params: psi_ms must be positive");
  if (!positive_finite(prm.nfvo_vim_delay_bound_ms))
    add("params: big_psi_ms must be positive");
  if (prm.gso_location < 0 || prm.gso_location >= n) {
    std::ostringstream os;
    os << "params: gso_pop " << prm.gso_location << " is not a valid PoP id";
    add(os.str());
  }
  return report;
}

ProblemInstance::ProblemInstance(InstanceData data) : data_(std::move(data)) {
  auto report = validate_instance(data_);
  if (!report.empty()) throw Error(ErrorCode::kValidation, report.violations.front());
}

ProblemInstance ProblemInstance::with_vnfs(std::vector<VnfInstance> vnfs) const {
  InstanceData copy = data_;
  copy.vnfs = std::move(vnfs);
  return ProblemInstance(std::move(copy));
}

ValidationReport validate_instance(const ProblemInstance& instance) {
  return validate_instance(instance.data());
}

// ---------------------------------------------------------------------------
// JSON

InstanceData parse_instance(std::string_view json_text) {
  using namespace detail;
  const json root = parse_json_text(json_text);
  require_object(root, "instance");
  reject_unknown_keys(root, "instance", {"pops", "delays", "vnfs", "params"});

  InstanceData data;
  const auto& pops = require_array(require_key(root, "instance", "pops"), "pops");
  for (std::size_t i = 0; i < pops.size(); ++i) {
    const std::string where = "pops[" + std::to_string(i) + "]";
    const auto& jp = require_object(pops[i], where);
    reject_unknown_keys(jp, where, {"id", "label", "coordinates"});
    Pop pop;
    pop.id = static_cast<PopId>(get_integer(require_key(jp, where, "id"), where + ".id"));
    if (auto it = jp.find("label"); it != jp.end())
      pop.label = get_string(*it, where + ".label");
    if (auto it = jp.find("coordinates"); it != jp.end() && !it->is_null()) {
      const auto& c = require_array(*it, where + ".coordinates");
      if (c.size() != 2) parse_fail(where + ".coordinates: expected [x_km, y_km]");
      pop.coordinates = Point{get_number(c[0], where + ".coordinates"),
                              get_number(c[1], where + ".coordinates")};
    }
    data.pops.push_back(std::move(pop));
  }

  const auto& delays = require_array(require_key(root, "instance", "delays"), "delays");
  std::vector<std::vector<double>> rows;
  for (std::size_t p = 0; p < delays.size(); ++p) {
    const std::string where = "delays[" + std::to_string(p) + "]";
    const auto& row = require_array(delays[p], where);
    auto& out = rows.emplace_back();
    for (const auto& cell : row) out.push_back(get_number(cell, where));
  }
  data.delays = DelayMatrix::from_rows(rows);

  const auto& vnfs = require_array(require_key(root, "instance", "vnfs"), "vnfs");
  for (std::size_t i = 0; i < vnfs.size(); ++i) {
    const std::string where = "vnfs[" + std::to_string(i) + "]";
    const auto& jv = require_object(vnfs[i], where);
    reject_unknown_keys(jv, where, {"id", "location", "omega_ms", "big_omega_ms"});
    VnfInstance v;
    v.id = static_cast<VnfId>(get_integer(require_key(jv, where, "id"), where + ".id"));
    v.location = static_cast<PopId>(
        get_integer(require_key(jv, where, "location"), where + ".location"));
    v.vnfm_delay_bound_ms =
        get_number(require_key(jv, where, "omega_ms"), where + ".omega_ms");
    v.nfvo_vnfm_delay_bound_ms =
        get_number(require_key(jv, where, "big_omega_ms"), where + ".big_omega_ms");
    data.vnfs.push_back(v);
  }

  const auto& jp = require_object(require_key(root, "instance", "params"), "params");
  reject_unknown_keys(jp, "params",
                      {"phi_nfvo", "phi_vnfm", "psi_ms", "big_psi_ms", "gso_pop"});
  auto& prm = data.params;
  prm.nfvo_capacity = static_cast<int>(
      get_integer(require_key(jp, "params", "phi_nfvo"), "params.phi_nfvo"));
  prm.vnfm_capacity = static_cast<int>(
      get_integer(require_key(jp, "params", "phi_vnfm"), "params.phi_vnfm"));
  prm.gso_nfvo_delay_bound_ms =
      get_number(require_key(jp, "params", "psi_ms"), "params.psi_ms");
  prm.nfvo_vim_delay_bound_ms =
      get_number(require_key(jp, "params", "big_psi_ms"), "params.big_psi_ms");
  prm.gso_location = static_cast<PopId>(
      get_integer(require_key(jp, "params", "gso_pop"), "params.gso_pop"));
  return data;
}

std::string instance_to_json(const InstanceData& data) {
  json root = json::object();
  json pops = json::array();
  for (const auto& p : data.pops) {
    json jp = {{"id", p.id}, {"label", p.label}};
    if (p.coordinates) jp["coordinates"] = {p.coordinates->x_km, p.coordinates->y_km};
    pops.push_back(std::move(jp));
  }
  root["pops"] = std::move(pops);
  root["delays"] = data.delays.rows();
  json vnfs = json::array();
  for (const auto& v : data.vnfs) {
    vnfs.push_back({{"id", v.id},
                    {"location", v.location},
                    {"omega_ms", v.vnfm_delay_bound_ms},
                    {"big_omega_ms", v.nfvo_vnfm_delay_bound_ms}});
  }
  root["vnfs"] = std::move(vnfs);
  const auto& prm = data.params;
  root["params"] = {{"phi_nfvo", prm.nfvo_capacity},
                    {"phi_vnfm", prm.vnfm_capacity},
                    {"psi_ms", prm.gso_nfvo_delay_bound_ms},
                    {"big_psi_ms", prm.nfvo_vim_delay_bound_ms},
                    {"gso_pop", prm.gso_location}};
  return root.dump(2) + "\n";
}

InstanceData load_instance_data(const std::filesystem::path& path) {
  return parse_instance(detail::read_text_file(path));
}

ProblemInstance load_problem(const std::filesystem::path& path) {
  return ProblemInstance(load_instance_data(path));
}

void save_problem(const ProblemInstance& instance, const std::filesystem::path& path) {
  detail::write_text_file(path, instance_to_json(instance.data()));
}

// ---------------------------------------------------------------------------
// Generator

GeneratorConfig parse_generator_config(std::string_view json_text) {
  using namespace detail;
  const json root = parse_json_text(json_text);
  require_object(root, "generator");
  reject_unknown_keys(root, "generator",
                      {"pop_count", "vnf_count", "area_side_km", "delay_per_km",
                       "delay_jitter_fraction", "omega_ms", "big_omega_ms",
                       "phi_nfvo", "phi_vnfm", "psi_ms", "big_psi_ms", "seed"});
  GeneratorConfig cfg;
  auto int_field = [&](const char* key, int& out) {
    if (auto it = root.find(key); it != root.end())
      out = static_cast<int>(get_integer(*it, std::string("generator.") + key));
  };
  auto num_field = [&](const char* key, double& out) {
    if (auto it = root.find(key); it != root.end())
      out = get_number(*it, std::string("generator.") + key);
  };
  int_field("pop_count", cfg.pop_count);
  int_field("vnf_count", cfg.vnf_count);
  num_field("area_side_km", cfg.area_side_km);
  num_field("delay_per_km", cfg.delay_per_km);
  num_field("delay_jitter_fraction", cfg.delay_jitter_fraction);
  num_field("omega_ms", cfg.vnfm_delay_bound_ms);
  num_field("big_omega_ms", cfg.nfvo_vnfm_delay_bound_ms);
  int_field("phi_nfvo", cfg.nfvo_capacity);
  int_field("phi_vnfm", cfg.vnfm_capacity);
  num_field("psi_ms", cfg.gso_nfvo_delay_bound_ms);
  num_field("big_psi_ms", cfg.nfvo_vim_delay_bound_ms);
  if (auto it = root.find("seed"); it != root.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer())
      parse_fail("generator.seed: expected an integer");
    cfg.seed = it->get<std::uint64_t>();
  }
  return cfg;
}

namespace {

void check_config(const GeneratorConfig& c) {
  auto bad = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "generator: " + what);
  };
  if (c.pop_count < 1) bad("pop_count must be at least 1");
  if (c.vnf_count < 0) bad("vnf_count must be nonnegative");
  if (!positive_finite(c.area_side_km)) bad("area_side_km must be positive");
  if (!positive_finite(c.delay_per_km)) bad("delay_per_km must be positive");
  if (!(c.delay_jitter_fraction >= 0.0 && c.delay_jitter_fraction < 1.0))
    bad("delay_jitter_fraction must lie in [0, 1)");
  if (!positive_finite(c.vnfm_delay_bound_ms) ||
      !positive_finite(c.nfvo_vnfm_delay_bound_ms) ||
      !positive_finite(c.gso_nfvo_delay_bound_ms) ||
      !positive_finite(c.nfvo_vim_delay_bound_ms))
    bad("delay bounds must be positive");
  if (c.nfvo_capacity < 1 || c.vnfm_capacity < 1) bad("capacities must be at least 1");
}

std::vector<VnfInstance> uniform_vnfs(int pop_count, int count, double omega,
                                      double big_omega, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, pop_count - 1);
  std::vector<VnfInstance> vnfs;
  vnfs.reserve(static_cast<std::size_t>(count));
  for (int v = 0; v < count; ++v) vnfs.push_back({v, pick(rng), omega, big_omega});
  return vnfs;
}

}  // namespace

PopId one_center(const DelayMatrix& delays) {
  const auto n = static_cast<PopId>(delays.size());
  PopId best = 0;
  double best_radius = std::numeric_limits<double>::infinity();
  for (PopId p = 0; p < n; ++p) {
    double radius = 0.0;
    for (PopId q = 0; q < n; ++q) radius = std::max(radius, delays(p, q));
    if (radius < best_radius) {
      best_radius = radius;
      best = p;
    }
  }
  return best;
}

ProblemInstance generate_instance(const GeneratorConfig& config) {
  check_config(config);
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> coord(0.0, config.area_side_km);
  std::uniform_real_distribution<double> jitter(-config.delay_jitter_fraction,
                                                config.delay_jitter_fraction);
  InstanceData data;
  const int n = config.pop_count;
  for (int p = 0; p < n; ++p) {
    const double x = coord(rng);
    const double y = coord(rng);
    data.pops.push_back({p, "pop" + std::to_string(p), Point{x, y}});
  }
  data.delays = DelayMatrix(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const auto& a = *data.pops[static_cast<std::size_t>(p)].coordinates;
      const auto& b = *data.pops[static_cast<std::size_t>(q)].coordinates;
      const double base =
          config.delay_per_km * std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
      const double forward = base * (1.0 + jitter(rng));
      const double backward = base * (1.0 + jitter(rng));
      const double d = 0.5 * (forward + backward);
      data.delays(p, q) = d;
      data.delays(q, p) = d;
    }
  }
  data.vnfs = uniform_vnfs(n, config.vnf_count, config.vnfm_delay_bound_ms,
                           config.nfvo_vnfm_delay_bound_ms, rng);
  data.params.nfvo_capacity = config.nfvo_capacity;
  data.params.vnfm_capacity = config.vnfm_capacity;
  data.params.gso_nfvo_delay_bound_ms = config.gso_nfvo_delay_bound_ms;
  data.params.nfvo_vim_delay_bound_ms = config.nfvo_vim_delay_bound_ms;
  data.params.gso_location = one_center(data.delays);
  return ProblemInstance(std::move(data));
}

ProblemInstance with_uniform_vnfs(const ProblemInstance& instance, int count,
                                  double vnfm_delay_bound_ms,
                                  double nfvo_vnfm_delay_bound_ms,
                                  std::uint64_t seed) {
  if (count < 0) throw Error(ErrorCode::kInvalidArgument, "VNF count must be nonnegative");
  std::mt19937_64 rng(seed);
  return instance.with_vnfs(uniform_vnfs(instance.pop_count(), count, vnfm_delay_bound_ms,
                                         nfvo_vnfm_delay_bound_ms, rng));
}

}  // namespace nfvplace
