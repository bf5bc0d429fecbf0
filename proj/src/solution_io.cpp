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

#include "nfvplace/solution_io.hpp"

#include <sstream>

#include "json_util.hpp"

namespace nfvplace {

using detail::json;

std::string solution_to_json(const Solution& solution, const SolutionMetadata& metadata) {
  json root = json::object();
  root["nfvos"] = solution.plan.heads();
  json assignments = json::array();
  for (PopId h : solution.plan.head_of) {
    if (h == kNoHead)
      assignments.push_back(nullptr);
    else
      assignments.push_back(h);
  }
  root["assignments"] = std::move(assignments);
  json vnfms = json::array();
  for (const auto& vm : solution.vnfms)
    vnfms.push_back({{"location", vm.location}, {"vnf_ids", vm.managed}});
  root["vnfms"] = std::move(vnfms);
  root["objective"] = objective_value(solution);
  if (metadata.status) root["status"] = *metadata.status;
  if (metadata.nodes_explored) root["nodes_explored"] = *metadata.nodes_explored;
  if (metadata.iterations) root["iterations"] = *metadata.iterations;
  return root.dump(2) + "\n";
}

SolutionFile parse_solution(std::string_view json_text) {
  using namespace detail;
  const json root = parse_json_text(json_text);
  require_object(root, "solution");
  reject_unknown_keys(root, "solution",
                      {"nfvos", "assignments", "vnfms", "objective", "status",
                       "nodes_explored", "iterations"});
  SolutionFile out;
  auto& plan = out.solution.plan;
  const auto& assignments =
      require_array(require_key(root, "solution", "assignments"), "assignments");
  for (const auto& a : assignments)
    plan.head_of.push_back(a.is_null() ? kNoHead
                                       : static_cast<PopId>(get_integer(a, "assignments")));
  plan.nfvo_at.assign(plan.head_of.size(), false);
  for (const auto& p : require_array(require_key(root, "solution", "nfvos"), "nfvos")) {
    const auto id = get_integer(p, "nfvos");
    if (id < 0 || id >= static_cast<long long>(plan.nfvo_at.size()))
      throw Error(ErrorCode::kOutOfRange, "nfvos: PoP " + std::to_string(id) + " out of range");
    plan.nfvo_at[static_cast<std::size_t>(id)] = true;
  }
  const auto& vnfms = require_array(require_key(root, "solution", "vnfms"), "vnfms");
  for (std::size_t m = 0; m < vnfms.size(); ++m) {
    const std::string where = "vnfms[" + std::to_string(m) + "]";
    const auto& jm = require_object(vnfms[m], where);
    reject_unknown_keys(jm, where, {"location", "vnf_ids"});
    VnfmAssignment vm;
    vm.location = static_cast<PopId>(get_integer(require_key(jm, where, "location"), where));
    for (const auto& v : require_array(require_key(jm, where, "vnf_ids"), where + ".vnf_ids"))
      vm.managed.push_back(static_cast<VnfId>(get_integer(v, where + ".vnf_ids")));
    out.solution.vnfms.push_back(std::move(vm));
  }
  if (auto it = root.find("status"); it != root.end())
    out.metadata.status = get_string(*it, "status");
  if (auto it = root.find("nodes_explored"); it != root.end())
    out.metadata.nodes_explored = static_cast<std::uint64_t>(get_integer(*it, "nodes_explored"));
  if (auto it = root.find("iterations"); it != root.end())
    out.metadata.iterations = static_cast<int>(get_integer(*it, "iterations"));
  return out;
}

void save_solution(const std::filesystem::path& path, const Solution& solution,
                   const SolutionMetadata& metadata) {
  detail::write_text_file(path, solution_to_json(solution, metadata));
}

SolutionFile load_solution(const std::filesystem::path& path) {
  return parse_solution(detail::read_text_file(path));
}

std::string report_to_json(const ViolationReport& report) {
  json root = json::object();
  root["feasible"] = report.feasible();
  json entries = json::array();
  for (const auto& v : report.entries) {
    entries.push_back({{"constraint", to_string(v.family)},
                       {"index", v.index},
                       {"measured", v.measured},
                       {"bound", v.bound}});
  }
  root["violations"] = std::move(entries);
  return root.dump(2) + "\n";
}

std::string report_to_text(const ViolationReport& report) {
  std::ostringstream os;
  for (const auto& v : report.entries) {
    os << to_string(v.family) << " index=(";
    for (std::size_t i = 0; i < v.index.size(); ++i) os << (i ? "," : "") << v.index[i];
    os << ") measured=" << v.measured << " bound=" << v.bound << "\n";
  }
  return os.str();
}

}  // namespace nfvplace
