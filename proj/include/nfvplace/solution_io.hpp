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

// Solution files:
//
//   {
//     "nfvos": [0, 5],                      active NFVO PoPs
//     "assignments": [0, 0, 5, ...],        head of every PoP (null = none)
//     "vnfms": [{"location": 0, "vnf_ids": [1, 4]}, ...],
//     "objective": 4,                       written, ignored on read
//     "status": "optimal",                  optional solver metadata
//     "nodes_explored": 123,
//     "iterations": 40
//   }

#ifndef NFVPLACE_SOLUTION_IO_HPP
#define NFVPLACE_SOLUTION_IO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "nfvplace/ilp_model.hpp"

namespace nfvplace {

struct SolutionMetadata {
  std::optional<std::string> status;
  std::optional<std::uint64_t> nodes_explored;
  std::optional<int> iterations;

  bool operator==(const SolutionMetadata&) const = default;
};

struct SolutionFile {
  Solution solution;
  SolutionMetadata metadata;
};

std::string solution_to_json(const Solution& solution, const SolutionMetadata& metadata = {});
SolutionFile parse_solution(std::string_view json_text);
void save_solution(const std::filesystem::path& path, const Solution& solution,
                   const SolutionMetadata& metadata = {});
SolutionFile load_solution(const std::filesystem::path& path);

/// {"feasible": bool, "violations": [{"constraint": "C8", "index": [...],
/// "measured": x, "bound": y}, ...]}
std::string report_to_json(const ViolationReport& report);

/// One line per violation, e.g. "C13 index=(3,0) measured=71.2 bound=60".
std::string report_to_text(const ViolationReport& report);

}  // namespace nfvplace

#endif  // NFVPLACE_SOLUTION_IO_HPP
