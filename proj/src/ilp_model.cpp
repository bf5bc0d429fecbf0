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

#include "nfvplace/ilp_model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "json_util.hpp"
#include "nfvplace/error.hpp"

namespace nfvplace {

int DomainPlan::nfvo_count() const noexcept {
  return static_cast<int>(std::count(nfvo_at.begin(), nfvo_at.end(), true));
}

std::vector<PopId> DomainPlan::heads() const {
  std::vector<PopId> out;
  for (std::size_t p = 0; p < nfvo_at.size(); ++p)
    if (nfvo_at[p]) out.push_back(static_cast<PopId>(p));
  return out;
}

std::vector<PopId> DomainPlan::members(PopId head) const {
  std::vector<PopId> out;
  for (std::size_t q = 0; q < head_of.size(); ++q)
    if (head_of[q] == head) out.push_back(static_cast<PopId>(q));
  return out;
}

std::string to_string(ConstraintFamily family) {
  return "C" + std::to_string(static_cast<int>(family));
}

std::size_t ViolationReport::count(ConstraintFamily family) const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(),
      [family](const Violation& v) { return v.family == family; }));
}

int objective_value(const Solution& solution) {
  return solution.nfvo_count() + solution.vnfm_count();
}

int capacity_lower_bound(const ProblemInstance& instance) {
  const int n = instance.vnf_count();
  const auto& prm = instance.params();
  return (n + prm.nfvo_capacity - 1) / prm.nfvo_capacity +
         (n + prm.vnfm_capacity - 1) / prm.vnfm_capacity;
}

namespace {

[[noreturn]] void out_of_range(const std::string& what) {
  throw Error(ErrorCode::kOutOfRange, what);
}

void check_indices(const ProblemInstance& instance, const Solution& s) {
  const int n = instance.pop_count();
  const auto& plan = s.plan;
  if (static_cast<int>(plan.nfvo_at.size()) != n || plan.pop_count() != n) {
    std::ostringstream os;
    os << "solution plan covers " << plan.head_of.size() << " PoPs, instance has " << n;
    out_of_range(os.str());
  }
  for (int q = 0; q < n; ++q) {
    const PopId h = plan.head_of[static_cast<std::size_t>(q)];
    if (h != kNoHead && (h < 0 || h >= n))
      out_of_range("head of PoP " + std::to_string(q) + " is " + std::to_string(h));
  }
  for (std::size_t m = 0; m < s.vnfms.size(); ++m) {
    const auto& vm = s.vnfms[m];
    if (vm.location < 0 || vm.location >= n)
      out_of_range("VNFM " + std::to_string(m) + " at PoP " + std::to_string(vm.location));
    for (VnfId v : vm.managed)
      if (v < 0 || v >= instance.vnf_count())
        out_of_range("VNFM " + std::to_string(m) + " manages unknown VNF " +
                     std::to_string(v));
  }
}

}  // namespace

ViolationReport check_feasibility(const ProblemInstance& instance,
                                  const Solution& solution) {
  check_indices(instance, solution);
  ViolationReport report;
  auto add = [&report](ConstraintFamily f, std::vector<int> idx, double measured,
                       double bound) {
    report.entries.push_back({f, std::move(idx), measured, bound});
  };
  using F = ConstraintFamily;
  const int n = instance.pop_count();
  const auto& prm = instance.params();
  const auto& plan = solution.plan;
  auto head = [&plan](PopId q) { return plan.head_of[static_cast<std::size_t>(q)]; };
  auto active = [&plan](PopId p) { return static_cast<bool>(plan.nfvo_at[static_cast<std::size_t>(p)]); };

  for (PopId q = 0; q < n; ++q) {
    if (head(q) == kNoHead) add(F::kC2, {q}, 0, 1);
  }
  for (PopId q = 0; q < n; ++q) {
    const PopId p = head(q);
    if (p != kNoHead && !active(p)) add(F::kC3, {q, p}, 1, 0);
  }
  for (PopId p = 0; p < n; ++p) {
    if (active(p) && head(p) != p) add(F::kC4, {p}, 0, 1);
  }

  std::vector<int> times_assigned(static_cast<std::size_t>(instance.vnf_count()), 0);
  for (const auto& vm : solution.vnfms)
    for (VnfId v : vm.managed) ++times_assigned[static_cast<std::size_t>(v)];
  for (VnfId v = 0; v < instance.vnf_count(); ++v) {
    const int k = times_assigned[static_cast<std::size_t>(v)];
    if (k != 1) add(F::kC6, {v}, k, 1);
  }

  for (std::size_t m = 0; m < solution.vnfms.size(); ++m) {
    const auto& vm = solution.vnfms[m];
    const PopId vnfm_head = head(vm.location);
    for (VnfId v : vm.managed) {
      const PopId vnf_head = head(instance.vnf(v).location);
      if (vnfm_head != kNoHead && vnf_head != vnfm_head)
        add(F::kC8, {v, static_cast<int>(m)}, vnf_head, vnfm_head);
    }
  }

  // NFVO capacity counts the VNF instances located in the domain.
  std::vector<int> domain_load(static_cast<std::size_t>(n), 0);
  for (const auto& v : instance.vnfs()) {
    const PopId h = head(v.location);
    if (h != kNoHead) ++domain_load[static_cast<std::size_t>(h)];
  }
  for (PopId p = 0; p < n; ++p) {
    const int load = domain_load[static_cast<std::size_t>(p)];
    const int bound = active(p) ? prm.nfvo_capacity : 0;
    if (load > bound) add(F::kC9, {p}, load, bound);
  }

  for (std::size_t m = 0; m < solution.vnfms.size(); ++m) {
    const auto load = static_cast<int>(solution.vnfms[m].managed.size());
    if (load > prm.vnfm_capacity)
      add(F::kC10, {static_cast<int>(m)}, load, prm.vnfm_capacity);
    if (load < 1) add(F::kC11, {static_cast<int>(m)}, load, 1);
  }

  for (PopId p = 0; p < n; ++p) {
    const double d = instance.delay(prm.gso_location, p);
    if (active(p) && d > prm.gso_nfvo_delay_bound_ms)
      add(F::kC12, {p}, d, prm.gso_nfvo_delay_bound_ms);
  }
  for (PopId q = 0; q < n; ++q) {
    const PopId p = head(q);
    if (p == kNoHead) continue;
    const double d = instance.delay(p, q);
    if (d > prm.nfvo_vim_delay_bound_ms) add(F::kC13, {q, p}, d, prm.nfvo_vim_delay_bound_ms);
  }

  for (std::size_t m = 0; m < solution.vnfms.size(); ++m) {
    const auto& vm = solution.vnfms[m];
    const PopId vnfm_head = head(vm.location);
    for (VnfId v : vm.managed) {
      const auto& vnf = instance.vnf(v);
      const double d = instance.delay(vnf.location, vm.location);
      if (d > vnf.vnfm_delay_bound_ms)
        add(F::kC14, {v, static_cast<int>(m)}, d, vnf.vnfm_delay_bound_ms);
      if (vnfm_head != kNoHead) {
        const double dh = instance.delay(vm.location, vnfm_head);
        if (dh > vnf.nfvo_vnfm_delay_bound_ms)
          add(F::kC15, {v, static_cast<int>(m)}, dh, vnf.nfvo_vnfm_delay_bound_ms);
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Linear model

LpModel::LpModel(LpLayout layout) : layout_(layout) {
  names_.resize(static_cast<std::size_t>(layout_.variable_count()));
  const int n = layout_.pops;
  const int nv = layout_.vnfs;
  const int nm = layout_.vnfms();
  auto set = [this](int col, std::string name) {
    names_[static_cast<std::size_t>(col)] = std::move(name);
  };
  auto s = [](int i) { return std::to_string(i); };
  for (int p = 0; p < n; ++p) set(layout_.h(p), "h_" + s(p));
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p) set(layout_.r(q, p), "r_" + s(q) + "_" + s(p));
  for (int m = 0; m < nm; ++m)
    for (int p = 0; p < n; ++p) set(layout_.x(m, p), "x_" + s(m) + "_" + s(p));
  for (int v = 0; v < nv; ++v)
    for (int m = 0; m < nm; ++m)
      for (int p = 0; p < n; ++p)
        set(layout_.y(v, m, p), "y_" + s(v) + "_" + s(m) + "_" + s(p));
  for (int v = 0; v < nv; ++v)
    for (int m = 0; m < nm; ++m)
      for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p)
          set(layout_.z(v, m, q, p),
              "z_" + s(v) + "_" + s(m) + "_" + s(q) + "_" + s(p));
}

std::size_t LpModel::family_row_count(std::string_view family) const {
  return static_cast<std::size_t>(std::count_if(
      rows_.begin(), rows_.end(), [family](const LpRow& r) { return r.family == family; }));
}

bool LpModel::satisfied_by(std::span<const int> values, std::string_view family) const {
  // Exact comparison: delay rows have a single term, so this matches the
  // checker's strict "> bound" test.
  for (const auto& row : rows_) {
    if (!family.empty() && row.family != family) continue;
    double lhs = 0.0;
    for (const auto& t : row.terms)
      lhs += t.coefficient * values[static_cast<std::size_t>(t.variable)];
    switch (row.sense) {
      case RowSense::kLessEqual:
        if (lhs > row.rhs) return false;
        break;
      case RowSense::kEqual:
        if (lhs != row.rhs) return false;
        break;
      case RowSense::kGreaterEqual:
        if (lhs < row.rhs) return false;
        break;
    }
  }
  return true;
}

namespace {

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void append_expression(std::ostringstream& os, const std::vector<LpTerm>& terms,
                       const std::vector<std::string>& names) {
  if (terms.empty()) {
    // LP has no empty left-hand side; a zero-coefficient term stands in.
    os << " 0 " << names.front();
    return;
  }
  int on_line = 0;
  bool first = true;
  for (const auto& t : terms) {
    if (on_line == 8) {
      os << "\n   ";
      on_line = 0;
    }
    const double c = t.coefficient;
    const double mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << " -";
    } else {
      os << (c < 0 ? " -" : " +");
    }
    if (mag != 1.0) os << " " << format_number(mag);
    os << " " << names[static_cast<std::size_t>(t.variable)];
    first = false;
    ++on_line;
  }
}

}  // namespace

std::string LpModel::to_lp_text() const {
  std::ostringstream os;
  os << "\\ NFVO/VNFM placement model\n";
  os << "\\ pops=" << layout_.pops << " vnfs=" << layout_.vnfs
     << " vnfms=" << layout_.vnfms() << "\n";
  os << "Minimize\n obj:";
  append_expression(os, objective_, names_);
  os << "\nSubject To\n";
  for (const auto& row : rows_) {
    os << " " << row.name << ":";
    append_expression(os, row.terms, names_);
    switch (row.sense) {
      case RowSense::kLessEqual: os << " <= "; break;
      case RowSense::kEqual: os << " = "; break;
      case RowSense::kGreaterEqual: os << " >= "; break;
    }
    os << format_number(row.rhs) << "\n";
  }
  os << "Binary\n";
  for (const auto& name : names_) os << " " << name << "\n";
  os << "End\n";
  return os.str();
}

LpModel build_lp_model(const ProblemInstance& instance) {
  const LpLayout L{instance.pop_count(), instance.vnf_count()};
  LpModel model(L);
  const int n = L.pops;
  const int nv = L.vnfs;
  const int nm = L.vnfms();
  const auto& prm = instance.params();
  auto s = [](int i) { return std::to_string(i); };
  auto row = [&model](std::string family, std::string suffix, std::vector<LpTerm> terms,
                      RowSense sense, double rhs) {
    std::string name = family + "_" + suffix;
    model.add_row({std::move(name), std::move(family), std::move(terms), sense, rhs});
  };
  using S = RowSense;

  std::vector<LpTerm> obj;
  for (int p = 0; p < n; ++p) obj.push_back({1, L.h(p)});
  for (int m = 0; m < nm; ++m)
    for (int p = 0; p < n; ++p) obj.push_back({1, L.x(m, p)});
  model.set_objective(std::move(obj));

  // c2: every PoP has exactly one head
  for (int q = 0; q < n; ++q) {
    std::vector<LpTerm> t;
    for (int p = 0; p < n; ++p) t.push_back({1, L.r(q, p)});
    row("c2", s(q), std::move(t), S::kEqual, 1);
  }
  // c3: heads are active
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p)
      row("c3", s(q) + "_" + s(p), {{1, L.r(q, p)}, {-1, L.h(p)}}, S::kLessEqual, 0);
  // c4: an NFVO heads its own PoP
  for (int p = 0; p < n; ++p)
    row("c4", s(p), {{1, L.r(p, p)}, {-1, L.h(p)}}, S::kEqual, 0);
  // c5: a VNFM sits on at most one PoP
  for (int m = 0; m < nm; ++m) {
    std::vector<LpTerm> t;
    for (int p = 0; p < n; ++p) t.push_back({1, L.x(m, p)});
    row("c5", s(m), std::move(t), S::kLessEqual, 1);
  }
  // c6: every VNF has one VNFM
  for (int v = 0; v < nv; ++v) {
    std::vector<LpTerm> t;
    for (int m = 0; m < nm; ++m)
      for (int p = 0; p < n; ++p) t.push_back({1, L.y(v, m, p)});
    row("c6", s(v), std::move(t), S::kEqual, 1);
  }
  // c7: assignment only to a placed VNFM
  for (int v = 0; v < nv; ++v)
    for (int m = 0; m < nm; ++m)
      for (int p = 0; p < n; ++p)
        row("c7", s(v) + "_" + s(m) + "_" + s(p), {{1, L.y(v, m, p)}, {-1, L.x(m, p)}},
            S::kLessEqual, 0);
  // c10: VNFM capacity; c11: no idle VNFM
  for (int m = 0; m < nm; ++m)
    for (int p = 0; p < n; ++p) {
      std::vector<LpTerm> t;
      for (int v = 0; v < nv; ++v) t.push_back({1, L.y(v, m, p)});
      t.push_back({-static_cast<double>(prm.vnfm_capacity), L.x(m, p)});
      row("c10", s(m) + "_" + s(p), t, S::kLessEqual, 0);
      for (auto& term : t) term.coefficient = -term.coefficient;
      t.back().coefficient = 1;
      row("c11", s(m) + "_" + s(p), std::move(t), S::kLessEqual, 0);
    }
  // c12: GSO-NFVO delay; w_p is 1 only at the GSO PoP
  {
    const int g = prm.gso_location;
    for (int q = 0; q < n; ++q) {
      if (q == g) continue;
      row("c12", s(q), {{instance.delay(g, q), L.h(q)}}, S::kLessEqual,
          prm.gso_nfvo_delay_bound_ms);
    }
  }
  // c13: NFVO-VIM delay
  for (int q = 0; q < n; ++q)
    for (int p = 0; p < n; ++p) {
      if (p == q) continue;
      row("c13", s(q) + "_" + s(p), {{instance.delay(p, q), L.r(q, p)}}, S::kLessEqual,
          prm.nfvo_vim_delay_bound_ms);
    }
  // c14: VNF-VNFM delay; l_{v,p} is 1 only at the VNF's location
  for (int v = 0; v < nv; ++v) {
    const auto& vnf = instance.vnf(v);
    for (int m = 0; m < nm; ++m)
      for (int q = 0; q < n; ++q) {
        if (q == vnf.location) continue;
        row("c14", s(v) + "_" + s(m) + "_" + s(q),
            {{instance.delay(vnf.location, q), L.y(v, m, q)}}, S::kLessEqual,
            vnf.vnfm_delay_bound_ms);
      }
  }
  // c16: same domain for a VNF and its VNFM (linear form of C8)
  for (int v = 0; v < nv; ++v) {
    const int loc = instance.vnf(v).location;
    for (int m = 0; m < nm; ++m)
      for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p)
          row("c16", s(v) + "_" + s(m) + "_" + s(q) + "_" + s(p),
              {{1, L.z(v, m, q, p)}, {-1, L.r(loc, p)}}, S::kLessEqual, 0);
  }
  // c17: NFVO capacity (linear form of C9)
  for (int p = 0; p < n; ++p) {
    std::vector<LpTerm> t;
    for (int v = 0; v < nv; ++v)
      for (int m = 0; m < nm; ++m)
        for (int q = 0; q < n; ++q) t.push_back({1, L.z(v, m, q, p)});
    t.push_back({-static_cast<double>(prm.nfvo_capacity), L.h(p)});
    row("c17", s(p), std::move(t), S::kLessEqual, 0);
  }
  // c18: NFVO-VNFM delay (linear form of C15)
  for (int v = 0; v < nv; ++v) {
    const auto& vnf = instance.vnf(v);
    for (int m = 0; m < nm; ++m)
      for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p) {
          if (p == q) continue;
          row("c18", s(v) + "_" + s(m) + "_" + s(q) + "_" + s(p),
              {{instance.delay(p, q), L.z(v, m, q, p)}}, S::kLessEqual,
              vnf.nfvo_vnfm_delay_bound_ms);
        }
  }
  // c19-c21: z = y * r, including q == p so c17 counts VNFMs at the head.
  for (int v = 0; v < nv; ++v)
    for (int m = 0; m < nm; ++m)
      for (int q = 0; q < n; ++q)
        for (int p = 0; p < n; ++p) {
          const std::string idx = s(v) + "_" + s(m) + "_" + s(q) + "_" + s(p);
          const int z = L.z(v, m, q, p);
          row("c19", idx, {{1, z}, {-1, L.y(v, m, q)}}, S::kLessEqual, 0);
          row("c20", idx, {{1, z}, {-1, L.r(q, p)}}, S::kLessEqual, 0);
          row("c21", idx, {{1, z}, {-1, L.y(v, m, q)}, {-1, L.r(q, p)}}, S::kGreaterEqual,
              -1);
        }
  return model;
}

LpSummary export_lp(const ProblemInstance& instance, const std::filesystem::path& path) {
  const LpModel model = build_lp_model(instance);
  detail::write_text_file(path, model.to_lp_text());
  return {model.variable_names().size(), model.rows().size()};
}

// ---------------------------------------------------------------------------
// LP grammar check

namespace {

enum class Section { kNone, kObjective, kConstraints, kBinary, kEnd };

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Token {
  enum Kind { kName, kNumber, kSign, kColon, kSense } kind;
  std::string text;
  int line;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
}

void tokenize(std::string_view line, int line_no, std::vector<Token>& out,
              std::vector<std::string>& diag) {
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (name_start(c)) {
      std::size_t j = i;
      while (j < line.size() && name_char(line[j])) ++j;
      out.push_back({Token::kName, std::string(line.substr(i, j - i)), line_no});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0;
      auto res = std::from_chars(line.data() + i, line.data() + line.size(), value);
      if (res.ec != std::errc()) {
        diag.push_back("line " + std::to_string(line_no) + ": bad number");
        return;
      }
      const auto len = static_cast<std::size_t>(res.ptr - (line.data() + i));
      out.push_back({Token::kNumber, std::string(line.substr(i, len)), line_no});
      i += len;
    } else if (c == '+' || c == '-') {
      out.push_back({Token::kSign, std::string(1, c), line_no});
      ++i;
    } else if (c == ':') {
      out.push_back({Token::kColon, ":", line_no});
      ++i;
    } else if (c == '<' || c == '>' || c == '=') {
      std::size_t j = i + 1;
      if (j < line.size() && (line[j] == '=' || line[j] == '<' || line[j] == '>')) ++j;
      out.push_back({Token::kSense, std::string(line.substr(i, j - i)), line_no});
      i = j;
    } else {
      diag.push_back("line " + std::to_string(line_no) + ": unexpected character '" +
                     std::string(1, c) + "'");
      return;
    }
  }
}

// Parses "[name:] expr" up to a sense token (or end); returns index past it.
std::size_t parse_expression(const std::vector<Token>& toks, std::size_t i,
                             std::set<std::string>& used, std::vector<std::string>& diag) {
  bool expect_term = true;
  bool signed_term = false;
  while (i < toks.size() && toks[i].kind != Token::kSense) {
    const auto& t = toks[i];
    if (t.kind == Token::kSign) {
      if (signed_term)
        diag.push_back("line " + std::to_string(t.line) + ": repeated sign");
      expect_term = true;
      signed_term = true;
      ++i;
      continue;
    }
    signed_term = false;
    if (!expect_term && t.kind == Token::kName && i + 1 < toks.size() &&
        toks[i + 1].kind == Token::kColon) {
      break;  // next statement's label
    }
    if (t.kind == Token::kNumber) {
      if (!expect_term)
        diag.push_back("line " + std::to_string(t.line) + ": missing operator before '" +
                       t.text + "'");
      if (i + 1 >= toks.size() || toks[i + 1].kind != Token::kName) {
        diag.push_back("line " + std::to_string(t.line) + ": coefficient without variable");
        return i + 1;
      }
      ++i;
      continue;
    }
    if (t.kind == Token::kName) {
      if (!expect_term)
        diag.push_back("line " + std::to_string(t.line) + ": missing operator before '" +
                       t.text + "'");
      used.insert(t.text);
      expect_term = false;
      ++i;
      continue;
    }
    diag.push_back("line " + std::to_string(t.line) + ": unexpected '" + t.text + "'");
    ++i;
  }
  if (expect_term) {
    const int line = i < toks.size() ? toks[i].line : (toks.empty() ? 0 : toks.back().line);
    diag.push_back("line " + std::to_string(line) + ": empty or dangling expression");
  }
  return i;
}

}  // namespace

LpCheckResult check_lp_text(std::string_view text) {
  LpCheckResult result;
  auto& diag = result.diagnostics;
  Section section = Section::kNone;
  bool saw_objective = false, saw_constraints = false, saw_end = false;
  std::vector<Token> objective_tokens, constraint_tokens;
  std::vector<std::string> binaries;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    std::string_view line = raw;
    if (auto bs = line.find('\\'); bs != std::string_view::npos) line = line.substr(0, bs);
    line = trim(line);
    if (line.empty()) continue;
    if (saw_end) {
      diag.push_back("line " + std::to_string(line_no) + ": content after End");
      continue;
    }
    const std::string key = lower(line);
    if (key == "minimize" || key == "maximize" || key == "min" || key == "max") {
      if (section != Section::kNone) diag.push_back("objective section out of order");
      section = Section::kObjective;
      saw_objective = true;
      continue;
    }
    if (key == "subject to" || key == "st" || key == "s.t.") {
      if (section != Section::kObjective) diag.push_back("'Subject To' out of order");
      section = Section::kConstraints;
      saw_constraints = true;
      continue;
    }
    if (key == "binary" || key == "binaries" || key == "bin") {
      if (section != Section::kConstraints) diag.push_back("'Binary' out of order");
      section = Section::kBinary;
      continue;
    }
    if (key == "end") {
      section = Section::kEnd;
      saw_end = true;
      continue;
    }
    switch (section) {
      case Section::kNone:
        diag.push_back("line " + std::to_string(line_no) + ": text before objective");
        break;
      case Section::kObjective:
        tokenize(line, line_no, objective_tokens, diag);
        break;
      case Section::kConstraints:
        tokenize(line, line_no, constraint_tokens, diag);
        break;
      case Section::kBinary: {
        std::vector<Token> toks;
        tokenize(line, line_no, toks, diag);
        for (const auto& t : toks) {
          if (t.kind != Token::kName)
            diag.push_back("line " + std::to_string(t.line) + ": bad binary declaration");
          else
            binaries.push_back(t.text);
        }
        break;
      }
      case Section::kEnd:
        break;
    }
  }
  if (!saw_objective) diag.push_back("missing objective section");
  if (!saw_constraints) diag.push_back("missing 'Subject To' section");
  if (!saw_end) diag.push_back("missing End");

  std::set<std::string> used;
  {
    std::size_t i = 0;
    if (objective_tokens.size() >= 2 && objective_tokens[0].kind == Token::kName &&
        objective_tokens[1].kind == Token::kColon)
      i = 2;
    i = parse_expression(objective_tokens, i, used, diag);
    if (i != objective_tokens.size()) diag.push_back("trailing tokens in objective");
  }

  std::set<std::string> row_names;
  std::size_t i = 0;
  const auto& ct = constraint_tokens;
  while (i < ct.size()) {
    std::string name;
    if (i + 1 < ct.size() && ct[i].kind == Token::kName && ct[i + 1].kind == Token::kColon) {
      name = ct[i].text;
      i += 2;
    } else {
      diag.push_back("line " + std::to_string(ct[i].line) + ": unnamed constraint");
    }
    if (!name.empty() && !row_names.insert(name).second)
      diag.push_back("duplicate constraint name '" + name + "'");
    i = parse_expression(ct, i, used, diag);
    if (i >= ct.size() || ct[i].kind != Token::kSense) {
      diag.push_back("constraint '" + name + "' has no sense");
      break;
    }
    const std::string& sense = ct[i].text;
    if (sense != "<=" && sense != ">=" && sense != "=" && sense != "=<" && sense != "=>" &&
        sense != "<" && sense != ">")
      diag.push_back("line " + std::to_string(ct[i].line) + ": bad sense '" + sense + "'");
    ++i;
    if (i < ct.size() && ct[i].kind == Token::kSign) ++i;
    if (i >= ct.size() || ct[i].kind != Token::kNumber) {
      diag.push_back("constraint '" + name + "' has no right-hand side");
      break;
    }
    ++i;
    ++result.constraints;
    const auto us = name.find('_');
    ++result.rows_by_family[name.substr(0, us)];
  }

  std::set<std::string> declared;
  for (const auto& b : binaries)
    if (!declared.insert(b).second) diag.push_back("variable '" + b + "' declared twice");
  result.binaries = declared.size();
  for (const auto& u : used)
    if (!declared.count(u)) diag.push_back("variable '" + u + "' is not declared binary");
  return result;
}

}  // namespace nfvplace
