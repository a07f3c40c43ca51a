#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "laplan/constraints.hpp"
#include "laplan/cost.hpp"
#include "laplan/model.hpp"

namespace laplan {

// Shortest decimal string that parses back to exactly the same double,
// via to_chars/from_chars so the output is locale-independent and
// byte-stable across runs.
inline std::string format_double(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

struct LineReader {
  std::istream& in;
  std::string path;
  int lineno = 0;

  // next content line with comments stripped; empty optional at EOF
  std::optional<std::pair<std::string, int>> next() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineno;
      if (const auto hash = raw.find('#'); hash != std::string::npos)
        raw.erase(hash);
      const std::string_view t = trim(raw);
      if (!t.empty()) return std::make_pair(std::string(t), lineno);
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
  }
};

inline std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline double parse_double(const LineReader& r, int line, const std::string& tok) {
  if (tok == "inf" || tok == "infinity")
    return std::numeric_limits<double>::infinity();
  double v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    r.fail(line, "expected a number, got '" + tok + "'");
  return v;
}

inline long long parse_int(const LineReader& r, int line, const std::string& tok) {
  long long v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    r.fail(line, "expected an integer, got '" + tok + "'");
  return v;
}

// "key = value" (spaces optional)
inline std::optional<std::pair<std::string, std::string>> parse_kv(std::string_view s) {
  const auto eq = s.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  return std::make_pair(std::string(trim(s.substr(0, eq))),
                        std::string(trim(s.substr(eq + 1))));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Instance file
//
//   [network]   n_bs / n_bsc / n_msc / proximity_radius as key = value
//   [bs]        id x y call_traffic bhca trx_demand paging_rate paging_capacity
//   [bsc]       id x y call_capacity bhca_capacity trx_capacity paging_capacity msc
//   [handoff]   i j h_ij   (sparse; unlisted pairs are zero)

inline Instance load_instance(std::istream& in, const std::string& path) {
  detail::LineReader r{in, path};

  int n_bs = -1, n_bsc = -1, n_msc = -1;
  double radius = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::vector<std::string>, int>> bs_rows, bsc_rows, h_rows;

  enum class Section { None, Network, Bs, Bsc, Handoff } sec = Section::None;
  while (auto ln = r.next()) {
    const auto& [text, line] = *ln;
    if (text.front() == '[') {
      if (text == "[network]") sec = Section::Network;
      else if (text == "[bs]") sec = Section::Bs;
      else if (text == "[bsc]") sec = Section::Bsc;
      else if (text == "[handoff]") sec = Section::Handoff;
      else r.fail(line, "unknown section " + text);
      continue;
    }
    switch (sec) {
      case Section::None:
        r.fail(line, "content before any [section]");
      case Section::Network: {
        const auto kv = detail::parse_kv(text);
        if (!kv) r.fail(line, "expected key = value");
        const auto& [key, val] = *kv;
        if (key == "n_bs") n_bs = static_cast<int>(detail::parse_int(r, line, val));
        else if (key == "n_bsc") n_bsc = static_cast<int>(detail::parse_int(r, line, val));
        else if (key == "n_msc") n_msc = static_cast<int>(detail::parse_int(r, line, val));
        else if (key == "proximity_radius") radius = detail::parse_double(r, line, val);
        else r.fail(line, "unknown [network] key '" + key + "'");
        break;
      }
      case Section::Bs: bs_rows.emplace_back(detail::split_ws(text), line); break;
      case Section::Bsc: bsc_rows.emplace_back(detail::split_ws(text), line); break;
      case Section::Handoff: h_rows.emplace_back(detail::split_ws(text), line); break;
    }
  }

  if (n_bs < 1 || n_bsc < 1 || n_msc < 1)
    throw ParseError(path + ": [network] must set n_bs, n_bsc and n_msc");

  Instance inst;
  inst.n_msc = n_msc;
  inst.proximity_radius = radius;
  inst.bss.resize(n_bs);
  inst.bscs.resize(n_bsc);
  inst.handoff.resize(n_bs);

  std::vector<bool> seen_bs(n_bs, false), seen_bsc(n_bsc, false);
  for (const auto& [tok, line] : bs_rows) {
    if (tok.size() != 8) r.fail(line, "[bs] row needs 8 fields");
    const long long id = detail::parse_int(r, line, tok[0]);
    if (id < 0 || id >= n_bs) r.fail(line, "BS id out of range");
    if (seen_bs[id]) r.fail(line, "duplicate BS id " + tok[0]);
    seen_bs[id] = true;
    BaseStation& b = inst.bss[id];
    b.id = static_cast<int>(id);
    b.x = detail::parse_double(r, line, tok[1]);
    b.y = detail::parse_double(r, line, tok[2]);
    b.call_traffic = detail::parse_double(r, line, tok[3]);
    b.bhca = detail::parse_double(r, line, tok[4]);
    b.trx_demand = static_cast<int>(detail::parse_int(r, line, tok[5]));
    b.paging_rate = detail::parse_double(r, line, tok[6]);
    b.paging_capacity = detail::parse_double(r, line, tok[7]);
  }
  for (const auto& [tok, line] : bsc_rows) {
    if (tok.size() != 8) r.fail(line, "[bsc] row needs 8 fields");
    const long long id = detail::parse_int(r, line, tok[0]);
    if (id < 0 || id >= n_bsc) r.fail(line, "BSC id out of range");
    if (seen_bsc[id]) r.fail(line, "duplicate BSC id " + tok[0]);
    seen_bsc[id] = true;
    Bsc& c = inst.bscs[id];
    c.id = static_cast<int>(id);
    c.x = detail::parse_double(r, line, tok[1]);
    c.y = detail::parse_double(r, line, tok[2]);
    c.call_capacity = detail::parse_double(r, line, tok[3]);
    c.bhca_capacity = detail::parse_double(r, line, tok[4]);
    c.trx_capacity = static_cast<int>(detail::parse_int(r, line, tok[5]));
    c.paging_capacity = detail::parse_double(r, line, tok[6]);
    c.msc = static_cast<int>(detail::parse_int(r, line, tok[7]));
  }
  for (int i = 0; i < n_bs; ++i)
    if (!seen_bs[i]) throw ParseError(path + ": missing [bs] row for id " + std::to_string(i));
  for (int c = 0; c < n_bsc; ++c)
    if (!seen_bsc[c]) throw ParseError(path + ": missing [bsc] row for id " + std::to_string(c));

  std::vector<bool> seen_h(static_cast<std::size_t>(n_bs) * n_bs, false);
  for (const auto& [tok, line] : h_rows) {
    if (tok.size() != 3) r.fail(line, "[handoff] row needs 3 fields: i j h_ij");
    const long long i = detail::parse_int(r, line, tok[0]);
    const long long j = detail::parse_int(r, line, tok[1]);
    if (i < 0 || i >= n_bs || j < 0 || j >= n_bs)
      throw ValidationError(path + ":" + std::to_string(line) +
                            ": handoff index out of range");
    const std::size_t flat = static_cast<std::size_t>(i) * n_bs + j;
    if (seen_h[flat]) r.fail(line, "duplicate handoff entry");
    seen_h[flat] = true;
    inst.handoff.at(static_cast<int>(i), static_cast<int>(j)) =
        detail::parse_double(r, line, tok[2]);
  }

  inst.validate_and_finalize();
  return inst;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  return load_instance(in, path);
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  out << "[network]\n";
  out << "n_bs = " << inst.n_bs() << "\n";
  out << "n_bsc = " << inst.n_bsc() << "\n";
  out << "n_msc = " << inst.n_msc << "\n";
  out << "proximity_radius = " << format_double(inst.proximity_radius) << "\n";
  out << "\n[bs]\n# id x y call_traffic bhca trx_demand paging_rate paging_capacity\n";
  for (const BaseStation& b : inst.bss)
    out << b.id << ' ' << format_double(b.x) << ' ' << format_double(b.y) << ' '
        << format_double(b.call_traffic) << ' ' << format_double(b.bhca) << ' '
        << b.trx_demand << ' ' << format_double(b.paging_rate) << ' '
        << format_double(b.paging_capacity) << "\n";
  out << "\n[bsc]\n# id x y call_capacity bhca_capacity trx_capacity paging_capacity msc\n";
  for (const Bsc& c : inst.bscs)
    out << c.id << ' ' << format_double(c.x) << ' ' << format_double(c.y) << ' '
        << format_double(c.call_capacity) << ' ' << format_double(c.bhca_capacity)
        << ' ' << c.trx_capacity << ' ' << format_double(c.paging_capacity) << ' '
        << c.msc << "\n";
  out << "\n[handoff]\n# i j h_ij\n";
  for (int i = 0; i < inst.n_bs(); ++i)
    for (int j = 0; j < inst.n_bs(); ++j)
      if (inst.handoff.at(i, j) != 0.0)
        out << i << ' ' << j << ' ' << format_double(inst.handoff.at(i, j)) << "\n";
}

inline void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file '" + path + "'");
  write_instance(out, inst);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

// FNV-1a over the canonical serialization; used to stamp comparison tables.
inline std::string instance_hash(const Instance& inst) {
  std::ostringstream ss;
  write_instance(ss, inst);
  const std::string s = ss.str();
  std::uint64_t h = 1469598103934665603ull;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Solution report
//
//   [solution]     key = value metadata (n_bs, n_las, total_cost, feasible, ...)
//   [assignment]   bs bsc la
//   [la]           la msc members paging_rate lai
//   [boundary]     la_a la_b handoff
//   [violations]   kind entity load capacity   (only when infeasible)

inline void write_solution(std::ostream& out, const Solution& sol,
                           const CostBreakdown& cost, const FeasibilityReport& report,
                           const std::vector<std::pair<std::string, std::string>>& meta = {}) {
  out << "[solution]\n";
  out << "n_bs = " << sol.bs_to_bsc.size() << "\n";
  out << "n_las = " << sol.n_la() << "\n";
  out << "total_cost = " << format_double(cost.total) << "\n";
  out << "feasible = " << (report.feasible ? "true" : "false") << "\n";
  for (const auto& [k, v] : meta) out << k << " = " << v << "\n";

  out << "\n[assignment]\n# bs bsc la\n";
  for (std::size_t b = 0; b < sol.bs_to_bsc.size(); ++b)
    out << b << ' ' << sol.bs_to_bsc[b] << ' ' << sol.bs_to_la[b] << "\n";

  out << "\n[la]\n# la msc members paging_rate lai\n";
  for (int la = 0; la < sol.n_la(); ++la) {
    out << la << ' ' << sol.la_to_msc[la] << ' ' << sol.la_members[la].size() << ' '
        << format_double(sol.la_paging[la]) << ' ';
    if (la < static_cast<int>(sol.la_labels.size()))
      out << sol.la_labels[la].mcc << '-' << sol.la_labels[la].mnc << '-'
          << sol.la_labels[la].lac;
    else
      out << '-';
    out << "\n";
  }

  out << "\n[boundary]\n# la_a la_b handoff\n";
  for (const auto& [pair, flow] : cost.per_la_boundary)
    out << pair.first << ' ' << pair.second << ' ' << format_double(flow) << "\n";

  if (!report.feasible) {
    out << "\n[violations]\n# kind entity load capacity\n";
    for (const Violation& v : report.violations)
      out << to_string(v.kind) << ' ' << v.entity << ' ' << format_double(v.load)
          << ' ' << format_double(v.capacity) << "\n";
  }
}

inline void write_solution(const std::string& path, const Solution& sol,
                           const CostBreakdown& cost, const FeasibilityReport& report,
                           const std::vector<std::pair<std::string, std::string>>& meta = {}) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write solution file '" + path + "'");
  write_solution(out, sol, cost, report, meta);
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

// Reads the [assignment] section back into a Solution (caches rebuilt).
// Everything else in the report is derived and re-checked by the caller.
inline Solution read_solution(std::istream& in, const std::string& path,
                              const Instance& inst) {
  detail::LineReader r{in, path};
  const int n = inst.n_bs();
  std::vector<int> bs_to_bsc(n, -1), bs_to_la(n, -1);

  enum class Section { Other, Solution, Assignment } sec = Section::Other;
  while (auto ln = r.next()) {
    const auto& [text, line] = *ln;
    if (text.front() == '[') {
      if (text == "[assignment]") sec = Section::Assignment;
      else if (text == "[solution]") sec = Section::Solution;
      else sec = Section::Other;
      continue;
    }
    if (sec == Section::Solution) {
      const auto kv = detail::parse_kv(text);
      if (kv && kv->first == "n_bs" &&
          detail::parse_int(r, line, kv->second) != n)
        r.fail(line, "solution n_bs does not match instance (" +
                         std::to_string(n) + ")");
      continue;
    }
    if (sec != Section::Assignment) continue;
    const auto tok = detail::split_ws(text);
    if (tok.size() != 3) r.fail(line, "[assignment] row needs 3 fields: bs bsc la");
    const long long b = detail::parse_int(r, line, tok[0]);
    const long long c = detail::parse_int(r, line, tok[1]);
    const long long la = detail::parse_int(r, line, tok[2]);
    if (b < 0 || b >= n) r.fail(line, "unknown BS id " + tok[0]);
    if (c < 0 || c >= inst.n_bsc()) r.fail(line, "unknown BSC id " + tok[1]);
    if (la < 0) r.fail(line, "negative LA index");
    if (bs_to_bsc[b] != -1) r.fail(line, "duplicate assignment for BS " + tok[0]);
    bs_to_bsc[b] = static_cast<int>(c);
    bs_to_la[b] = static_cast<int>(la);
  }
  for (int b = 0; b < n; ++b)
    if (bs_to_bsc[b] == -1)
      throw ParseError(path + ": no assignment row for BS " + std::to_string(b));
  return solution_from_assignment(inst, std::move(bs_to_bsc), std::move(bs_to_la));
}

inline Solution read_solution(const std::string& path, const Instance& inst) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open solution file '" + path + "'");
  return read_solution(in, path, inst);
}

}  // namespace laplan
