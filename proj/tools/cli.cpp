#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string_view>

#include "fcrystal/crystal.hpp"
#include "fcrystal/digraph.hpp"
#include "fcrystal/error.hpp"
#include "fcrystal/scan.hpp"

namespace fcrystal::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct Options {
  std::optional<int> r;
  std::optional<std::string> perm;
  std::optional<std::string> slopes;
  std::optional<int> m;
  std::optional<int> m_max;
  std::optional<unsigned> prime;
  std::string format = "text";
  std::string out_path;
  std::optional<std::string> seq;
  std::string dump_digraph;
  std::optional<int> r_max;
  std::optional<int> slope_max;
  std::string family = "circular-dieudonne";
  std::vector<std::string> checks;
  int threads = 0;
  bool no_limits = false;
};

std::vector<int> parse_int_list(std::string_view text, std::string_view flag) {
  std::vector<int> out;
  std::size_t i = 0;
  const auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t'; };
  while (i < text.size()) {
    while (i < text.size() && is_sep(text[i])) ++i;
    if (i == text.size()) break;
    std::size_t j = i;
    if (text[j] == '+' || text[j] == '-') ++j;
    while (j < text.size() && !is_sep(text[j])) ++j;
    std::string_view tok = text.substr(i, j - i);
    if (!tok.empty() && tok[0] == '+') tok.remove_prefix(1);
    int v = 0;
    const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size())
      throw InputError(std::string(flag) + ": '" + std::string(text.substr(i, j - i)) +
                           "' is not an integer",
                       i);
    out.push_back(v);
    i = j;
  }
  if (out.empty()) throw InputError(std::string(flag) + " is empty");
  return out;
}

template <class T>
std::string join(const std::vector<T>& v, std::string_view sep = ",") {
  std::ostringstream os;
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? sep : "") << v[k];
  return os.str();
}

std::string join(std::span<const int> v, std::string_view sep = ",") {
  return join(std::vector<int>(v.begin(), v.end()), sep);
}

std::string rational_text(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

json optional_json(const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); }

std::string optional_csv(const std::optional<bool>& b) {
  return b ? (*b ? "true" : "false") : "";
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open '" + tmp.string() + "' for writing");
    f << content;
    f.flush();
    if (!f) throw InputError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw InputError("cannot move output into place at '" + path + "'");
  }
}

// Writes `content` to --out when given, otherwise to `out`.
void emit(const Options& o, const std::string& content, std::ostream& out) {
  if (o.out_path.empty())
    out << content;
  else
    atomic_write(o.out_path, content);
}

int checked_level(int m, std::string_view flag, const Limits& lim) {
  if (m < 1) throw InputError(std::string(flag) + " must be at least 1");
  if (m > lim.max_level)
    throw ResourceLimitError(std::string(flag) + " " + std::to_string(m) + " exceeds the level limit " +
                             std::to_string(lim.max_level) + " (use --no-limits)");
  return m;
}

int checked_rank(int r, std::string_view flag, const Limits& lim) {
  if (r < 1) throw InputError(std::string(flag) + " must be at least 1");
  if (r > lim.max_rank)
    throw ResourceLimitError(std::string(flag) + " " + std::to_string(r) + " exceeds the rank limit " +
                             std::to_string(lim.max_rank) + " (use --no-limits)");
  return r;
}

FCyclicCrystal make_crystal(const Options& o, const Limits& lim) {
  if (!o.slopes) throw InputError("--slopes is required");
  std::vector<int> slopes = parse_int_list(*o.slopes, "--slopes");
  const int r = checked_rank(o.r.value_or(static_cast<int>(slopes.size())), "--r", lim);
  if (static_cast<int>(slopes.size()) != r)
    throw InputError("--slopes has " + std::to_string(slopes.size()) + " entries but --r is " +
                     std::to_string(r));
  Permutation pi = o.perm ? parse_permutation(*o.perm, r) : Permutation::identity(r);
  return FCyclicCrystal(std::move(pi), std::move(slopes));
}

std::string crystal_line(const FCyclicCrystal& c) {
  return "crystal r=" + std::to_string(c.rank()) + " pi=" + c.permutation().to_cycle_string() +
         " slopes=" + join(c.slopes()) + "\n";
}

json crystal_json(const FCyclicCrystal& c) {
  json j;
  j["r"] = c.rank();
  j["permutation"] = c.permutation().to_cycle_string();
  j["one_line"] = std::vector<int>(c.permutation().images().begin(), c.permutation().images().end());
  j["slopes"] = std::vector<int>(c.slopes().begin(), c.slopes().end());
  return j;
}

json schema(std::string_view command) {
  return "fcrystal." + std::string(command) + "/" + std::to_string(kSchemaVersion);
}

std::string points_text(const Orbit& o) {
  std::string s;
  for (const auto& [i, j] : o.points)
    s += (s.empty() ? "" : " ") + ("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  return s;
}

int cmd_gamma(const Options& o, const Limits& lim, std::ostream& out) {
  const FCyclicCrystal crystal = make_crystal(o, lim);
  const int m_max = checked_level(o.m_max.value_or(o.m.value_or(6)), "--m-max", lim);
  const GammaReport rep = gamma_table(crystal, m_max, lim);
  const std::vector<std::int64_t> delta(rep.delta.begin() + 1, rep.delta.end());

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = schema("gamma");
    j["input"] = crystal_json(crystal);
    j["input"]["m_max"] = m_max;
    j["gamma"] = rep.gamma;
    j["delta"] = delta;
    j["stabilization"] = rep.stabilization;
    j["stabilization_is_isomorphism_number"] = rep.stabilization_is_isomorphism_number;
    j["ordinary"] = optional_json(rep.ordinary);
    json orbits = json::array();
    for (const OrbitData& od : rep.per_orbit) {
      json e;
      json pts = json::array();
      for (const auto& [a, b] : od.orbit.points) pts.push_back({a, b});
      e["points"] = pts;
      e["epsilon"] = std::vector<int>(od.epsilon.entries().begin(), od.epsilon.entries().end());
      e["all_zero"] = std::holds_alternative<AllZero>(od.normalized);
      e["circular_level"] = od.level ? json(*od.level) : json(nullptr);
      e["census"] = od.census.counts;
      orbits.push_back(std::move(e));
    }
    j["orbits"] = std::move(orbits);
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    os << "m,gamma,delta\n";
    for (int m = 0; m <= m_max; ++m)
      os << m << "," << rep.gamma[static_cast<std::size_t>(m)] << ","
         << rep.delta[static_cast<std::size_t>(m)] << "\n";
  } else {
    os << crystal_line(crystal);
    os << "gamma " << join(rep.gamma) << "\n";
    os << "delta " << join(delta) << "\n";
    os << "stabilization " << rep.stabilization
       << (rep.stabilization_is_isomorphism_number ? " (isomorphism number)"
                                                   : " (not known to equal the isomorphism number)")
       << "\n";
    os << "ordinary " << (rep.ordinary ? yes_no(*rep.ordinary) : "n/a") << "\n";
    for (std::size_t k = 0; k < rep.per_orbit.size(); ++k) {
      const OrbitData& od = rep.per_orbit[k];
      os << "orbit " << k + 1 << " points " << points_text(od.orbit) << " eps "
         << join(od.epsilon.entries()) << " level "
         << (od.level ? std::to_string(*od.level) : std::string("none")) << " census "
         << join(od.census.counts) << "\n";
    }
  }
  emit(o, os.str(), out);
  return kOk;
}

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int cmd_endo(const Options& o, const Limits& lim, std::ostream& out) {
  const FCyclicCrystal crystal = make_crystal(o, lim);
  if (o.prime && !is_prime(*o.prime)) throw InputError("--prime " + std::to_string(*o.prime) + " is not prime");
  std::vector<int> levels;
  if (o.m) {
    levels.push_back(checked_level(*o.m, "--m", lim));
  } else if (o.m_max) {
    for (int m = 1; m <= checked_level(*o.m_max, "--m-max", lim); ++m) levels.push_back(m);
  } else {
    throw InputError("endo needs --m or --m-max");
  }

  struct Row {
    int m;
    BigInt b;
    std::optional<BigInt> power;
  };
  std::vector<Row> rows;
  for (int m : levels) {
    Row row{m, endo_exponent(crystal, m), std::nullopt};
    if (o.prime) row.power = power_of(*o.prime, row.b);
    rows.push_back(std::move(row));
  }

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = schema("endo");
    j["input"] = crystal_json(crystal);
    j["input"]["prime"] = o.prime ? json(*o.prime) : json(nullptr);
    json arr = json::array();
    for (const Row& row : rows) {
      json e;
      e["m"] = row.m;
      e["b"] = row.b.str();
      if (row.power) e["p_pow_b"] = row.power->str();
      arr.push_back(std::move(e));
    }
    j["levels"] = std::move(arr);
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    os << (o.prime ? "m,b,p_pow_b\n" : "m,b\n");
    for (const Row& row : rows) {
      os << row.m << "," << row.b;
      if (row.power) os << "," << *row.power;
      os << "\n";
    }
  } else {
    os << crystal_line(crystal);
    for (const Row& row : rows) {
      os << "m=" << row.m << " b=" << row.b;
      if (row.power) os << " p^b=" << *row.power << " (p=" << *o.prime << ")";
      os << "\n";
    }
  }
  emit(o, os.str(), out);
  return kOk;
}

std::string stats_text(const ComponentStats& s) {
  return "l=" + std::to_string(s.free_linear) + " c=" + std::to_string(s.circular) +
         " w=" + std::to_string(s.circular_edges) + " zero_linear=" + std::to_string(s.zero_linear);
}

json stats_json(const ComponentStats& s) {
  json j;
  j["l"] = s.free_linear;
  j["c"] = s.circular;
  j["w"] = s.circular_edges;
  j["zero_linear"] = s.zero_linear;
  return j;
}

json mismatch_json(const OrbitMismatch& mm) {
  json j;
  j["orbit_index"] = mm.orbit_index;
  j["m"] = mm.m;
  j["orbit_length"] = mm.orbit_length;
  j["formula"] = {{"l", mm.formula_linear}, {"c", mm.formula_circular}};
  j["oracle"] = stats_json(mm.oracle);
  return j;
}

std::string mismatch_text(const OrbitMismatch& mm) {
  return "orbit=" + std::to_string(mm.orbit_index + 1) + " m=" + std::to_string(mm.m) +
         " |O|=" + std::to_string(mm.orbit_length) + " formula l=" + std::to_string(mm.formula_linear) +
         " c=" + std::to_string(mm.formula_circular) + " oracle " + stats_text(mm.oracle);
}

std::vector<int> level_range(const Options& o, const Limits& lim, int fallback_max) {
  std::vector<int> levels;
  if (o.m)
    levels.push_back(checked_level(*o.m, "--m", lim));
  else
    for (int m = 1; m <= checked_level(o.m_max.value_or(fallback_max), "--m-max", lim); ++m)
      levels.push_back(m);
  return levels;
}

int verify_sequence(const Options& o, const Limits& lim, std::ostream& out) {
  const CircularSeq seq(parse_int_list(*o.seq, "--seq"));
  if (o.format == "csv") throw InputError("verify --seq supports text and json output");
  const std::vector<int> levels = level_range(o, lim, 4);
  const std::uint64_t vertices = seq.size() * static_cast<std::uint64_t>(levels.back());
  if (vertices > lim.vertex_budget)
    throw ResourceLimitError("digraph would have " + std::to_string(vertices) + " vertices (budget " +
                             std::to_string(lim.vertex_budget) + ")");

  bool all_match = true;
  std::ostringstream os;
  json arr = json::array();
  if (o.format == "text") os << "seq " << join(seq.entries()) << "\n";
  for (int m : levels) {
    const ComponentStats oracle = oracle_counts(seq, m);
    const std::uint64_t l = linear_count(seq, m);
    const std::uint64_t c = circular_count(seq, m);
    const bool match = oracle.free_linear == l && oracle.circular == c && oracle.circular_edges == c * seq.size();
    all_match = all_match && match;
    if (o.format == "json") {
      json e;
      e["m"] = m;
      e["formula"] = {{"l", l}, {"c", c}};
      e["oracle"] = stats_json(oracle);
      e["match"] = match;
      arr.push_back(std::move(e));
    } else {
      os << "m=" << m << " formula l=" << l << " c=" << c << " oracle " << stats_text(oracle) << " "
         << (match ? "match" : "MISMATCH") << "\n";
    }
  }
  if (o.format == "json") {
    json j;
    j["schema"] = schema("verify-seq");
    j["input"] = {{"seq", std::vector<int>(seq.entries().begin(), seq.entries().end())}};
    j["levels"] = std::move(arr);
    j["ok"] = all_match;
    os << j.dump(2) << "\n";
  }
  emit(o, os.str(), out);

  if (!o.dump_digraph.empty()) {
    std::ostringstream dot;
    write_dot(dot, propagate_zeros(build_level_digraph(seq, levels.back())));
    atomic_write(o.dump_digraph, dot.str());
  }
  return all_match ? kOk : kViolation;
}

int verify_crystal(const Options& o, const Limits& lim, std::ostream& out) {
  const FCyclicCrystal crystal = make_crystal(o, lim);
  if (o.format == "csv") throw InputError("verify supports text and json output");
  const int m_max = checked_level(o.m_max.value_or(o.m.value_or(4)), "--m-max", lim);
  const VerificationReport rep = verify_formula_vs_oracle(crystal, m_max, lim);

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = schema("verify-crystal");
    j["input"] = crystal_json(crystal);
    j["input"]["m_max"] = m_max;
    j["checks"] = rep.checks;
    json arr = json::array();
    for (const OrbitMismatch& mm : rep.mismatches) arr.push_back(mismatch_json(mm));
    j["mismatches"] = std::move(arr);
    os << j.dump(2) << "\n";
  } else {
    os << crystal_line(crystal);
    for (const OrbitMismatch& mm : rep.mismatches) os << "mismatch " << mismatch_text(mm) << "\n";
    os << "checks " << rep.checks << " mismatches " << rep.mismatches.size() << "\n";
  }
  emit(o, os.str(), out);
  return rep.ok() ? kOk : kViolation;
}

int verify_exhaustive(const Options& o, const Limits& lim, std::ostream& out) {
  if (o.format == "csv") throw InputError("verify supports text and json output");
  ExhaustiveSpec spec;
  spec.r_max = checked_rank(o.r_max.value_or(3), "--r-max", lim);
  spec.slope_max = o.slope_max.value_or(1);
  if (spec.slope_max < 0) throw InputError("--slope-max must be nonnegative");
  spec.m_max = checked_level(o.m_max.value_or(o.m.value_or(4)), "--m-max", lim);
  const ExhaustiveResult res = verify_exhaustive_parallel(spec, o.threads, lim);

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = schema("verify-exhaustive");
    j["input"] = {{"r_max", spec.r_max}, {"slope_max", spec.slope_max}, {"m_max", spec.m_max}};
    j["crystals"] = res.crystals;
    j["checks"] = res.checks;
    json arr = json::array();
    for (const CrystalMismatch& cm : res.mismatches) {
      json e = mismatch_json(cm.detail);
      e["permutation"] = cm.pi.to_cycle_string();
      e["slopes"] = cm.slopes;
      arr.push_back(std::move(e));
    }
    j["mismatches"] = std::move(arr);
    os << j.dump(2) << "\n";
  } else {
    for (const CrystalMismatch& cm : res.mismatches)
      os << "mismatch pi=" << cm.pi.to_cycle_string() << " slopes=" << join(cm.slopes) << " "
         << mismatch_text(cm.detail) << "\n";
    os << "r<=" << spec.r_max << " slopes<=" << spec.slope_max << " m<=" << spec.m_max << " crystals "
       << res.crystals << " checks " << res.checks << " mismatches " << res.mismatches.size() << "\n";
  }
  emit(o, os.str(), out);
  return res.mismatches.empty() ? kOk : kViolation;
}

int cmd_verify(const Options& o, const Limits& lim, std::ostream& out) {
  if (!o.dump_digraph.empty() && !o.seq) throw InputError("--dump-digraph needs --seq");
  if (o.seq) return verify_sequence(o, lim, out);
  if (o.slopes || o.perm) return verify_crystal(o, lim, out);
  return verify_exhaustive(o, lim, out);
}

const std::vector<std::string> kCheckNames = {
    "strict", "nonincreasing", "shape", "ratio", "second-difference", "minimal", "propagation"};

std::set<std::string> selected_checks(const std::vector<std::string>& requested) {
  std::set<std::string> out;
  if (requested.empty()) return {kCheckNames.begin(), kCheckNames.end()};
  for (const std::string& c : requested) {
    if (c == "all") {
      out.insert(kCheckNames.begin(), kCheckNames.end());
    } else if (std::find(kCheckNames.begin(), kCheckNames.end(), c) != kCheckNames.end()) {
      out.insert(c);
    } else {
      throw InputError("unknown --check '" + c + "'");
    }
  }
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> summary_counts(const ScanSummary& s) {
  return {{"strict", s.strict_violations},
          {"nonincreasing", s.nonincreasing_violations},
          {"shape", s.shape_violations},
          {"ratio", s.ratio_violations},
          {"second-difference", s.second_difference_violations},
          {"minimal", s.minimality_disagreements},
          {"propagation", s.propagation_violations}};
}

std::vector<std::string> record_violations(const ScanRecord& r) {
  std::vector<std::string> v;
  if (r.strict_violation()) v.push_back("strict");
  if (!r.monotonicity.nonincreasing) v.push_back("nonincreasing");
  if (!r.increases_then_constant) v.push_back("shape");
  if (r.ratio_ok == false) v.push_back("ratio");
  if (r.second_difference_ok == false) v.push_back("second-difference");
  if (r.minimal_consistent == false) v.push_back("minimal");
  if (!r.propagation_ok) v.push_back("propagation");
  return v;
}

int cmd_scan(const Options& o, const Limits& lim, std::ostream& out, std::ostream& err) {
  const auto family = parse_family(o.family);
  if (!family) throw InputError("unknown --family '" + o.family + "'");
  if (!o.r) throw InputError("scan needs --r");
  ScanSpec spec;
  spec.family = *family;
  spec.rank = checked_rank(*o.r, "--r", lim);
  spec.slope_max = o.slope_max.value_or(1);
  if (spec.slope_max < 0) throw InputError("--slope-max must be nonnegative");
  spec.m_max = checked_level(o.m_max.value_or(o.m.value_or(6)), "--m-max", lim);
  const std::set<std::string> checks = selected_checks(o.checks);

  const std::vector<ScanRecord> records = scan_parallel(spec, o.threads, lim);
  const ScanSummary summary = summarize(records);
  std::uint64_t counted = 0;
  for (const auto& [name, n] : summary_counts(summary))
    if (checks.count(name)) counted += n;

  std::ostringstream summary_line;
  summary_line << "summary family=" << family_name(spec.family) << " r=" << spec.rank
               << " records=" << summary.records;
  for (const auto& [name, n] : summary_counts(summary))
    if (checks.count(name)) summary_line << " " << name << "=" << n;
  summary_line << " constant-delta=" << summary.constant_delta << "\n";

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = schema("scan");
    j["input"] = {{"family", family_name(spec.family)},
                  {"r", spec.rank},
                  {"slope_max", spec.slope_max},
                  {"m_max", spec.m_max},
                  {"checks", std::vector<std::string>(checks.begin(), checks.end())}};
    json arr = json::array();
    for (const ScanRecord& r : records) {
      json e;
      e["permutation"] = r.pi.to_cycle_string();
      e["slopes"] = r.slopes;
      e["gamma"] = r.gamma;
      e["delta"] = std::vector<std::int64_t>(r.delta.begin() + 1, r.delta.end());
      e["stabilization"] = r.stabilization;
      e["dieudonne"] = r.dieudonne;
      e["full_cycle"] = r.full_cycle;
      e["ordinary"] = optional_json(r.ordinary);
      e["delta_nonincreasing"] = r.monotonicity.nonincreasing;
      e["strict_required"] = r.monotonicity.strict_required;
      e["strict_through_stabilization"] = r.monotonicity.strict_through_stabilization;
      e["increases_then_constant"] = r.increases_then_constant;
      e["ratio_ok"] = optional_json(r.ratio_ok);
      e["second_difference_ok"] = optional_json(r.second_difference_ok);
      e["minimal"] = optional_json(r.minimal);
      e["minimal_consistent"] = optional_json(r.minimal_consistent);
      e["propagation_ok"] = r.propagation_ok;
      e["constant_delta"] = r.constant_delta;
      arr.push_back(std::move(e));
    }
    j["records"] = std::move(arr);
    json s;
    s["records"] = summary.records;
    for (const auto& [name, n] : summary_counts(summary)) s[name] = n;
    s["constant_delta"] = summary.constant_delta;
    j["summary"] = std::move(s);
    os << j.dump(2) << "\n";
  } else if (o.format == "csv") {
    os << "permutation,slopes,dieudonne,full_cycle,ordinary,stabilization,gamma,delta,"
          "delta_nonincreasing,strict_required,strict_through_stabilization,increases_then_constant,"
          "ratio_ok,second_difference_ok,minimal,minimal_consistent,propagation_ok,constant_delta\n";
    for (const ScanRecord& r : records) {
      os << r.pi.to_cycle_string() << "," << join(r.slopes, ";") << "," << r.dieudonne << ","
         << r.full_cycle << "," << optional_csv(r.ordinary) << "," << r.stabilization << ","
         << join(r.gamma, ";") << ","
         << join(std::vector<std::int64_t>(r.delta.begin() + 1, r.delta.end()), ";") << ","
         << r.monotonicity.nonincreasing << "," << r.monotonicity.strict_required << ","
         << r.monotonicity.strict_through_stabilization << "," << r.increases_then_constant << ","
         << optional_csv(r.ratio_ok) << "," << optional_csv(r.second_difference_ok) << ","
         << optional_csv(r.minimal) << "," << optional_csv(r.minimal_consistent) << ","
         << r.propagation_ok << "," << r.constant_delta << "\n";
    }
  } else {
    for (const ScanRecord& r : records) {
      os << "pi=" << r.pi.to_cycle_string() << " slopes=" << join(r.slopes) << " stab=" << r.stabilization
         << " gamma=" << join(r.gamma);
      if (r.ordinary) os << (*r.ordinary ? " ordinary" : " nonordinary");
      if (r.minimal) os << (*r.minimal ? " minimal" : " not-minimal");
      if (r.constant_delta) os << " constant-delta";
      std::vector<std::string> bad;
      for (const std::string& v : record_violations(r))
        if (checks.count(v)) bad.push_back(v);
      if (!bad.empty()) os << " VIOLATES=" << join(bad);
      os << "\n";
    }
  }

  if (o.format == "text" && o.out_path.empty()) os << summary_line.str();
  emit(o, os.str(), out);
  if (!o.out_path.empty())
    out << summary_line.str();
  else if (o.format == "csv")
    err << summary_line.str();
  return counted == 0 ? kOk : kViolation;
}

int cmd_minimal(const Options& o, const Limits& lim, std::ostream& out) {
  const FCyclicCrystal crystal = make_crystal(o, lim);
  if (!crystal.is_dieudonne())
    throw InputError("minimal needs a Dieudonne module (every slope 0 or 1)");
  if (o.format == "csv") throw InputError("minimal supports text and json output");
  const bool minimal = is_minimal(crystal);
  const std::vector<NewtonSlope> slopes = newton_slopes(crystal);
  const auto cycles = cycle_decomposition(crystal.permutation());
  const int stab = static_cast<int>(level_profile(crystal, lim).size());
  const bool consistent = minimal == (stab <= 1);

  std::vector<std::string> expanded;
  for (const NewtonSlope& s : slopes)
    for (int k = 0; k < s.multiplicity; ++k) expanded.push_back(rational_text(s.slope));

  std::ostringstream os;
  if (o.format == "json") {
    json j;
    j["schema"] = schema("minimal");
    j["input"] = crystal_json(crystal);
    j["minimal"] = minimal;
    json arr = json::array();
    for (std::size_t k = 0; k < slopes.size(); ++k) {
      json e;
      e["cycle"] = cycles[k];
      e["slope"] = rational_text(slopes[k].slope);
      e["multiplicity"] = slopes[k].multiplicity;
      arr.push_back(std::move(e));
    }
    j["newton_slopes"] = std::move(arr);
    j["stabilization"] = stab;
    j["cross_check_ok"] = consistent;
    os << j.dump(2) << "\n";
  } else {
    os << crystal_line(crystal);
    os << "minimal " << (minimal ? "true" : "false") << "\n";
    os << "newton_slopes " << join(expanded) << "\n";
    for (std::size_t k = 0; k < slopes.size(); ++k)
      os << "cycle (" << join(cycles[k], " ") << ") slope " << rational_text(slopes[k].slope)
         << " multiplicity " << slopes[k].multiplicity << "\n";
    os << "stabilization " << stab << "\n";
    os << "cross_check " << (consistent ? "ok" : "FAILED (minimal should match stabilization <= 1)")
       << "\n";
  }
  emit(o, os.str(), out);
  return consistent ? kOk : kViolation;
}

void add_crystal_options(CLI::App* sub, Options& o) {
  sub->add_option("--r", o.r, "Rank r (defaults to the number of slopes)");
  sub->add_option("--perm", o.perm, "Permutation in cycle form \"(1 2)\" or one-line form \"2 1\"");
  sub->add_option("--slopes", o.slopes, "Hodge slopes e_1,...,e_r");
}

void add_output_options(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--out", o.out_path, "Write the report to FILE (atomically)");
  sub->add_flag("--no-limits", o.no_limits, "Lift the rank, level and budget guard rails");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Automorphism and endomorphism invariants of F-cyclic F-crystals", "fcrystal"};
  app.require_subcommand(1);
  Options o;

  auto* gamma = app.add_subcommand("gamma", "gamma(m) table, differences, stabilization and orbit census");
  add_crystal_options(gamma, o);
  gamma->add_option("--m-max", o.m_max, "Largest level (default 6)");
  gamma->add_option("--m", o.m, "Alias for --m-max");
  add_output_options(gamma, o);

  auto* endo = app.add_subcommand("endo", "Exponent b(m) of the endomorphism component count");
  add_crystal_options(endo, o);
  endo->add_option("--m", o.m, "Single level");
  endo->add_option("--m-max", o.m_max, "Report levels 1..m-max");
  endo->add_option("--prime", o.prime, "Also print p^b for this prime");
  add_output_options(endo, o);

  auto* verify = app.add_subcommand("verify", "Closed-form counts against the digraph oracle");
  add_crystal_options(verify, o);
  verify->add_option("--seq", o.seq, "Raw circular sequence, e.g. \"3,0,-1,-2\"");
  verify->add_option("--m", o.m, "Single level");
  verify->add_option("--m-max", o.m_max, "Levels 1..m-max (default 4)");
  verify->add_option("--r-max", o.r_max, "Exhaustive mode: ranks 1..r-max (default 3)");
  verify->add_option("--slope-max", o.slope_max, "Exhaustive mode: slopes 0..slope-max (default 1)");
  verify->add_option("--dump-digraph", o.dump_digraph, "With --seq: write the level digraph as DOT");
  verify->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_output_options(verify, o);

  auto* scan = app.add_subcommand("scan", "Evaluate every crystal of a family");
  scan->add_option("--family", o.family, "circular-dieudonne | all-dieudonne | circular-fcrystal | all-fcrystal")
      ->capture_default_str();
  scan->add_option("--r", o.r, "Rank");
  scan->add_option("--slope-max", o.slope_max, "F-crystal families: slopes 0..slope-max (default 1)");
  scan->add_option("--m-max", o.m_max, "Levels reported per record (default 6)");
  scan->add_option("--check", o.checks, "Properties that set the exit code: " + join(kCheckNames) + ", all")
      ->delimiter(',');
  scan->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  add_output_options(scan, o);

  auto* minimal = app.add_subcommand("minimal", "Minimality verdict and Newton slopes (Dieudonne input)");
  add_crystal_options(minimal, o);
  add_output_options(minimal, o);

  std::vector<const char*> argv{"fcrystal"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  const Limits lim = o.no_limits ? Limits::unlimited() : Limits{};
  try {
    if (*gamma) return cmd_gamma(o, lim, out);
    if (*endo) return cmd_endo(o, lim, out);
    if (*verify) return cmd_verify(o, lim, out);
    if (*scan) return cmd_scan(o, lim, out, err);
    if (*minimal) return cmd_minimal(o, lim, out);
  } catch (const InputError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kViolation;
  }
  return kInvalidInput;
}

}  // namespace fcrystal::cli
