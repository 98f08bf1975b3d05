#include "fcrystal/crystal.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "fcrystal/error.hpp"

namespace fcrystal {

Limits Limits::unlimited() {
  Limits l;
  l.max_rank = std::numeric_limits<int>::max();
  l.max_level = std::numeric_limits<int>::max();
  l.vertex_budget = std::numeric_limits<std::uint64_t>::max();
  l.sequence_budget = std::numeric_limits<std::uint64_t>::max();
  l.scan_budget = std::numeric_limits<std::uint64_t>::max();
  return l;
}

FCyclicCrystal::FCyclicCrystal(Permutation pi, std::vector<int> slopes)
    : pi_(std::move(pi)), slopes_(std::move(slopes)) {
  if (static_cast<int>(slopes_.size()) != pi_.size())
    throw InputError("expected " + std::to_string(pi_.size()) + " Hodge slopes, got " +
                     std::to_string(slopes_.size()));
  for (std::size_t i = 0; i < slopes_.size(); ++i)
    if (slopes_[i] < 0)
      throw InputError("Hodge slope e_" + std::to_string(i + 1) + " is negative");
}

bool FCyclicCrystal::is_dieudonne() const noexcept {
  return std::all_of(slopes_.begin(), slopes_.end(), [](int e) { return e == 0 || e == 1; });
}

int FCyclicCrystal::codimension() const noexcept {
  return static_cast<int>(std::count(slopes_.begin(), slopes_.end(), 0));
}

int FCyclicCrystal::dimension() const noexcept {
  return static_cast<int>(std::count(slopes_.begin(), slopes_.end(), 1));
}

FCyclicCrystal FCyclicCrystal::summand(const Cycle& cycle) const {
  std::vector<int> points = cycle;
  std::sort(points.begin(), points.end());
  const auto label = [&](int x) {
    return static_cast<int>(std::lower_bound(points.begin(), points.end(), x) - points.begin()) + 1;
  };
  std::vector<int> images(points.size());
  std::vector<int> slopes(points.size());
  for (std::size_t k = 0; k < points.size(); ++k) {
    images[k] = label(pi_(points[k]));
    slopes[k] = slope(points[k]);
  }
  return FCyclicCrystal(Permutation(std::move(images)), std::move(slopes));
}

CircularSeq orbit_epsilon(const FCyclicCrystal& crystal, const Orbit& orbit) {
  std::vector<int> eps;
  eps.reserve(orbit.size());
  for (const auto& [i, j] : orbit.points) eps.push_back(crystal.slope(i) - crystal.slope(j));
  return CircularSeq(std::move(eps));
}

std::vector<OrbitData> orbit_data(const FCyclicCrystal& crystal, int m) {
  if (m < 1) throw InputError("level m must be at least 1");
  std::vector<OrbitData> out;
  for (Orbit& o : product_orbits(crystal.permutation())) {
    CircularSeq eps = orbit_epsilon(crystal, o);
    NormalizedSeq norm = normalize(eps, m);
    SegmentCensus census;
    census.level_cap = m;
    census.counts.assign(static_cast<std::size_t>(m), 0);
    if (const auto* pm = std::get_if<PlusMinus>(&norm)) census = segment_census(*pm, m);
    const auto level = circular_level(norm);
    out.push_back({std::move(o), std::move(eps), std::move(norm), std::move(census), level});
  }
  return out;
}

std::uint64_t gamma(const FCyclicCrystal& crystal, int m) {
  if (m < 0) throw InputError("level m must be nonnegative");
  if (m == 0) return 0;
  std::uint64_t total = 0;
  for (const Orbit& o : product_orbits(crystal.permutation()))
    total += linear_count(orbit_epsilon(crystal, o), m);
  return total;
}

BigInt endo_exponent(const FCyclicCrystal& crystal, int m) {
  if (m < 1) throw InputError("level m must be at least 1");
  BigInt b = 0;
  for (const Orbit& o : product_orbits(crystal.permutation())) {
    const std::uint64_t c = circular_count(orbit_epsilon(crystal, o), m);
    b += BigInt(c) * BigInt(o.size());
  }
  return b;
}

BigInt power_of(unsigned prime, const BigInt& exponent) {
  if (exponent > BigInt(std::numeric_limits<unsigned>::max()))
    throw ResourceLimitError("exponent too large to expand p^b");
  return boost::multiprecision::pow(BigInt(prime), exponent.convert_to<unsigned>());
}

namespace {

std::uint64_t unclamped_length(const CircularSeq& eps) {
  std::uint64_t n = 0;
  for (int e : eps.entries()) n += static_cast<std::uint64_t>(std::llabs(static_cast<long long>(e)));
  return n;
}

}  // namespace

std::vector<std::uint64_t> level_profile(const FCyclicCrystal& crystal, const Limits& limits) {
  const auto orbits = product_orbits(crystal.permutation());
  std::vector<CircularSeq> seqs;
  std::uint64_t budget = 0;
  for (const Orbit& o : orbits) {
    seqs.push_back(orbit_epsilon(crystal, o));
    budget += unclamped_length(seqs.back());
  }
  if (budget > limits.sequence_budget)
    throw ResourceLimitError("normalized sequences would hold " + std::to_string(budget) +
                             " entries (budget " + std::to_string(limits.sequence_budget) + ")");

  std::vector<std::uint64_t> profile;
  for (const CircularSeq& eps : seqs) {
    const NormalizedSeq norm = normalize(eps, kUnclamped);
    const auto* pm = std::get_if<PlusMinus>(&norm);
    if (!pm) continue;
    const SegmentCensus census = full_segment_census(*pm);
    if (profile.size() < census.counts.size()) profile.resize(census.counts.size(), 0);
    for (std::size_t k = 0; k < census.counts.size(); ++k) profile[k] += census.counts[k];
  }
  while (!profile.empty() && profile.back() == 0) profile.pop_back();
  return profile;
}

GammaReport gamma_table(const FCyclicCrystal& crystal, int m_max, const Limits& limits) {
  if (m_max < 1) throw InputError("m_max must be at least 1");
  GammaReport rep;
  rep.m_max = m_max;
  rep.per_orbit = orbit_data(crystal, m_max);

  const auto width = static_cast<std::size_t>(m_max) + 1;
  rep.gamma.assign(width, 0);
  rep.delta.assign(width, 0);
  rep.b.assign(width, 0);
  for (const OrbitData& od : rep.per_orbit) {
    for (int m = 1; m <= m_max; ++m) {
      rep.gamma[static_cast<std::size_t>(m)] += od.census.total_up_to(m);
      if (od.level && *od.level < m)
        rep.b[static_cast<std::size_t>(m)] += BigInt(m - *od.level) * BigInt(od.orbit.size());
    }
  }
  for (std::size_t m = 1; m < width; ++m)
    rep.delta[m] = static_cast<std::int64_t>(rep.gamma[m]) - static_cast<std::int64_t>(rep.gamma[m - 1]);

  rep.stabilization = static_cast<int>(level_profile(crystal, limits).size());
  rep.stabilization_is_isomorphism_number = crystal.is_dieudonne();
  if (crystal.is_dieudonne()) rep.ordinary = rep.gamma[1] == 0;
  return rep;
}

VerificationReport verify_formula_vs_oracle(const FCyclicCrystal& crystal, int m_max,
                                            const Limits& limits) {
  if (m_max < 1) throw InputError("m_max must be at least 1");
  const auto r2 = static_cast<std::uint64_t>(crystal.rank()) * static_cast<std::uint64_t>(crystal.rank());
  const auto mm = static_cast<std::uint64_t>(m_max);
  const std::uint64_t vertices = r2 * mm * (mm + 1) / 2;
  if (vertices > limits.vertex_budget)
    throw ResourceLimitError("oracle would build " + std::to_string(vertices) +
                             " vertices (budget " + std::to_string(limits.vertex_budget) + ")");

  VerificationReport rep;
  const auto orbits = product_orbits(crystal.permutation());
  for (std::size_t k = 0; k < orbits.size(); ++k) {
    const CircularSeq eps = orbit_epsilon(crystal, orbits[k]);
    for (int m = 1; m <= m_max; ++m) {
      const ComponentStats oracle = oracle_counts(eps, m);
      const std::uint64_t l = linear_count(eps, m);
      const std::uint64_t c = circular_count(eps, m);
      ++rep.checks;
      if (oracle.free_linear != l || oracle.circular != c ||
          oracle.circular_edges != c * orbits[k].size())
        rep.mismatches.push_back({k, m, l, c, oracle, orbits[k].size()});
    }
  }
  return rep;
}

MonotonicityReport delta_monotonicity_report(const FCyclicCrystal& crystal, int m_max,
                                             const Limits& limits) {
  const std::vector<std::uint64_t> profile = level_profile(crystal, limits);
  const int stab = static_cast<int>(profile.size());
  const int horizon = std::max(m_max, stab + 1);
  const auto delta = [&](int n) -> std::uint64_t {
    return n >= 1 && n <= stab ? profile[static_cast<std::size_t>(n - 1)] : 0;
  };

  MonotonicityReport rep;
  rep.strict_required = crystal.is_dieudonne() && crystal.rank() >= 2 &&
                        crystal.permutation().is_full_cycle() && delta(1) > 0;
  std::optional<int> first_nonincreasing;
  std::optional<int> first_nonstrict;
  for (int n = 1; n < horizon; ++n) {
    if (delta(n + 1) > delta(n) && !first_nonincreasing) first_nonincreasing = n;
    if (n <= stab && delta(n + 1) >= delta(n) && !first_nonstrict) first_nonstrict = n;
  }
  rep.nonincreasing = !first_nonincreasing;
  rep.strict_through_stabilization = !first_nonstrict;
  if (rep.strict_required) {
    if (first_nonincreasing && first_nonstrict)
      rep.first_violation = std::min(*first_nonincreasing, *first_nonstrict);
    else
      rep.first_violation = first_nonincreasing ? first_nonincreasing : first_nonstrict;
  } else {
    rep.first_violation = first_nonincreasing;
  }
  return rep;
}

std::optional<std::pair<int, int>> ratio_violation(std::span<const std::uint64_t> gamma) {
  const int n = static_cast<int>(gamma.size());
  for (int j = 1; j < n; ++j) {
    const std::uint64_t gj = gamma[static_cast<std::size_t>(j)];
    if (gj == 0) continue;
    for (int i = j + 1; i < n; ++i) {
      const std::uint64_t gi = gamma[static_cast<std::size_t>(i)];
      if (gi * static_cast<std::uint64_t>(j) >= gj * static_cast<std::uint64_t>(i)) return std::pair{i, j};
    }
  }
  return std::nullopt;
}

bool increases_then_constant(std::span<const std::uint64_t> gamma, int stabilization) {
  for (std::size_t m = 1; m < gamma.size(); ++m) {
    const bool rising = static_cast<int>(m) <= stabilization;
    if (rising ? gamma[m] <= gamma[m - 1] : gamma[m] != gamma[m - 1]) return false;
  }
  return true;
}

std::vector<NewtonSlope> newton_slopes(const FCyclicCrystal& crystal) {
  std::vector<NewtonSlope> out;
  for (const Cycle& c : cycle_decomposition(crystal.permutation())) {
    std::int64_t sum = 0;
    for (int x : c) sum += crystal.slope(x);
    out.push_back({Rational(sum, static_cast<std::int64_t>(c.size())), static_cast<int>(c.size())});
  }
  return out;
}

bool is_minimal(const FCyclicCrystal& crystal) {
  if (!crystal.is_dieudonne())
    throw InputError("minimality is defined for Dieudonne modules (Hodge slopes in {0,1})");
  const Permutation& pi = crystal.permutation();
  for (const Cycle& c : cycle_decomposition(pi)) {
    const auto len = static_cast<std::int64_t>(c.size());
    std::int64_t total = 0;
    for (int x : c) total += crystal.slope(x);
    for (int start : c) {
      std::int64_t acc = 0;
      int x = start;
      for (std::int64_t q = 1; q <= len; ++q) {
        acc += crystal.slope(x);
        x = pi(x);
        const std::int64_t floor_q = q * total / len;
        if (acc != floor_q && acc != floor_q + 1) return false;
      }
    }
  }
  return true;
}

}  // namespace fcrystal
