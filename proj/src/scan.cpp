#include "fcrystal/scan.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <string>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fcrystal/error.hpp"

namespace fcrystal {

std::optional<Family> parse_family(std::string_view name) {
  if (name == "circular-dieudonne") return Family::CircularDieudonne;
  if (name == "all-dieudonne") return Family::AllDieudonne;
  if (name == "circular-fcrystal") return Family::CircularFCrystal;
  if (name == "all-fcrystal") return Family::AllFCrystal;
  return std::nullopt;
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::CircularDieudonne: return "circular-dieudonne";
    case Family::AllDieudonne: return "all-dieudonne";
    case Family::CircularFCrystal: return "circular-fcrystal";
    case Family::AllFCrystal: return "all-fcrystal";
  }
  return "?";
}

std::vector<Permutation> all_permutations(int r) {
  std::vector<int> images(static_cast<std::size_t>(r));
  std::iota(images.begin(), images.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

std::vector<Permutation> all_full_cycles(int r) {
  // Cycle (1 a_2 ... a_r) for every arrangement of 2..r.
  std::vector<int> rest(static_cast<std::size_t>(std::max(r - 1, 0)));
  std::iota(rest.begin(), rest.end(), 2);
  std::vector<Permutation> out;
  do {
    std::vector<int> images(static_cast<std::size_t>(r));
    int prev = 1;
    for (int x : rest) {
      images[static_cast<std::size_t>(prev - 1)] = x;
      prev = x;
    }
    images[static_cast<std::size_t>(prev - 1)] = 1;
    out.emplace_back(std::move(images));
  } while (std::next_permutation(rest.begin(), rest.end()));
  std::sort(out.begin(), out.end(), [](const Permutation& a, const Permutation& b) {
    return std::lexicographical_compare(a.images().begin(), a.images().end(), b.images().begin(),
                                        b.images().end());
  });
  return out;
}

std::vector<std::vector<int>> all_slope_vectors(int r, int slope_max) {
  std::vector<std::vector<int>> out;
  std::vector<int> e(static_cast<std::size_t>(r), 0);
  while (true) {
    out.push_back(e);
    int k = r - 1;
    while (k >= 0 && e[static_cast<std::size_t>(k)] == slope_max) e[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
    ++e[static_cast<std::size_t>(k)];
  }
  return out;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f = saturating_mul(f, static_cast<std::uint64_t>(k));
  return f;
}

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t x = 1;
  for (int k = 0; k < exp; ++k) x = saturating_mul(x, base);
  return x;
}

void require_budget(std::uint64_t crystals, const Limits& limits) {
  if (crystals > limits.scan_budget)
    throw ResourceLimitError("run would cover " +
                             (crystals == kSaturated ? std::string("too many") : std::to_string(crystals)) +
                             " crystals (budget " + std::to_string(limits.scan_budget) + ")");
}

}  // namespace

std::uint64_t family_size(const ScanSpec& spec) {
  if (spec.rank < 1) return 0;
  const bool circular =
      spec.family == Family::CircularDieudonne || spec.family == Family::CircularFCrystal;
  const bool dieudonne =
      spec.family == Family::CircularDieudonne || spec.family == Family::AllDieudonne;
  const int slope_max = dieudonne ? 1 : spec.slope_max;
  if (slope_max < 0) return 0;
  const std::uint64_t perms = factorial(circular ? spec.rank - 1 : spec.rank);
  return saturating_mul(perms, power(static_cast<std::uint64_t>(slope_max) + 1, spec.rank));
}

std::vector<FCyclicCrystal> enumerate_family(const ScanSpec& spec) {
  if (spec.rank < 1) throw InputError("scan rank must be positive");
  const bool circular =
      spec.family == Family::CircularDieudonne || spec.family == Family::CircularFCrystal;
  const bool dieudonne =
      spec.family == Family::CircularDieudonne || spec.family == Family::AllDieudonne;
  const int slope_max = dieudonne ? 1 : spec.slope_max;
  if (slope_max < 0) throw InputError("slope_max must be nonnegative");

  const auto perms = circular ? all_full_cycles(spec.rank) : all_permutations(spec.rank);
  const auto slopes = all_slope_vectors(spec.rank, slope_max);
  std::vector<FCyclicCrystal> out;
  out.reserve(perms.size() * slopes.size());
  for (const Permutation& p : perms)
    for (const auto& e : slopes) out.emplace_back(p, e);
  return out;
}

ScanRecord scan_one(const FCyclicCrystal& crystal, int m_max, const Limits& limits) {
  const std::vector<std::uint64_t> profile = level_profile(crystal, limits);
  const int stab = static_cast<int>(profile.size());
  const int width = std::max(m_max, stab + 1);
  const auto delta_at = [&](const std::vector<std::uint64_t>& p, int n) -> std::uint64_t {
    return n >= 1 && n <= static_cast<int>(p.size()) ? p[static_cast<std::size_t>(n - 1)] : 0;
  };

  ScanRecord rec{.pi = crystal.permutation(),
                 .slopes = {crystal.slopes().begin(), crystal.slopes().end()}};
  rec.gamma.assign(static_cast<std::size_t>(width) + 1, 0);
  rec.delta.assign(static_cast<std::size_t>(width) + 1, 0);
  for (int m = 1; m <= width; ++m) {
    rec.delta[static_cast<std::size_t>(m)] = static_cast<std::int64_t>(delta_at(profile, m));
    rec.gamma[static_cast<std::size_t>(m)] = rec.gamma[static_cast<std::size_t>(m - 1)] + delta_at(profile, m);
  }
  rec.stabilization = stab;
  rec.dieudonne = crystal.is_dieudonne();
  rec.full_cycle = crystal.permutation().is_full_cycle();
  rec.monotonicity = delta_monotonicity_report(crystal, m_max, limits);
  rec.increases_then_constant = fcrystal::increases_then_constant(rec.gamma, stab);
  rec.constant_delta =
      stab >= 2 && std::all_of(profile.begin(), profile.end(), [&](std::uint64_t d) { return d == profile[0]; });

  if (rec.dieudonne) {
    const bool ordinary = rec.gamma[1] == 0;
    rec.ordinary = ordinary;
    rec.minimal = is_minimal(crystal);
    rec.minimal_consistent = *rec.minimal == (stab <= 1);
    if (!ordinary) {
      rec.ratio_ok = !ratio_violation(rec.gamma).has_value();
      rec.second_difference_ok = delta_at(profile, 2) < delta_at(profile, 1);
    }
  }

  const auto cycles = cycle_decomposition(crystal.permutation());
  if (cycles.size() > 1) {
    for (const Cycle& c : cycles) {
      const auto part = level_profile(crystal.summand(c), limits);
      for (int n = 1; n <= static_cast<int>(part.size()); ++n)
        if (delta_at(part, n + 1) < delta_at(part, n) && !(delta_at(profile, n + 1) < delta_at(profile, n)))
          rec.propagation_ok = false;
    }
  }
  return rec;
}

std::vector<ScanRecord> scan_serial(const ScanSpec& spec, const Limits& limits) {
  require_budget(family_size(spec), limits);
  std::vector<ScanRecord> out;
  for (const FCyclicCrystal& c : enumerate_family(spec)) out.push_back(scan_one(c, spec.m_max, limits));
  return out;
}

namespace {

// Runs body(i) for i in [0, n) across OpenMP threads; rethrows the first
// exception after the loop.
template <class Body>
void parallel_for(std::size_t n, int threads, Body&& body) {
  std::exception_ptr error;
#ifdef _OPENMP
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(team)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical(fcrystal_scan_error)
#endif
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::vector<ScanRecord> scan_parallel(const ScanSpec& spec, int threads, const Limits& limits) {
  require_budget(family_size(spec), limits);
  const auto crystals = enumerate_family(spec);
  std::vector<std::optional<ScanRecord>> slots(crystals.size());
  parallel_for(crystals.size(), threads,
               [&](std::size_t i) { slots[i] = scan_one(crystals[i], spec.m_max, limits); });
  std::vector<ScanRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

ScanSummary summarize(std::span<const ScanRecord> records) {
  ScanSummary s;
  for (const ScanRecord& r : records) {
    ++s.records;
    if (r.strict_violation()) ++s.strict_violations;
    if (!r.monotonicity.nonincreasing) ++s.nonincreasing_violations;
    if (!r.increases_then_constant) ++s.shape_violations;
    if (r.ratio_ok == false) ++s.ratio_violations;
    if (r.second_difference_ok == false) ++s.second_difference_violations;
    if (r.minimal_consistent == false) ++s.minimality_disagreements;
    if (!r.propagation_ok) ++s.propagation_violations;
    if (r.constant_delta) ++s.constant_delta;
  }
  return s;
}

namespace {

std::vector<FCyclicCrystal> exhaustive_crystals(const ExhaustiveSpec& spec, const Limits& limits) {
  if (spec.r_max < 1 || spec.m_max < 1 || spec.slope_max < 0)
    throw InputError("exhaustive bounds need r_max >= 1, m_max >= 1, slope_max >= 0");
  std::uint64_t total = 0;
  for (int r = 1; r <= spec.r_max; ++r) {
    const std::uint64_t n =
        saturating_mul(factorial(r), power(static_cast<std::uint64_t>(spec.slope_max) + 1, r));
    total = n > kSaturated - total ? kSaturated : total + n;
  }
  require_budget(total, limits);
  std::vector<FCyclicCrystal> out;
  for (int r = 1; r <= spec.r_max; ++r) {
    const auto slopes = all_slope_vectors(r, spec.slope_max);
    for (const Permutation& p : all_permutations(r))
      for (const auto& e : slopes) out.emplace_back(p, e);
  }
  return out;
}

ExhaustiveResult collect(const std::vector<FCyclicCrystal>& crystals,
                         std::vector<std::optional<VerificationReport>>& reports) {
  ExhaustiveResult res;
  res.crystals = crystals.size();
  for (std::size_t i = 0; i < crystals.size(); ++i) {
    res.checks += reports[i]->checks;
    for (const OrbitMismatch& mm : reports[i]->mismatches)
      res.mismatches.push_back({crystals[i].permutation(),
                                {crystals[i].slopes().begin(), crystals[i].slopes().end()}, mm});
  }
  return res;
}

}  // namespace

ExhaustiveResult verify_exhaustive_serial(const ExhaustiveSpec& spec, const Limits& limits) {
  const auto crystals = exhaustive_crystals(spec, limits);
  std::vector<std::optional<VerificationReport>> reports(crystals.size());
  for (std::size_t i = 0; i < crystals.size(); ++i)
    reports[i] = verify_formula_vs_oracle(crystals[i], spec.m_max, limits);
  return collect(crystals, reports);
}

ExhaustiveResult verify_exhaustive_parallel(const ExhaustiveSpec& spec, int threads,
                                            const Limits& limits) {
  const auto crystals = exhaustive_crystals(spec, limits);
  std::vector<std::optional<VerificationReport>> reports(crystals.size());
  parallel_for(crystals.size(), threads, [&](std::size_t i) {
    reports[i] = verify_formula_vs_oracle(crystals[i], spec.m_max, limits);
  });
  return collect(crystals, reports);
}

}  // namespace fcrystal
