#pragma once

// Exhaustive scans over families of F-cyclic crystals. Every kernel comes in a
// serial reference form and an OpenMP form; both return records in the same
// canonical order (permutations lexicographic in one-line form, slope vectors
// lexicographic within each permutation).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fcrystal/crystal.hpp"

namespace fcrystal {

enum class Family {
  CircularDieudonne,  // r-cycles x {0,1}^r
  AllDieudonne,       // all permutations x {0,1}^r
  CircularFCrystal,   // r-cycles x {0..slope_max}^r
  AllFCrystal,        // all permutations x {0..slope_max}^r
};

std::optional<Family> parse_family(std::string_view name);
std::string_view family_name(Family f);

struct ScanSpec {
  Family family = Family::CircularDieudonne;
  int rank = 2;
  int slope_max = 1;  // ignored by the Dieudonne families
  int m_max = 6;
};

/// All crystals of the family, in canonical order.
std::vector<FCyclicCrystal> enumerate_family(const ScanSpec& spec);

/// Number of crystals enumerate_family would produce (saturating).
std::uint64_t family_size(const ScanSpec& spec);

/// All r-cycles on {1..r}, lexicographic in one-line form.
std::vector<Permutation> all_full_cycles(int r);
/// All permutations of {1..r}, lexicographic in one-line form.
std::vector<Permutation> all_permutations(int r);
/// {0..slope_max}^r, lexicographic.
std::vector<std::vector<int>> all_slope_vectors(int r, int slope_max);

struct ScanRecord {
  Permutation pi;
  std::vector<int> slopes;
  /// gamma[m] for m in [0, width]; width = max(m_max, stabilization + 1).
  std::vector<std::uint64_t> gamma = {};
  std::vector<std::int64_t> delta = {};
  int stabilization = 0;
  bool dieudonne = false;
  bool full_cycle = false;
  std::optional<bool> ordinary = {};
  MonotonicityReport monotonicity = {};
  bool increases_then_constant = true;
  /// Nonordinary Dieudonne only: gamma(i) * j < gamma(j) * i for i > j >= 1.
  std::optional<bool> ratio_ok = {};
  /// Nonordinary Dieudonne only: Delta gamma(2) < Delta gamma(1).
  std::optional<bool> second_difference_ok = {};
  /// Dieudonne only.
  std::optional<bool> minimal = {};
  /// Dieudonne only: minimal <=> stabilization <= 1.
  std::optional<bool> minimal_consistent = {};
  /// A strict drop Delta(n+1) < Delta(n) in any cycle summand also occurs in
  /// the whole crystal.
  bool propagation_ok = true;
  /// Delta gamma constant and positive on [1, stabilization] with stabilization >= 2.
  bool constant_delta = false;

  bool strict_violation() const {
    return monotonicity.strict_required && !monotonicity.strict_through_stabilization;
  }
};

/// Scans throw ResourceLimitError when family_size exceeds limits.scan_budget.

/// Evaluates one crystal. Throws ResourceLimitError past limits.
ScanRecord scan_one(const FCyclicCrystal& crystal, int m_max, const Limits& limits = {});

std::vector<ScanRecord> scan_serial(const ScanSpec& spec, const Limits& limits = {});
/// `threads <= 0` uses the OpenMP default.
std::vector<ScanRecord> scan_parallel(const ScanSpec& spec, int threads = 0,
                                      const Limits& limits = {});

struct ScanSummary {
  std::uint64_t records = 0;
  std::uint64_t strict_violations = 0;
  std::uint64_t nonincreasing_violations = 0;
  std::uint64_t shape_violations = 0;
  std::uint64_t ratio_violations = 0;
  std::uint64_t second_difference_violations = 0;
  std::uint64_t minimality_disagreements = 0;
  std::uint64_t propagation_violations = 0;
  std::uint64_t constant_delta = 0;

  std::uint64_t total_violations() const {
    return strict_violations + nonincreasing_violations + shape_violations + ratio_violations +
           second_difference_violations + minimality_disagreements + propagation_violations;
  }
};

ScanSummary summarize(std::span<const ScanRecord> records);

struct ExhaustiveSpec {
  int r_max = 3;
  int slope_max = 1;
  int m_max = 4;
};

struct CrystalMismatch {
  Permutation pi;
  std::vector<int> slopes;
  OrbitMismatch detail;
};

struct ExhaustiveResult {
  std::uint64_t crystals = 0;
  std::uint64_t checks = 0;
  std::vector<CrystalMismatch> mismatches;
};

/// Formula vs digraph oracle over every permutation of I_r (1 <= r <= r_max)
/// and every E in {0..slope_max}^r, for m in [1, m_max]. The crystal count is
/// held to limits.scan_budget.
ExhaustiveResult verify_exhaustive_serial(const ExhaustiveSpec& spec, const Limits& limits = {});
ExhaustiveResult verify_exhaustive_parallel(const ExhaustiveSpec& spec, int threads = 0,
                                            const Limits& limits = {});

}  // namespace fcrystal
