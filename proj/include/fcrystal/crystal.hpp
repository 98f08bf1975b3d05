#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include "fcrystal/circseq.hpp"
#include "fcrystal/digraph.hpp"
#include "fcrystal/permutation.hpp"

namespace fcrystal {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::rational<std::int64_t>;

/// Guard rails for desk-scale work. The library enforces the budgets; the CLI
/// additionally enforces rank and level.
struct Limits {
  int max_rank = 8;
  int max_level = 16;
  std::uint64_t vertex_budget = 10'000'000;    // oracle digraph vertices per job
  std::uint64_t sequence_budget = 10'000'000;  // total unclamped normalized length
  std::uint64_t scan_budget = 10'000'000;      // crystals per scan or exhaustive run

  static Limits unlimited();
};

/// M_pi: phi(v_i) = p^{e_i} v_{pi(i)} on a rank-r lattice.
class FCyclicCrystal {
 public:
  /// Throws InputError unless slopes has size r and every slope is >= 0.
  FCyclicCrystal(Permutation pi, std::vector<int> slopes);

  int rank() const noexcept { return pi_.size(); }
  const Permutation& permutation() const noexcept { return pi_; }
  std::span<const int> slopes() const noexcept { return slopes_; }
  int slope(int point) const { return slopes_[static_cast<std::size_t>(point - 1)]; }

  /// All Hodge slopes in {0, 1}.
  bool is_dieudonne() const noexcept;
  /// Number of zero slopes (meaningful for Dieudonne input).
  int codimension() const noexcept;
  /// Number of unit slopes (meaningful for Dieudonne input).
  int dimension() const noexcept;

  /// The direct summand carried by one cycle of pi, relabelled so the cycle's
  /// points become 1..|C| in increasing order.
  FCyclicCrystal summand(const Cycle& cycle) const;

 private:
  Permutation pi_;
  std::vector<int> slopes_;
};

/// eps_O = (e_{i_1} - e_{j_1}, ..., e_{i_s} - e_{j_s}).
CircularSeq orbit_epsilon(const FCyclicCrystal& crystal, const Orbit& orbit);

struct OrbitData {
  Orbit orbit;
  CircularSeq epsilon;
  NormalizedSeq normalized;    // clamped at m + 1
  SegmentCensus census;        // capped at m
  std::optional<int> level;    // circular level of `normalized`
};

/// One entry per orbit of pi x pi, in canonical orbit order.
std::vector<OrbitData> orbit_data(const FCyclicCrystal& crystal, int m);

/// Dimension of Aut_m: sum over orbits of sum_{lambda <= m} a_lambda. gamma(0) == 0.
std::uint64_t gamma(const FCyclicCrystal& crystal, int m);

/// b with p^b components of End_m: sum over orbits of c(eps_O, m) * |O|,
/// using the original orbit length.
BigInt endo_exponent(const FCyclicCrystal& crystal, int m);

/// p^b.
BigInt power_of(unsigned prime, const BigInt& exponent);

/// Delta gamma(n) = sum_O a_n(eps~_O) for n = 1..L where L is the largest level
/// with a nonzero count (empty when gamma vanishes). Computed on unclamped
/// sequences; throws ResourceLimitError past limits.sequence_budget.
std::vector<std::uint64_t> level_profile(const FCyclicCrystal& crystal, const Limits& limits = {});

/// All per-level vectors are indexed by m with entry 0 meaning m = 0:
/// gamma[0] = 0, delta[0] = 0, b[0] = 0.
struct GammaReport {
  int m_max = 0;
  std::vector<std::uint64_t> gamma;
  std::vector<std::int64_t> delta;
  std::vector<BigInt> b;
  /// Largest lambda with some a_lambda > 0 (0 if none). May exceed m_max.
  int stabilization = 0;
  /// Dieudonne input: stabilization is the isomorphism number.
  bool stabilization_is_isomorphism_number = false;
  /// gamma(1) == 0, only reported for Dieudonne input.
  std::optional<bool> ordinary;
  std::vector<OrbitData> per_orbit;
};

GammaReport gamma_table(const FCyclicCrystal& crystal, int m_max, const Limits& limits = {});

struct OrbitMismatch {
  std::size_t orbit_index;
  int m;
  std::uint64_t formula_linear;
  std::uint64_t formula_circular;
  ComponentStats oracle;
  std::uint64_t orbit_length;
};

struct VerificationReport {
  std::uint64_t checks = 0;
  std::vector<OrbitMismatch> mismatches;
  bool ok() const noexcept { return mismatches.empty(); }
};

/// Per orbit and per m in [1, m_max]: formula (l, c) against the digraph
/// oracle, plus w == c * |O|. Throws ResourceLimitError when the total oracle
/// vertex count exceeds limits.vertex_budget.
VerificationReport verify_formula_vs_oracle(const FCyclicCrystal& crystal, int m_max,
                                            const Limits& limits = {});

struct MonotonicityReport {
  bool nonincreasing = true;
  bool strict_through_stabilization = true;
  /// Dieudonne, pi an r-cycle with r >= 2, nonordinary.
  bool strict_required = false;
  /// First n at which the applicable property (strict when required,
  /// nonincreasing otherwise) fails between Delta gamma(n) and Delta gamma(n+1).
  std::optional<int> first_violation;
};

/// Checks Delta gamma(n+1) <= Delta gamma(n) for 1 <= n < max(m_max, stabilization + 1)
/// and strictness for 1 <= n <= stabilization.
MonotonicityReport delta_monotonicity_report(const FCyclicCrystal& crystal, int m_max,
                                             const Limits& limits = {});

/// First (i, j) with i > j >= 1, gamma(j) > 0 and gamma(i) * j >= gamma(j) * i.
std::optional<std::pair<int, int>> ratio_violation(std::span<const std::uint64_t> gamma);

/// gamma strictly increasing on [0, stabilization] and constant afterwards.
bool increases_then_constant(std::span<const std::uint64_t> gamma, int stabilization);

struct NewtonSlope {
  Rational slope;
  int multiplicity;
  friend bool operator==(const NewtonSlope&, const NewtonSlope&) = default;
};

/// One slope per cycle of pi (canonical cycle order), multiplicity |C|.
std::vector<NewtonSlope> newton_slopes(const FCyclicCrystal& crystal);

/// Every cycle C, for i in C and 1 <= q <= |C|, has accumulated exponent
/// sum_{u<q} e_{pi^u(i)} in {floor(q lambda_C), floor(q lambda_C) + 1}.
/// Throws InputError for non-Dieudonne input.
bool is_minimal(const FCyclicCrystal& crystal);

}  // namespace fcrystal
