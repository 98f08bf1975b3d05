#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace fcrystal {

/// A nonempty circular sequence of integers (eps_1, ..., eps_s). Positions
/// are 0-based; position s-1 is followed by position 0.
class CircularSeq {
 public:
  /// Throws InputError if `entries` is empty.
  explicit CircularSeq(std::vector<int> entries);

  std::size_t size() const noexcept { return entries_.size(); }
  int operator[](std::size_t t) const { return entries_[t]; }
  /// Entry at position t + 1, wrapping.
  int next(std::size_t t) const { return entries_[(t + 1) % entries_.size()]; }
  std::span<const int> entries() const noexcept { return entries_; }

  bool all_zero() const noexcept;
  long long sum() const noexcept;

  friend bool operator==(const CircularSeq&, const CircularSeq&) = default;

 private:
  std::vector<int> entries_;
};

/// Merges the same-signed neighbours at positions t and t+1 (mod s) into one
/// entry. For t == s-1 the merged entry becomes position 0.
/// Throws InputError unless s >= 2 and seq[t] * seq[t+1] > 0.
CircularSeq first_reduction_step(const CircularSeq& seq, std::size_t t);

/// Drops every zero, keeping cyclic order. Throws InputError on all-zero input.
CircularSeq second_reduction(const CircularSeq& seq);

struct AllZero {
  std::size_t original_length;
  friend bool operator==(const AllZero&, const AllZero&) = default;
};

struct PlusMinus {
  std::vector<std::int8_t> entries;  // each +1 or -1
  friend bool operator==(const PlusMinus&, const PlusMinus&) = default;
};

using NormalizedSeq = std::variant<AllZero, PlusMinus>;

/// Level used when no clamping is wanted.
inline constexpr int kUnclamped = -1;

/// Zeroes dropped, every entry clamped to sign * min(|e|, m + 1) and expanded
/// into |e| copies of its sign. With m == kUnclamped entries are expanded in
/// full.
NormalizedSeq normalize(const CircularSeq& seq, int m);

/// a_lambda counts of free linear segments. counts[lambda - 1] holds a_lambda
/// for 1 <= lambda <= level_cap.
struct SegmentCensus {
  std::vector<std::uint64_t> counts;
  int level_cap = 0;

  std::uint64_t at(int lambda) const {
    return lambda >= 1 && static_cast<std::size_t>(lambda) <= counts.size()
               ? counts[static_cast<std::size_t>(lambda - 1)]
               : 0;
  }
  /// Sum of a_lambda for lambda in [1, m].
  std::uint64_t total_up_to(int m) const;
  /// Largest lambda with a_lambda > 0, 0 if none.
  int max_level() const;
};

/// Census of free linear segments of level <= m (segments wrap circularly).
/// Each -1 start is walked for at most s steps up to its first return to 0.
SegmentCensus segment_census(const PlusMinus& seq, int m);

/// Census with no level cap: every segment is retained.
SegmentCensus full_segment_census(const PlusMinus& seq);

/// lambda_eps: 0 for AllZero, max prefix sum - min prefix sum for a
/// sum-zero PlusMinus, nullopt when the sum is nonzero.
std::optional<int> circular_level(const NormalizedSeq& seq);

/// c = max(0, m - lambda_eps), 0 when no level exists.
std::uint64_t circular_count(const CircularSeq& seq, int m);

/// l = sum_{lambda <= m} a_lambda of the normalized sequence.
std::uint64_t linear_count(const CircularSeq& seq, int m);

}  // namespace fcrystal
