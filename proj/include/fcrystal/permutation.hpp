#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fcrystal {

/// A bijection of I_r = {1, ..., r}. Points are 1-based everywhere in the
/// public interface.
class Permutation {
 public:
  /// `images[i - 1] == pi(i)`. Throws InputError unless images is a
  /// bijection of {1..images.size()}.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int r);

  int size() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point - 1)]; }
  std::span<const int> images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  /// True when the permutation is a single r-cycle (F-circular case).
  bool is_full_cycle() const;

  /// Canonical cycle notation, fixed points included: "(1 2 3)(4)".
  std::string to_cycle_string() const;
  /// One-line form: "2 3 1".
  std::string to_one_line() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Accepts one-line form ("2 3 1") or cycle form ("(1 2 3)", "(1 3)(2)",
/// "(1,3)"). Fixed points may be omitted in cycle form; "()" and the empty
/// string denote the identity. Errors carry the character offset.
Permutation parse_permutation(std::string_view text, int r);

using Cycle = std::vector<int>;

/// Cycles partitioning {1..r}; each starts at its minimum, sorted by minimum.
std::vector<Cycle> cycle_decomposition(const Permutation& p);

using Point = std::pair<int, int>;

/// An orbit of pi x pi on I_r^2, listed along the action:
/// (pi x pi)(points[t]) == points[(t + 1) % size()].
struct Orbit {
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
  friend bool operator==(const Orbit&, const Orbit&) = default;
};

/// All orbits of pi x pi, each starting at its lexicographic minimum, sorted
/// by that minimum. Total length is r^2.
std::vector<Orbit> product_orbits(const Permutation& p);

}  // namespace fcrystal
