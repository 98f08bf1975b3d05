#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fcrystal/circseq.hpp"

namespace fcrystal {

/// Witt-digit variable x_{digit, position}; digit in [0, m), position in
/// [0, s) (0-based; reports print position + 1).
struct Vertex {
  int digit;
  int position;
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Edge between digit `from` of column t and digit `to` of column t+1. The
/// relation it encodes is source^(p^(weight+1)) = target, weight == to - from.
struct DigitEdge {
  int from;
  int to;
  int weight;
  friend bool operator==(const DigitEdge&, const DigitEdge&) = default;
};

/// Sub-digraph contributed by one consecutive pair (eps_t, eps_{t+1}).
struct PairEdges {
  std::vector<int> left_zeros;   // digits of column t forced to zero
  std::vector<int> right_zeros;  // digits of column t+1 forced to zero
  std::vector<DigitEdge> edges;
  friend bool operator==(const PairEdges&, const PairEdges&) = default;
};

/// Production rule. With alpha = max(eps_t, 0) and beta = max(0, -eps_next),
/// the congruence p^alpha sigma(x_t) = p^beta x_{t+1} mod p^m compares digit k
/// of both sides: left zeroes for l < min(beta, m) - alpha, right zeroes for
/// l < min(alpha, m) - beta, and edges i -> i + alpha - beta for
/// max(0, beta - alpha) <= i <= m - 1 - alpha.
PairEdges pair_edges(int eps_t, int eps_next, int m);

/// Literal transcription of the eleven regions S_1..S_11 that partition Z^2.
/// Kept as a differential oracle for pair_edges.
PairEdges pair_edges_case_table(int eps_t, int eps_next, int m);

/// Which of the eleven regions (1..11) contains (eps_t, eps_next) at level m.
int pair_case(int eps_t, int eps_next, int m);

struct Arc {
  Vertex source;
  Vertex target;
  int weight;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// The level-m digraph of a circular sequence: m * s vertices, every vertex of
/// in- and out-degree at most one.
class LevelDigraph {
 public:
  LevelDigraph(int positions, int levels);

  int positions() const noexcept { return positions_; }
  int levels() const noexcept { return levels_; }
  std::size_t vertex_count() const noexcept { return zero_.size(); }

  std::size_t index(Vertex v) const {
    return static_cast<std::size_t>(v.position) * static_cast<std::size_t>(levels_) +
           static_cast<std::size_t>(v.digit);
  }
  Vertex vertex(std::size_t idx) const {
    return {static_cast<int>(idx % static_cast<std::size_t>(levels_)),
            static_cast<int>(idx / static_cast<std::size_t>(levels_))};
  }

  /// Throws std::logic_error if either endpoint already has the degree slot.
  void add_arc(Vertex source, Vertex target, int weight);
  void mark_zero(Vertex v) { zero_[index(v)] = 1; }

  bool is_zero(Vertex v) const { return zero_[index(v)] != 0; }
  bool is_zero(std::size_t idx) const { return zero_[idx] != 0; }
  static constexpr std::int64_t kNone = -1;
  std::int64_t successor(std::size_t idx) const { return out_[idx]; }
  std::int64_t predecessor(std::size_t idx) const { return in_[idx]; }
  int out_weight(std::size_t idx) const { return out_weight_[idx]; }

  std::size_t arc_count() const noexcept { return arc_count_; }
  std::size_t zero_count() const noexcept;
  std::vector<Arc> arcs() const;

 private:
  int positions_;
  int levels_;
  std::vector<std::int64_t> out_;
  std::vector<std::int64_t> in_;
  std::vector<int> out_weight_;
  std::vector<std::uint8_t> zero_;
  std::size_t arc_count_ = 0;
};

/// Union of pair_edges over all cyclic pairs; for s == 1 the singleton rule
/// (m zero vertices if eps_1 != 0, m weight-0 self-loops otherwise).
LevelDigraph build_level_digraph(const CircularSeq& seq, int m);

/// Spreads zero marks across every component containing one. Throws
/// std::logic_error if a marked vertex lies on a cycle.
LevelDigraph propagate_zeros(LevelDigraph g);

struct ComponentStats {
  std::uint64_t free_linear = 0;    // l
  std::uint64_t circular = 0;       // c
  std::uint64_t circular_edges = 0; // w
  std::uint64_t zero_linear = 0;
  friend bool operator==(const ComponentStats&, const ComponentStats&) = default;
};

/// Requires propagated zeros. Throws std::logic_error on a component that is
/// neither a path nor a single cycle.
ComponentStats classify_components(const LevelDigraph& g);

/// classify_components(propagate_zeros(build_level_digraph(seq, m))).
ComponentStats oracle_counts(const CircularSeq& seq, int m);

/// Graphviz DOT dump: one node "digit:position" (1-based position) per vertex,
/// arcs labelled by weight, zero vertices carry zero=true.
void write_dot(std::ostream& os, const LevelDigraph& g, const char* name = "level_digraph");

}  // namespace fcrystal
