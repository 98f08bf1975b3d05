#include "fcrystal/digraph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <string>

#include "fcrystal/error.hpp"

namespace fcrystal {

PairEdges pair_edges(int eps_t, int eps_next, int m) {
  if (m < 1) throw InputError("level m must be at least 1");
  const long long alpha = std::max(eps_t, 0);
  const long long beta = std::max(0, -eps_next);
  const long long levels = m;

  PairEdges out;
  for (long long l = 0; l < std::min(beta, levels) - alpha; ++l)
    out.left_zeros.push_back(static_cast<int>(l));
  for (long long l = 0; l < std::min(alpha, levels) - beta; ++l)
    out.right_zeros.push_back(static_cast<int>(l));
  const long long shift = alpha - beta;
  for (long long i = std::max(0LL, beta - alpha); i <= levels - 1 - alpha; ++i)
    out.edges.push_back({static_cast<int>(i), static_cast<int>(i + shift), static_cast<int>(shift)});
  return out;
}

LevelDigraph::LevelDigraph(int positions, int levels)
    : positions_(positions), levels_(levels) {
  if (positions < 1 || levels < 1) throw InputError("digraph needs s >= 1 and m >= 1");
  const std::size_t n = static_cast<std::size_t>(positions) * static_cast<std::size_t>(levels);
  out_.assign(n, kNone);
  in_.assign(n, kNone);
  out_weight_.assign(n, 0);
  zero_.assign(n, 0);
}

void LevelDigraph::add_arc(Vertex source, Vertex target, int weight) {
  const std::size_t a = index(source);
  const std::size_t b = index(target);
  if (out_[a] != kNone || in_[b] != kNone)
    throw std::logic_error("level digraph vertex would exceed degree one");
  out_[a] = static_cast<std::int64_t>(b);
  in_[b] = static_cast<std::int64_t>(a);
  out_weight_[a] = weight;
  ++arc_count_;
}

std::size_t LevelDigraph::zero_count() const noexcept {
  return static_cast<std::size_t>(std::count(zero_.begin(), zero_.end(), std::uint8_t{1}));
}

std::vector<Arc> LevelDigraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count_);
  for (std::size_t v = 0; v < out_.size(); ++v)
    if (out_[v] != kNone)
      out.push_back({vertex(v), vertex(static_cast<std::size_t>(out_[v])), out_weight_[v]});
  return out;
}

LevelDigraph build_level_digraph(const CircularSeq& seq, int m) {
  if (m < 1) throw InputError("level m must be at least 1");
  const int s = static_cast<int>(seq.size());
  LevelDigraph g(s, m);
  if (s == 1) {
    for (int i = 0; i < m; ++i) {
      if (seq[0] != 0)
        g.mark_zero({i, 0});
      else
        g.add_arc({i, 0}, {i, 0}, 0);
    }
    return g;
  }
  for (int t = 0; t < s; ++t) {
    const int u = (t + 1) % s;
    const PairEdges pe = pair_edges(seq[static_cast<std::size_t>(t)], seq.next(static_cast<std::size_t>(t)), m);
    for (int l : pe.left_zeros) g.mark_zero({l, t});
    for (int l : pe.right_zeros) g.mark_zero({l, u});
    for (const DigitEdge& e : pe.edges) g.add_arc({e.from, t}, {e.to, u}, e.weight);
  }
  return g;
}

LevelDigraph propagate_zeros(LevelDigraph g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> seeds(n, 0);
  for (std::size_t v = 0; v < n; ++v) seeds[v] = g.is_zero(v) ? 1 : 0;

  for (std::size_t v = 0; v < n; ++v) {
    if (!seeds[v]) continue;
    // Forward; returning to v means the mark sits on a cycle.
    for (std::int64_t x = g.successor(v); x != LevelDigraph::kNone; x = g.successor(static_cast<std::size_t>(x))) {
      if (static_cast<std::size_t>(x) == v)
        throw std::logic_error("zero-marked vertex lies on a circular component");
      g.mark_zero(g.vertex(static_cast<std::size_t>(x)));
    }
    for (std::int64_t x = g.predecessor(v); x != LevelDigraph::kNone; x = g.predecessor(static_cast<std::size_t>(x)))
      g.mark_zero(g.vertex(static_cast<std::size_t>(x)));
  }
  return g;
}

ComponentStats classify_components(const LevelDigraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint8_t> seen(n, 0);
  ComponentStats stats;

  for (std::size_t v = 0; v < n; ++v) {
    if (seen[v]) continue;
    // Rewind to the head of a path, or detect that v is on a cycle.
    std::size_t head = v;
    bool cycle = false;
    while (g.predecessor(head) != LevelDigraph::kNone) {
      head = static_cast<std::size_t>(g.predecessor(head));
      if (head == v) {
        cycle = true;
        break;
      }
    }

    std::uint64_t vertices = 0;
    std::uint64_t arcs = 0;
    bool marked = false;
    long long weight_sum = 0;
    std::size_t x = head;
    while (true) {
      if (seen[x]) throw std::logic_error("level digraph component is neither a path nor a cycle");
      seen[x] = 1;
      ++vertices;
      marked = marked || g.is_zero(x);
      const std::int64_t next = g.successor(x);
      if (next == LevelDigraph::kNone) break;
      ++arcs;
      weight_sum += g.out_weight(x);
      if (static_cast<std::size_t>(next) == head) break;
      x = static_cast<std::size_t>(next);
    }

    if (cycle) {
      if (arcs != vertices) throw std::logic_error("circular component with mismatched arc count");
      if (marked) throw std::logic_error("zero mark on a circular component");
      if (weight_sum != 0) throw std::logic_error("circular component with nonzero weight sum");
      ++stats.circular;
      stats.circular_edges += arcs;
    } else {
      if (arcs + 1 != vertices) throw std::logic_error("linear component with mismatched arc count");
      if (marked)
        ++stats.zero_linear;
      else
        ++stats.free_linear;
    }
  }
  return stats;
}

ComponentStats oracle_counts(const CircularSeq& seq, int m) {
  return classify_components(propagate_zeros(build_level_digraph(seq, m)));
}

void write_dot(std::ostream& os, const LevelDigraph& g, const char* name) {
  const auto label = [](Vertex v) {
    return "\"" + std::to_string(v.digit) + ":" + std::to_string(v.position + 1) + "\"";
  };
  os << "digraph " << name << " {\n";
  os << "  // s=" << g.positions() << " m=" << g.levels() << "\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    os << "  " << label(g.vertex(v));
    if (g.is_zero(v)) os << " [zero=true, style=filled, fillcolor=gray]";
    os << ";\n";
  }
  for (const Arc& a : g.arcs())
    os << "  " << label(a.source) << " -> " << label(a.target) << " [label=\"" << a.weight << "\"];\n";
  os << "}\n";
}

}  // namespace fcrystal
