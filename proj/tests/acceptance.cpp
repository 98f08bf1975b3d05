// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "fcrystal/crystal.hpp"
#include "fcrystal/scan.hpp"
#include "oracles.hpp"

using namespace fcrystal;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> body;
};

std::vector<int> as_vec(std::span<const int> s) { return {s.begin(), s.end()}; }

Outcome worked_sequences() {
  int bad = 0;
  for (const std::vector<int>& v : {std::vector<int>{3, 0, -1, -2}, {1, 1, 1, 0, -1, -1, -1}, {3, -3}}) {
    const CircularSeq seq(v);
    const ComponentStats lib = oracle_counts(seq, 5);
    const oracle::Counts ref = oracle::digraph_counts(v, 5);
    const bool ok = lib.free_linear == 3 && lib.circular == 2 && ref.linear == 3 && ref.circular == 2 &&
                    linear_count(seq, 5) == 3 && circular_count(seq, 5) == 2;
    bad += !ok;
  }
  return {bad == 0, "3 sequences, l=3 c=2 by digraph and closed form, " + std::to_string(bad) + " off"};
}

Outcome two_cycle_family() {
  int bad = 0;
  for (int e = 2; e <= 8; ++e) {
    const FCyclicCrystal c(Permutation({2, 1}), {0, e});
    const GammaReport rep = gamma_table(c, e + 3);
    if (rep.stabilization != e) ++bad;
    for (int i = 1; i <= e + 3; ++i) {
      const auto want = static_cast<std::uint64_t>(std::min(i, e));
      if (rep.gamma[static_cast<std::size_t>(i)] != want) ++bad;
      if (rep.delta[static_cast<std::size_t>(i)] != (i <= e ? 1 : 0)) ++bad;
      if (oracle::crystal_counts({2, 1}, {0, e}, i).gamma != want) ++bad;
    }
  }
  return {bad == 0, "e=2..8: gamma(i)=min(i,e), stabilization e, unit differences; " + std::to_string(bad) + " off"};
}

Outcome oracle_equals_formula() {
  const ExhaustiveResult ex = verify_exhaustive_parallel({4, 2, 5}, 0, Limits::unlimited());
  oracle::Gen gen(20261019);
  std::uint64_t random_bad = 0;
  for (int k = 0; k < 10000; ++k) {
    const std::vector<int> v = gen.sequence(1, 10, -6, 6);
    const int m = gen.integer(1, 8);
    const CircularSeq seq(v);
    const ComponentStats lib = oracle_counts(seq, m);
    const oracle::Counts ref = oracle::digraph_counts(v, m);
    if (lib.free_linear != linear_count(seq, m) || lib.circular != circular_count(seq, m) ||
        ref.linear != lib.free_linear || ref.circular != lib.circular)
      ++random_bad;
  }
  return {ex.mismatches.empty() && random_bad == 0,
          std::to_string(ex.crystals) + " crystals, " + std::to_string(ex.checks) + " orbit-level checks, " +
              std::to_string(ex.mismatches.size()) + " mismatches; 10000 random sequences, " +
              std::to_string(random_bad) + " mismatches"};
}

Outcome reduction_invariance() {
  oracle::Gen gen(0x7ed0c);
  std::uint64_t steps = 0, bad = 0;
  for (int k = 0; k < 10000; ++k) {
    const CircularSeq seq(gen.sequence(1, 9, -5, 5));
    const int m = gen.integer(1, 7);
    const ComponentStats base = oracle_counts(seq, m);
    const auto same = [&](const CircularSeq& other) {
      const ComponentStats s = oracle_counts(other, m);
      ++steps;
      if (s.free_linear != base.free_linear || s.circular != base.circular) ++bad;
    };
    for (std::size_t t = 0; seq.size() >= 2 && t < seq.size(); ++t)
      if (static_cast<long long>(seq[t]) * seq.next(t) > 0) same(first_reduction_step(seq, t));
    if (!seq.all_zero()) same(second_reduction(seq));
  }
  return {bad == 0, "10000 pairs, " + std::to_string(steps) + " reductions, " + std::to_string(bad) + " violations"};
}

// Shared by criteria 5 and 6.
std::vector<ScanRecord> circular_dieudonne_records() {
  std::vector<ScanRecord> all;
  for (int r = 2; r <= 7; ++r) {
    auto recs = scan_parallel({Family::CircularDieudonne, r, 1, 6});
    all.insert(all.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return all;
}

const std::vector<ScanRecord>& circular_scan() {
  static const std::vector<ScanRecord> recs = circular_dieudonne_records();
  return recs;
}

Outcome strict_monotonicity() {
  std::uint64_t nonordinary = 0, bad = 0;
  for (const ScanRecord& r : circular_scan()) {
    if (r.ordinary != false) continue;
    ++nonordinary;
    if (!r.monotonicity.strict_required || !r.monotonicity.strict_through_stabilization) ++bad;
  }
  return {bad == 0, std::to_string(nonordinary) + " nonordinary crystals (r=2..7), " + std::to_string(bad) + " violations"};
}

Outcome growth_shape() {
  std::uint64_t checked = 0, shape = 0, nonincreasing = 0, ratio = 0;
  for (const ScanRecord& r : circular_scan()) {
    ++checked;
    shape += !r.increases_then_constant;
    nonincreasing += !r.monotonicity.nonincreasing;
    if (r.ordinary == false) ratio += r.ratio_ok != true;
  }
  return {shape + nonincreasing + ratio == 0,
          std::to_string(checked) + " crystals from the criterion 5 scan; shape " + std::to_string(shape) + ", nonincreasing " +
              std::to_string(nonincreasing) + ", ratio " + std::to_string(ratio) + " violations"};
}

Outcome minimality_cross_check() {
  std::uint64_t checked = 0, minimal = 0, bad = 0;
  for (int r = 1; r <= 6; ++r)
    for (const ScanRecord& rec : scan_parallel({Family::AllDieudonne, r, 1, 2})) {
      ++checked;
      minimal += *rec.minimal;
      bad += !*rec.minimal_consistent;
    }
  return {bad == 0, std::to_string(checked) + " Dieudonne crystals (r<=6), " + std::to_string(minimal) +
                        " minimal, " + std::to_string(bad) + " disagreements"};
}

Outcome closed_forms() {
  int bad = 0;
  for (int r = 1; r <= 5; ++r) {
    const FCyclicCrystal id(Permutation::identity(r), std::vector<int>(static_cast<std::size_t>(r), 0));
    for (int m = 1; m <= 8; ++m) {
      const auto ref = oracle::crystal_counts(as_vec(id.permutation().images()), as_vec(id.slopes()), m);
      const auto b = static_cast<std::uint64_t>(m * r * r);
      bad += gamma(id, m) != 0 || endo_exponent(id, m) != BigInt(b) || ref.gamma != 0 || ref.b != b;
    }
  }
  const FCyclicCrystal ss(Permutation({2, 1}), {0, 1});
  for (int m = 1; m <= 12; ++m) {
    const auto ref = oracle::crystal_counts({2, 1}, {0, 1}, m);
    const auto b = static_cast<std::uint64_t>(4 * m - 2);
    bad += gamma(ss, m) != 1 || endo_exponent(ss, m) != BigInt(b) || ref.gamma != 1 || ref.b != b;
  }
  return {bad == 0, "identity r<=5, m<=8 and supersingular m<=12 against the oracle; " + std::to_string(bad) + " off"};
}

Outcome case_table_fidelity() {
  std::uint64_t checked = 0, bad = 0;
  const auto key = [](PairEdges p) {
    std::vector<std::tuple<int, int, int>> e;
    for (const DigitEdge& d : p.edges) e.emplace_back(d.from, d.to, d.weight);
    std::sort(e.begin(), e.end());
    std::sort(p.left_zeros.begin(), p.left_zeros.end());
    std::sort(p.right_zeros.begin(), p.right_zeros.end());
    return std::tuple(e, p.left_zeros, p.right_zeros);
  };
  for (int m = 1; m <= 6; ++m)
    for (int x = -(m + 2); x <= m + 2; ++x)
      for (int y = -(m + 2); y <= m + 2; ++y) {
        ++checked;
        bad += key(pair_edges(x, y, m)) != key(pair_edges_case_table(x, y, m));
      }
  return {bad == 0, std::to_string(checked) + " (eps_t, eps_t+1, m) triples, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "worked sequences at level 5", 1, worked_sequences},
      {2, "two-cycle family (0, e)", 1, two_cycle_family},
      {3, "digraph oracle equals closed forms", 300, oracle_equals_formula},
      {4, "reductions preserve oracle counts", 60, reduction_invariance},
      {5, "strict decrease of differences", 120, strict_monotonicity},
      {6, "growth shape and ratio bound", 120, growth_shape},
      {7, "minimality vs stabilization <= 1", 120, minimality_cross_check},
      {8, "closed-form anchors", 10, closed_forms},
      {9, "unified rule equals case table", 10, case_table_fidelity},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %d %s: %s (%s; %.3f s of %.0f s%s)\n", c.id, c.title, pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
