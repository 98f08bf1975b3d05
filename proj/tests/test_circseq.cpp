#include <doctest.h>

#include "fcrystal/circseq.hpp"
#include "fcrystal/digraph.hpp"
#include "fcrystal/error.hpp"
#include "oracles.hpp"

using namespace fcrystal;

namespace {

std::vector<int> entries(const CircularSeq& s) { return {s.entries().begin(), s.entries().end()}; }

PlusMinus pm(std::vector<int> v) {
  PlusMinus out;
  for (int x : v) out.entries.push_back(static_cast<std::int8_t>(x));
  return out;
}

std::vector<int> as_ints(const PlusMinus& p) { return {p.entries.begin(), p.entries.end()}; }

std::map<int, std::uint64_t> census_map(const SegmentCensus& c) {
  std::map<int, std::uint64_t> out;
  for (std::size_t k = 0; k < c.counts.size(); ++k)
    if (c.counts[k]) out[static_cast<int>(k) + 1] = c.counts[k];
  return out;
}

}  // namespace

TEST_CASE("circular sequences must be nonempty") {
  CHECK_THROWS_AS(CircularSeq({}), InputError);
  const CircularSeq s({1, 2, 3});
  CHECK(s.next(2) == 1);
  CHECK(s.sum() == 6);
  CHECK(CircularSeq({0, 0}).all_zero());
}

TEST_CASE("merging same-signed neighbours") {
  CHECK(entries(first_reduction_step(CircularSeq({3, 2, -5}), 0)) == std::vector<int>{5, -5});
  CHECK(entries(first_reduction_step(CircularSeq({-1, -1}), 0)) == std::vector<int>{-2});
  CHECK(entries(first_reduction_step(CircularSeq({1, 1, 1, 0, -1, -1, -1}), 0)) ==
        std::vector<int>{2, 1, 0, -1, -1, -1});
  // the wrap pair lands in front
  CHECK(entries(first_reduction_step(CircularSeq({2, -1, 3}), 2)) == std::vector<int>{5, -1});
  CHECK_THROWS_AS(first_reduction_step(CircularSeq({1, -1}), 0), InputError);
  CHECK_THROWS_AS(first_reduction_step(CircularSeq({1, 0}), 0), InputError);
  CHECK_THROWS_AS(first_reduction_step(CircularSeq({4}), 0), InputError);
}

TEST_CASE("dropping zeros") {
  CHECK(entries(second_reduction(CircularSeq({3, 0, -1, -2}))) == std::vector<int>{3, -1, -2});
  CHECK(entries(second_reduction(CircularSeq({0, 0, 5}))) == std::vector<int>{5});
  CHECK(entries(second_reduction(CircularSeq({-1, 1}))) == std::vector<int>{-1, 1});
  CHECK_THROWS_AS(second_reduction(CircularSeq({0, 0})), InputError);
}

TEST_CASE("normalization clamps at m + 1") {
  const auto a = normalize(CircularSeq({3, 0, -1, -2}), 5);
  REQUIRE(std::holds_alternative<PlusMinus>(a));
  CHECK(as_ints(std::get<PlusMinus>(a)) == std::vector<int>{1, 1, 1, -1, -1, -1});
  CHECK(std::get<AllZero>(normalize(CircularSeq({0, 0}), 3)).original_length == 2);
  CHECK(as_ints(std::get<PlusMinus>(normalize(CircularSeq({-4, 4}), 2))) ==
        std::vector<int>{-1, -1, -1, 1, 1, 1});
  CHECK(as_ints(std::get<PlusMinus>(normalize(CircularSeq({-4, 4}), kUnclamped))).size() == 8);
}

TEST_CASE("segment census examples") {
  CHECK(census_map(segment_census(pm({1, 1, 1, -1, -1, -1}), 5)) ==
        std::map<int, std::uint64_t>{{1, 1}, {2, 1}, {3, 1}});
  CHECK(census_map(segment_census(pm({-1, 1}), 1)) == std::map<int, std::uint64_t>{{1, 1}});
  CHECK(census_map(segment_census(pm({1, 1, -1, -1}), 5)) == std::map<int, std::uint64_t>{{1, 1}, {2, 1}});
  // capped at m
  CHECK(census_map(segment_census(pm({1, 1, 1, -1, -1, -1}), 2)) ==
        std::map<int, std::uint64_t>{{1, 1}, {2, 1}});
  CHECK(segment_census(pm({1, 1, 1, -1, -1, -1}), 5).total_up_to(5) == 3);
}

TEST_CASE("circular level examples") {
  CHECK(circular_level(AllZero{3}) == 0);
  CHECK(circular_level(pm({1, 1, 1, -1, -1, -1})) == 3);
  CHECK(circular_level(pm({-1, 1, -1, 1})) == 1);
  CHECK_FALSE(circular_level(pm({1, 1, -1})).has_value());
}

TEST_CASE("closed-form counts on worked sequences") {
  CHECK(circular_count(CircularSeq({3, 0, -1, -2}), 5) == 2);
  CHECK(circular_count(CircularSeq({0, 0}), 4) == 4);
  CHECK(circular_count(CircularSeq({1}), 3) == 0);
  CHECK(linear_count(CircularSeq({3, 0, -1, -2}), 5) == 3);
  CHECK(linear_count(CircularSeq({3, -3}), 5) == 3);
  CHECK(linear_count(CircularSeq({0, 0, 0}), 4) == 0);
}

TEST_CASE("property: census matches the windowed definition") {
  oracle::Gen gen(0xce05);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<int> v = gen.sequence(1, 14, -1, 1);
    v.erase(std::remove(v.begin(), v.end(), 0), v.end());
    if (v.empty()) continue;
    const PlusMinus p = pm(v);
    const auto expected = oracle::segment_levels(v);
    CHECK(census_map(full_segment_census(p)) == expected);

    const int m = gen.integer(1, 8);
    std::map<int, std::uint64_t> capped;
    for (const auto& [lvl, n] : expected)
      if (lvl <= m) capped[lvl] = n;
    const SegmentCensus c = segment_census(p, m);
    CHECK(census_map(c) == capped);
    CHECK(c.level_cap == m);

    CHECK(circular_level(p) == oracle::window_level(v));
  }
}

TEST_CASE("property: normalization matches a direct expansion") {
  oracle::Gen gen(0xace);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::vector<int> v = gen.sequence(1, 8, -7, 7);
    const int m = gen.integer(1, 8);
    const NormalizedSeq n = normalize(CircularSeq(v), m);
    const std::vector<int> expected = oracle::plus_minus(v, m + 1);
    if (expected.empty()) {
      CHECK(std::get<AllZero>(n).original_length == v.size());
    } else {
      CHECK(as_ints(std::get<PlusMinus>(n)) == expected);
    }
  }
}

TEST_CASE("property: reductions preserve the level census") {
  oracle::Gen gen(0x4ed);
  for (int trial = 0; trial < 3000; ++trial) {
    const CircularSeq s(gen.sequence(2, 9, -4, 4));
    const int m = gen.integer(1, 7);
    for (std::size_t t = 0; t < s.size(); ++t) {
      if (static_cast<long long>(s[t]) * s.next(t) <= 0) continue;
      const CircularSeq merged = first_reduction_step(s, t);
      CHECK(merged.size() + 1 == s.size());
      CHECK(merged.sum() == s.sum());
      CHECK(linear_count(merged, m) == linear_count(s, m));
      CHECK(circular_count(merged, m) == circular_count(s, m));
    }
    if (!s.all_zero()) {
      const CircularSeq dropped = second_reduction(s);
      CHECK(linear_count(dropped, m) == linear_count(s, m));
      CHECK(circular_count(dropped, m) == circular_count(s, m));
    }
  }
}
