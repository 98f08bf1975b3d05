#include "fcrystal/circseq.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "fcrystal/error.hpp"

namespace fcrystal {

CircularSeq::CircularSeq(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InputError("circular sequence must be nonempty");
}

bool CircularSeq::all_zero() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e == 0; });
}

long long CircularSeq::sum() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0LL);
}

CircularSeq first_reduction_step(const CircularSeq& seq, std::size_t t) {
  const std::size_t s = seq.size();
  if (s < 2) throw InputError("first reduction needs at least two entries");
  if (t >= s) throw InputError("position out of range");
  const long long a = seq[t];
  const long long b = seq.next(t);
  if (a * b <= 0) throw InputError("entries at the merge position are not of the same strict sign");

  std::vector<int> out;
  out.reserve(s - 1);
  if (t + 1 < s) {
    auto e = seq.entries();
    out.assign(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(t));
    out.push_back(static_cast<int>(a + b));
    out.insert(out.end(), e.begin() + static_cast<std::ptrdiff_t>(t + 2), e.end());
  } else {
    out.push_back(static_cast<int>(a + b));
    auto e = seq.entries();
    out.insert(out.end(), e.begin() + 1, e.end() - 1);
  }
  return CircularSeq(std::move(out));
}

CircularSeq second_reduction(const CircularSeq& seq) {
  if (seq.all_zero()) throw InputError("second reduction is undefined for an all-zero sequence");
  std::vector<int> out;
  for (int e : seq.entries())
    if (e != 0) out.push_back(e);
  return CircularSeq(std::move(out));
}

NormalizedSeq normalize(const CircularSeq& seq, int m) {
  if (seq.all_zero()) return AllZero{seq.size()};
  PlusMinus pm;
  for (int e : seq.entries()) {
    if (e == 0) continue;
    long long copies = std::llabs(static_cast<long long>(e));
    if (m != kUnclamped) copies = std::min<long long>(copies, static_cast<long long>(m) + 1);
    pm.entries.insert(pm.entries.end(), static_cast<std::size_t>(copies),
                      static_cast<std::int8_t>(e > 0 ? 1 : -1));
  }
  return pm;
}

std::uint64_t SegmentCensus::total_up_to(int m) const {
  std::uint64_t total = 0;
  const std::size_t upto = std::min<std::size_t>(counts.size(), static_cast<std::size_t>(std::max(m, 0)));
  for (std::size_t k = 0; k < upto; ++k) total += counts[k];
  return total;
}

int SegmentCensus::max_level() const {
  for (std::size_t k = counts.size(); k > 0; --k)
    if (counts[k - 1] > 0) return static_cast<int>(k);
  return 0;
}

namespace {

// Walks every -1 start to its first return to zero; `cap < 0` keeps all levels.
SegmentCensus census_impl(const PlusMinus& seq, int cap) {
  const std::size_t s = seq.entries.size();
  std::vector<std::uint64_t> counts;
  for (std::size_t a = 0; a < s; ++a) {
    if (seq.entries[a] != -1) continue;
    int running = 0;
    int lowest = 0;
    for (std::size_t step = 0; step < s; ++step) {
      running += seq.entries[(a + step) % s];
      if (running == 0) {
        const int level = -lowest;
        if (cap < 0 || level <= cap) {
          if (counts.size() < static_cast<std::size_t>(level)) counts.resize(static_cast<std::size_t>(level), 0);
          ++counts[static_cast<std::size_t>(level - 1)];
        }
        break;
      }
      lowest = std::min(lowest, running);
    }
  }
  SegmentCensus census;
  census.level_cap = cap < 0 ? static_cast<int>(counts.size()) : cap;
  if (cap >= 0) counts.resize(static_cast<std::size_t>(cap), 0);
  census.counts = std::move(counts);
  return census;
}

}  // namespace

SegmentCensus segment_census(const PlusMinus& seq, int m) {
  return census_impl(seq, std::max(m, 0));
}

SegmentCensus full_segment_census(const PlusMinus& seq) { return census_impl(seq, -1); }

std::optional<int> circular_level(const NormalizedSeq& seq) {
  if (std::holds_alternative<AllZero>(seq)) return 0;
  const auto& pm = std::get<PlusMinus>(seq);
  int prefix = 0;
  int hi = 0;
  int lo = 0;
  for (std::int8_t e : pm.entries) {
    prefix += e;
    hi = std::max(hi, prefix);
    lo = std::min(lo, prefix);
  }
  if (prefix != 0) return std::nullopt;
  return hi - lo;
}

std::uint64_t circular_count(const CircularSeq& seq, int m) {
  const auto level = circular_level(normalize(seq, m));
  if (!level || *level >= m) return 0;
  return static_cast<std::uint64_t>(m - *level);
}

std::uint64_t linear_count(const CircularSeq& seq, int m) {
  const NormalizedSeq n = normalize(seq, m);
  if (std::holds_alternative<AllZero>(n)) return 0;
  return segment_census(std::get<PlusMinus>(n), m).total_up_to(m);
}

}  // namespace fcrystal
