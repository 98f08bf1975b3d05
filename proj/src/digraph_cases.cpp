// Region-by-region transcription of the eleven pair digraphs. Coordinates are
// (x, y) = (eps_t, eps_{t+1}); all index ranges are inclusive.

#include <stdexcept>

#include "fcrystal/digraph.hpp"
#include "fcrystal/error.hpp"

namespace fcrystal {

namespace {

void zeros(std::vector<int>& out, long long first, long long last) {
  for (long long l = first; l <= last; ++l) out.push_back(static_cast<int>(l));
}

// Edges x_{src_first + k, t} -> x_{dst_first + k, t+1} for k in [0, count).
void ladder(PairEdges& pe, long long src_first, long long dst_first, long long count, int weight) {
  for (long long k = 0; k < count; ++k)
    pe.edges.push_back({static_cast<int>(src_first + k), static_cast<int>(dst_first + k), weight});
}

}  // namespace

int pair_case(int eps_t, int eps_next, int m) {
  const long long x = eps_t;
  const long long y = eps_next;
  const long long M = m;
  if (0 < x && x == -y && x < M) return 1;
  if (x <= 0 && 0 <= y) return 2;
  if (0 <= x && x < -y && -y < M) return 3;
  if (0 <= x && x < M && M <= -y) return 4;
  if (0 <= -y && -y < x && x < M) return 5;
  if (0 <= -y && -y < M && M <= x) return 6;
  if (x >= M && y <= -M) return 7;
  if (x < 0 && 0 < -y && -y < M) return 8;
  if (x < 0 && 0 < M && M <= -y) return 9;
  if (0 < x && x < M && y > 0) return 10;
  if (x >= M && y > 0) return 11;
  throw std::logic_error("pair (" + std::to_string(x) + ", " + std::to_string(y) +
                         ") matched no region");
}

PairEdges pair_edges_case_table(int eps_t, int eps_next, int m) {
  if (m < 1) throw InputError("level m must be at least 1");
  const long long x = eps_t;
  const long long y = eps_next;
  const long long M = m;
  PairEdges pe;
  switch (pair_case(eps_t, eps_next, m)) {
    case 1:  // x_{0,t}^p = x_{0,t+1}, ..., x_{m-x-1,t}^p = x_{m-x-1,t+1}
      ladder(pe, 0, 0, M - x, 0);
      break;
    case 2:  // x_{i,t}^p = x_{i,t+1} for every digit
      ladder(pe, 0, 0, M, 0);
      break;
    case 3:  // x_0..x_{-y-x-1} = 0 on the left; x_{-y-x} -> x_0, ..., x_{m-x-1} -> x_{m+y-1}
      zeros(pe.left_zeros, 0, -y - x - 1);
      ladder(pe, -y - x, 0, M + y, static_cast<int>(x + y));
      break;
    case 4:  // x_0..x_{m-x-1} = 0 on the left
      zeros(pe.left_zeros, 0, M - x - 1);
      break;
    case 5:  // x_0..x_{x+y-1} = 0 on the right; x_0 -> x_{x+y}, ..., x_{m-x-1} -> x_{m+y-1}
      zeros(pe.right_zeros, 0, x + y - 1);
      ladder(pe, 0, x + y, M - x, static_cast<int>(x + y));
      break;
    case 6:  // x_0..x_{m+y-1} = 0 on the right
      zeros(pe.right_zeros, 0, M + y - 1);
      break;
    case 7:  // always holds
      break;
    case 8:  // x_0..x_{-y-1} = 0 on the left; x_{-y} -> x_0, ..., x_{m-1} -> x_{m+y-1}
      zeros(pe.left_zeros, 0, -y - 1);
      ladder(pe, -y, 0, M + y, static_cast<int>(y));
      break;
    case 9:  // every left digit is zero
      zeros(pe.left_zeros, 0, M - 1);
      break;
    case 10:  // x_0..x_{x-1} = 0 on the right; x_0 -> x_x, ..., x_{m-x-1} -> x_{m-1}
      zeros(pe.right_zeros, 0, x - 1);
      ladder(pe, 0, x, M - x, static_cast<int>(x));
      break;
    case 11:  // every right digit is zero
      zeros(pe.right_zeros, 0, M - 1);
      break;
  }
  return pe;
}

}  // namespace fcrystal
