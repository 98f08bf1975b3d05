#include "fcrystal/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "fcrystal/error.hpp"

namespace fcrystal {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int r = size();
  if (r < 1) throw InputError("permutation must act on at least one point");
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    const int v = images_[i];
    if (v < 1 || v > r)
      throw InputError("image " + std::to_string(v) + " of point " + std::to_string(i + 1) +
                       " is outside [1, " + std::to_string(r) + "]");
    if (seen[static_cast<std::size_t>(v - 1)])
      throw InputError("duplicate image " + std::to_string(v));
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Permutation Permutation::identity(int r) {
  std::vector<int> images(static_cast<std::size_t>(std::max(r, 0)));
  std::iota(images.begin(), images.end(), 1);
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (int i = 1; i <= size(); ++i)
    if ((*this)(i) != i) return false;
  return true;
}

bool Permutation::is_full_cycle() const {
  int len = 0;
  int x = 1;
  do {
    x = (*this)(x);
    ++len;
  } while (x != 1);
  return len == size();
}

std::string Permutation::to_cycle_string() const {
  std::string out;
  for (const Cycle& c : cycle_decomposition(*this)) {
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  return out;
}

std::string Permutation::to_one_line() const {
  std::string out;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(images_[i]);
  }
  return out;
}

namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_separators() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == ','))
      ++pos_;
  }
  void skip_spaces() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  // Reads an optionally signed decimal integer at the cursor.
  int read_int() {
    const std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw InputError("expected an integer", start);
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1'000'000'000) throw InputError("integer too large", start);
      ++pos_;
    }
    return static_cast<int>(negative ? -value : value);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void check_point(int v, int r, std::size_t at) {
  if (v < 1 || v > r)
    throw InputError("point " + std::to_string(v) + " is outside [1, " + std::to_string(r) + "]",
                     at);
}

Permutation parse_cycles(Scanner& sc, int r) {
  std::vector<int> images(static_cast<std::size_t>(r));
  std::iota(images.begin(), images.end(), 1);
  std::vector<bool> used(static_cast<std::size_t>(r), false);

  sc.skip_spaces();
  while (!sc.done()) {
    if (sc.peek() != '(') throw InputError("expected '('", sc.pos());
    sc.advance();
    std::vector<int> cycle;
    sc.skip_separators();
    while (!sc.done() && sc.peek() != ')') {
      const std::size_t at = sc.pos();
      const int v = sc.read_int();
      check_point(v, r, at);
      if (used[static_cast<std::size_t>(v - 1)])
        throw InputError("point " + std::to_string(v) + " appears twice", at);
      used[static_cast<std::size_t>(v - 1)] = true;
      cycle.push_back(v);
      sc.skip_separators();
    }
    if (sc.done()) throw InputError("unterminated cycle, expected ')'", sc.pos());
    sc.advance();
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()];
    sc.skip_spaces();
  }
  return Permutation(std::move(images));
}

Permutation parse_one_line(Scanner& sc, int r) {
  std::vector<int> images;
  std::vector<bool> used(static_cast<std::size_t>(r), false);
  sc.skip_separators();
  while (!sc.done()) {
    const std::size_t at = sc.pos();
    const int v = sc.read_int();
    if (!sc.done() && !std::isspace(static_cast<unsigned char>(sc.peek())) && sc.peek() != ',')
      throw InputError("unexpected character '" + std::string(1, sc.peek()) + "'", sc.pos());
    check_point(v, r, at);
    if (used[static_cast<std::size_t>(v - 1)])
      throw InputError("duplicate image " + std::to_string(v), at);
    used[static_cast<std::size_t>(v - 1)] = true;
    if (static_cast<int>(images.size()) == r)
      throw InputError("more than " + std::to_string(r) + " images", at);
    images.push_back(v);
    sc.skip_separators();
  }
  if (static_cast<int>(images.size()) != r)
    throw InputError("expected " + std::to_string(r) + " images, got " +
                         std::to_string(images.size()),
                     sc.pos());
  return Permutation(std::move(images));
}

}  // namespace

Permutation parse_permutation(std::string_view text, int r) {
  if (r < 1) throw InputError("rank must be positive");
  Scanner sc(text);
  sc.skip_spaces();
  if (sc.done()) return Permutation::identity(r);
  if (sc.peek() == '(') return parse_cycles(sc, r);
  return parse_one_line(sc, r);
}

std::vector<Cycle> cycle_decomposition(const Permutation& p) {
  const int r = p.size();
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  std::vector<Cycle> cycles;
  for (int start = 1; start <= r; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    Cycle c;
    for (int x = start; !seen[static_cast<std::size_t>(x - 1)]; x = p(x)) {
      seen[static_cast<std::size_t>(x - 1)] = true;
      c.push_back(x);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

std::vector<Orbit> product_orbits(const Permutation& p) {
  const int r = p.size();
  const auto idx = [r](int i, int j) { return static_cast<std::size_t>((i - 1) * r + (j - 1)); };
  std::vector<bool> seen(static_cast<std::size_t>(r * r), false);
  std::vector<Orbit> orbits;
  // Row-major scan visits each orbit first at its lexicographic minimum.
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= r; ++j) {
      if (seen[idx(i, j)]) continue;
      Orbit o;
      for (Point q{i, j}; !seen[idx(q.first, q.second)]; q = {p(q.first), p(q.second)}) {
        seen[idx(q.first, q.second)] = true;
        o.points.push_back(q);
      }
      orbits.push_back(std::move(o));
    }
  }
  return orbits;
}

}  // namespace fcrystal
