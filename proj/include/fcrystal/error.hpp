#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcrystal {

/// Malformed or inconsistent user input. `position` is a 0-based character
/// offset into the offending text when one is meaningful, npos otherwise.
class InputError : public std::invalid_argument {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit InputError(const std::string& what, std::size_t position = npos)
      : std::invalid_argument(position == npos
                                  ? what
                                  : what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A computation would exceed a configured guard rail.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fcrystal
