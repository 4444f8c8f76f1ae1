#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polyform {

enum class errc {
  index_out_of_range,
  malformed_degrees,
  invalid_node,
  invalid_level,
  invalid_index,
  parse_error,
  duplicate_cell,
  invalid_cell,
  disconnected,
  invalid_thickness,
  invalid_k,
  empty_composition,
  zero_bar,
  bad_container,
};

/// Library-wide exception carrying a machine-checkable error kind.
class error : public std::runtime_error {
 public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

 private:
  errc kind_;
};

[[noreturn]] inline void raise(errc kind, const std::string& what) { throw error(kind, what); }

enum class direction : std::uint8_t { left = 0, right = 1, up = 2, down = 3 };

inline const char* to_string(direction d) {
  switch (d) {
    case direction::left: return "left";
    case direction::right: return "right";
    case direction::up: return "up";
    case direction::down: return "down";
  }
  return "?";
}

}  // namespace polyform
