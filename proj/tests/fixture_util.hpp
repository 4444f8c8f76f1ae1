#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "polyform/grid.hpp"

namespace fixtures {

inline std::string read_file(const std::string& name) {
  std::ifstream in(std::string(POLYFORM_FIXTURE_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline polyform::polyomino load(const std::string& name, polyform::text_format f) {
  return polyform::polyomino::parse(read_file(name), f);
}

// Figure-intro polyomino (n = 25): the named cells of the visibility caption.
inline constexpr polyform::cell fig1_a{0, 4};
inline constexpr polyform::cell fig1_b{6, 4};
inline constexpr polyform::cell fig1_c{0, 1};
inline constexpr polyform::cell fig1_d{6, 1};

// Slicing figure (n = 40, f = 4, type 2): cells from the walkthrough.
inline constexpr polyform::cell fig4_a{5, 2};
inline constexpr polyform::cell fig4_b{3, 7};
inline constexpr polyform::cell fig4_d{5, 5};
inline constexpr polyform::cell fig4_e{5, 6};
inline constexpr polyform::cell fig4_p{3, 9};

}  // namespace fixtures
