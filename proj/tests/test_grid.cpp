#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixture_util.hpp"
#include "polyform/grid.hpp"

using namespace polyform;

TEST_CASE("grid: parse examples") {
  auto single = polyomino::parse("#", text_format::ascii);
  CHECK(single.n() == 1);
  CHECK(single.width() == 1);
  CHECK(single.height() == 1);

  auto comp = polyomino::parse("2 3 1", text_format::composition);
  CHECK(comp.n() == 6);
  auto cls = comp.classify();
  CHECK(cls.is_bar_graph);
  CHECK(comp.composition() == std::vector<std::uint64_t>{2, 3, 1});

  auto square = polyomino::parse("##\n##", text_format::ascii);
  CHECK(square.n() == 4);
  CHECK(square.width() == 2);
  CHECK(square.height() == 2);
}

TEST_CASE("grid: parse errors") {
  CHECK_THROWS_AS(polyomino::parse("", text_format::ascii), error);
  CHECK_THROWS_AS(polyomino::parse("#x#", text_format::ascii), error);
  CHECK_THROWS_AS(polyomino::parse("2 0 1", text_format::composition), error);
  CHECK_THROWS_AS(polyomino::parse("1 2\nbad", text_format::coords), error);
  try {
    polyomino::parse("1 2\n1 2\n", text_format::coords);
    FAIL("expected duplicate_cell");
  } catch (const error& e) {
    CHECK(e.kind() == errc::duplicate_cell);
  }
}

TEST_CASE("grid: neighbor oracle") {
  auto square = polyomino::parse("##\n##", text_format::ascii);
  CHECK(square.neighbor({0, 0}, direction::right) == cell{1, 0});
  CHECK_FALSE(square.neighbor({0, 0}, direction::left).has_value());

  auto comp = polyomino::parse("2 3 1", text_format::composition);
  CHECK(comp.neighbor({0, 1}, direction::right) == cell{1, 1});
  CHECK_THROWS_AS(comp.neighbor({0, 5}, direction::left), error);
}

TEST_CASE("grid: visibility oracle on the intro figure") {
  auto p = fixtures::load("figure_intro.ascii", text_format::ascii);
  REQUIRE(p.n() == 25);
  CHECK(p.visible(fixtures::fig1_a, fixtures::fig1_b));
  CHECK_FALSE(p.visible(fixtures::fig1_a, fixtures::fig1_c));
  CHECK_FALSE(p.visible(fixtures::fig1_a, fixtures::fig1_d));
  CHECK(p.visible(fixtures::fig1_a, fixtures::fig1_a));
  CHECK_FALSE(p.connected());
  CHECK_FALSE(p.classify().is_bar_graph);
}

TEST_CASE("grid: classify") {
  CHECK(polyomino::parse("2 3 1", text_format::composition).classify().is_bar_graph);
  CHECK(polyomino::parse("##\n##", text_format::ascii).classify().is_bar_graph);
  CHECK_FALSE(polyomino::parse("#.\n.#", text_format::ascii).classify().is_bar_graph);
  CHECK_FALSE(polyomino::parse("#\n.\n#", text_format::ascii).classify().is_bar_graph);
  CHECK(polyomino::parse(".#\n##", text_format::ascii).classify().is_bar_graph);
  auto cls = polyomino::parse("###\n###", text_format::ascii).classify();
  CHECK(cls.height == 2);
  CHECK(cls.width == 3);
}

TEST_CASE("grid: serialize/parse round-trips") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 350; ++t) {
    auto p = (t % 2 == 0) ? random_connected(rng, 1 + rng() % 60)
                          : random_box(rng, 1 + rng() % 12, 1 + rng() % 12, 0.4);
    for (auto f : {text_format::ascii, text_format::coords}) {
      auto q = polyomino::parse(p.serialize(f), f);
      REQUIRE(q.cells() == p.cells());
    }
  }
  for (int t = 0; t < 300; ++t) {
    auto bars = random_composition(rng, 1 + rng() % 80);
    auto p = polyomino::from_composition(bars);
    CHECK(p.classify().is_bar_graph);
    auto q = polyomino::parse(p.serialize(text_format::composition), text_format::composition);
    REQUIRE(q.cells() == p.cells());
  }
}

TEST_CASE("grid: oracle properties") {
  std::mt19937_64 rng(321);
  for (int t = 0; t < 60; ++t) {
    auto p = random_box(rng, 1 + rng() % 9, 1 + rng() % 9, 0.55);
    const auto& cs = p.cells();
    for (const auto& a : cs) {
      CHECK(p.visible(a, a));
      auto l = p.neighbor(a, direction::left);
      if (l) CHECK(p.neighbor(*l, direction::right) == a);
      auto u = p.neighbor(a, direction::up);
      if (u) CHECK(p.neighbor(*u, direction::down) == a);
      for (const auto& b : cs) CHECK(p.visible(a, b) == p.visible(b, a));
    }
  }
}

TEST_CASE("grid: staircase shape") {
  auto p = staircase(10);
  CHECK(p.n() == 10);
  CHECK(p.height() == 5);
  // c_{2i+1} finds c_{2i} on its top and c_{2i+2} on its right
  CHECK(p.neighbor({1, 0}, direction::up) == cell{1, 1});
  CHECK(p.neighbor({1, 0}, direction::left) == cell{0, 0});
}
