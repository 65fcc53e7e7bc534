#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "cpdigraph/multidigraph.hpp"

using namespace cpdigraph;

TEST_CASE("from_arcs sorts, merges and drops zeros") {
  const auto g = MultiDigraph::from_arcs(3, {{2, 0, 1}, {0, 1, 2}, {0, 1, 3}, {1, 1, 1}, {1, 2, 0}});
  CHECK(g.n() == 3);
  REQUIRE(g.distinct_pairs() == 3);
  CHECK(g.arcs()[0] == Arc{0, 1, 5});
  CHECK(g.arcs()[1] == Arc{1, 1, 1});
  CHECK(g.arcs()[2] == Arc{2, 0, 1});
  CHECK(g.total_arcs() == 7);
  CHECK(g.total_loops() == 1);
  CHECK(g.multiplicity(0, 1) == 5);
  CHECK(g.multiplicity(1, 0) == 0);
  CHECK(g.multiplicity(1, 2) == 0);
  CHECK(g.out_arcs(0).size() == 1);
  CHECK(g.out_arcs(1).size() == 1);
  CHECK(g.out_arcs(2).front().dst == 0);
}

TEST_CASE("from_pairs accumulates repeats") {
  const auto g = MultiDigraph::from_pairs(2, {{0, 1}, {1, 0}, {0, 1}, {0, 0}});
  CHECK(g.multiplicity(0, 1) == 2);
  CHECK(g.multiplicity(1, 0) == 1);
  CHECK(g.total_loops() == 1);
  CHECK(g == MultiDigraph::from_arcs(2, {{0, 0, 1}, {0, 1, 2}, {1, 0, 1}}));
}

TEST_CASE("empty and range errors") {
  const auto g = MultiDigraph::from_arcs(5, {});
  CHECK(g.total_arcs() == 0);
  CHECK(g.out_arcs(4).empty());
  CHECK_THROWS_AS(MultiDigraph::from_arcs(2, {{0, 2, 1}}), std::out_of_range);
  CHECK_THROWS_AS(MultiDigraph::from_pairs(2, {{3, 0}}), std::out_of_range);
  CHECK_THROWS_AS(g.out_arcs(5), std::out_of_range);
  CHECK_THROWS_AS(g.multiplicity(0, 5), std::out_of_range);
}
