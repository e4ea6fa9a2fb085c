#include "doctest.h"

#include "atomkit/errors.hpp"
#include "atomkit/finset.hpp"
#include "fixtures.hpp"

using namespace atomkit;
using namespace atomkit::finset;
using fx::inj;

TEST_CASE("make_injection validates entries") {
  CHECK_NOTHROW(make_injection(1, 2, {0}));
  CHECK_NOTHROW(make_injection(0, 3, {}));
  CHECK_THROWS_AS(make_injection(2, 2, {1, 1}), ValidationError);
  CHECK_THROWS_AS(make_injection(1, 2, {2}), ValidationError);
  CHECK_THROWS_AS(make_injection(2, 3, {0}), ValidationError);
}

TEST_CASE("complement_positions") {
  CHECK(complement_positions(inj(1, 2, {0})) == std::vector<std::size_t>{1});
  CHECK(complement_positions(inj(2, 2, {1, 0})).empty());
  CHECK(complement_positions(inj(1, 3, {2})) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("composition is diagrammatic") {
  CHECK(compose(inj(1, 2, {0}), inj(2, 3, {0, 1})) == inj(1, 3, {0}));
  CHECK(compose(inj(2, 2, {1, 0}), inj(2, 2, {1, 0})) == Injection::identity(2));
  CHECK(compose(inj(1, 2, {1}), inj(2, 3, {2, 0})) == inj(1, 3, {0}));
  CHECK_THROWS_AS(compose(inj(1, 2, {1}), inj(3, 3, {0, 1, 2})), CompositionError);
}

TEST_CASE("hom_set sizes are falling factorials") {
  for (std::size_t m = 0; m <= 5; ++m) {
    for (std::size_t n = 0; n <= 5; ++n) {
      std::size_t expected = m <= n ? 1 : 0;
      for (std::size_t i = 0; i < m && m <= n; ++i) expected *= n - i;
      auto hs = hom_set(FinSet{m}, FinSet{n});
      CHECK(hs.size() == expected);
      CHECK(std::is_sorted(hs.begin(), hs.end()));
      CHECK(std::adjacent_find(hs.begin(), hs.end()) == hs.end());
    }
  }
}

TEST_CASE("pullback intersects images") {
  auto pb = pullback(inj(1, 2, {0}), inj(1, 2, {1}));
  CHECK(pb.apex.size == 0);
  pb = pullback(inj(2, 3, {0, 1}), inj(2, 3, {1, 2}));
  CHECK(pb.apex.size == 1);
  CHECK(pb.to_first == inj(1, 2, {1}));
  CHECK(pb.to_second == inj(1, 2, {0}));
  pb = pullback(Injection::identity(3), Injection::identity(3));
  CHECK(pb.to_first == Injection::identity(3));
}

TEST_CASE("amalgamate is the pushout") {
  auto po = amalgamate(inj(1, 2, {0}), inj(1, 2, {1}));
  CHECK(po.apex.size == 3);
  CHECK(compose(inj(1, 2, {0}), po.from_first) == compose(inj(1, 2, {1}), po.from_second));
  auto id = amalgamate(Injection::identity(2), Injection::identity(2));
  CHECK(id.apex.size == 2);
  CHECK(id.from_first == Injection::identity(2));
}
