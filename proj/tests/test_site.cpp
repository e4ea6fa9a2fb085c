#include "doctest.h"

#include "atomkit/errors.hpp"
#include "atomkit/site.hpp"
#include "fixtures.hpp"

using namespace atomkit;
using fx::inj;

namespace {

std::vector<ObjectRef> small_trees() {
  return site::objects_within(Backend::itree, site::ObjectBound{0, 2, 5, {"i", "j"}});
}

std::vector<ObjectRef> small_sets(std::size_t n) {
  return site::objects_within(Backend::finsetinj, site::ObjectBound{n, 0, 1, {}});
}

}  // namespace

TEST_CASE("backend parsing") {
  CHECK(backend_from_string("itree") == Backend::itree);
  CHECK_THROWS_AS(backend_from_string("sets"), ValidationError);
}

TEST_CASE("mixed backends are rejected") {
  ObjectRef two = finset::FinSet{2};
  ObjectRef t = fx::T3();
  CHECK_THROWS_AS(site::hom_set(two, t), BackendError);
  CHECK_THROWS_AS(site::compose(site::identity(two), site::identity(t)), BackendError);
}

TEST_CASE("aut groups") {
  CHECK(site::aut_group(finset::FinSet{3}).order() == 6);
  CHECK(site::aut_group(finset::FinSet{0}).order() == 1);
  CHECK(site::aut_group(fx::T3()).order() == 2);
  CHECK(site::aut_group(fx::tail("i")).order() == 1);
  std::size_t fact = 1;
  for (std::size_t n = 0; n <= 5; ++n) {
    if (n) fact *= n;
    CHECK(site::aut_group(finset::FinSet{n}).order() == fact);
  }
}

TEST_CASE("subgroup_generated") {
  ObjectRef two = finset::FinSet{2};
  CHECK(site::subgroup_generated(two, {}).order() == 1);
  CHECK(site::subgroup_generated(two, {inj(2, 2, {1, 0})}).order() == 2);
  ObjectRef three = finset::FinSet{3};
  auto g = site::subgroup_generated(three, {inj(3, 3, {1, 2, 0})});
  CHECK(g.order() == 3);
  CHECK(site::subgroup_generated(three, g.elements).elements == g.elements);
  CHECK_THROWS_AS(site::subgroup_generated(two, {inj(1, 2, {0})}), ValidationError);
}

TEST_CASE("rank examples") {
  CHECK(site::rank(finset::FinSet{5}) == RankValue{{5}});
  CHECK(site::rank(fx::T3()) == RankValue{{0, 3}});
  CHECK(site::rank(fx::tail("i")) == RankValue{{1, 0}});
}

TEST_CASE("category laws on small objects") {
  for (auto objs : {small_sets(3), small_trees()}) {
    if (objs.size() > 8) objs.erase(objs.begin() + 8, objs.end());
    for (const auto& a : objs)
      for (const auto& b : objs)
        for (const auto& f : site::hom_set(a, b)) {
          CHECK(site::compose(site::identity(a), f) == f);
          CHECK(site::compose(f, site::identity(b)) == f);
          for (const auto& c : objs)
            for (const auto& g : site::hom_set(b, c)) {
              auto fg = site::compose(f, g);
              auto hs = site::hom_set(a, c);
              CHECK(std::binary_search(hs.begin(), hs.end(), fg));
            }
        }
  }
}

TEST_CASE("hom_set invertible part equals aut_group") {
  for (const auto& a : small_trees()) {
    std::vector<Morphism> inv;
    for (const auto& m : site::hom_set(a, a))
      if (site::is_iso(m)) inv.push_back(m);
    CHECK(inv == site::aut_group(a).elements);
  }
}

TEST_CASE("pullbacks satisfy the universal property") {
  for (const auto& objs : {small_sets(3), small_trees()}) {
    std::vector<ObjectRef> test_objs(objs.begin(), objs.begin() + std::min<std::size_t>(objs.size(), 6));
    for (const auto& z : objs) {
      std::vector<Morphism> into;
      for (const auto& a : objs)
        for (const auto& f : site::hom_set(a, z)) into.push_back(f);
      for (const auto& f : into)
        for (const auto& g : into) {
          auto sq = site::pullback(f, g);
          CHECK(site::verify_pullback(sq, test_objs));
        }
    }
  }
}

TEST_CASE("cocones commute and proper subobjects have smaller rank") {
  for (const auto& objs : {small_sets(3), small_trees()}) {
    for (const auto& x : objs)
      for (const auto& a : objs)
        for (const auto& b : objs)
          for (const auto& f : site::hom_set(x, a))
            for (const auto& g : site::hom_set(x, b)) {
              auto c = site::amalgamate(Span{x, f, g});
              CHECK(site::compose(f, c.from_left) == site::compose(g, c.from_right));
            }
    for (const auto& a : objs)
      for (const auto& b : objs)
        if (!site::hom_set(b, a).empty() && !(a == b)) CHECK(site::rank(b) < site::rank(a));
  }
}
