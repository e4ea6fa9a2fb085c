#include "doctest.h"

#include "atomkit/errors.hpp"
#include "atomkit/presheaf.hpp"
#include "fixtures.hpp"

using namespace atomkit;
using fx::inj;

namespace {
ObjectRef set(std::size_t n) { return finset::FinSet{n}; }
std::vector<std::pair<std::string, std::string>> summary(const Decomposition& d) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& c : d.components) out.emplace_back(c.atom.base.key(), group_name(c.atom));
  return out;
}
}  // namespace

TEST_CASE("support") {
  auto F = unordered_pairs(3);
  auto p = F.element_index(2, "{0,1}");
  CHECK(support(F, set(2), p).inclusion.dom() == set(2));
  auto s = support(F, set(2), F.element_index(2, "{0}"));
  CHECK(s.inclusion == Morphism(inj(1, 2, {0})));
  auto e = support(F, set(1), 0);
  CHECK(e.inclusion.dom() == set(1));
  // Supports are idempotent.
  for (std::size_t x = 0; x < F.objects().size(); ++x)
    for (std::size_t q = 0; q < F.elements(x).size(); ++q) {
      auto sx = support(F, F.objects()[x], q);
      auto again = support(F, sx.inclusion.dom(), sx.element);
      CHECK(site::is_iso(again.inclusion));
    }
  auto R = representable(set(0), {set(0), set(1), set(2)});
  CHECK(support(R, set(2), 0).inclusion.dom() == set(0));
}

TEST_CASE("stabilizer") {
  auto U = unordered_pairs(3);
  CHECK(stabilizer(U, set(2), U.element_index(2, "{0,1}")).order() == 2);
  auto O = ordered_pairs(3);
  CHECK(stabilizer(O, set(2), O.element_index(2, "(0,1)")).order() == 1);
  CHECK(stabilizer(O, set(1), O.element_index(1, "(0,0)")).order() == 1);
  CHECK_THROWS_AS(stabilizer(U, set(2), U.element_index(2, "{1}")), PreconditionError);
}

TEST_CASE("decompose") {
  auto d = decompose(unordered_pairs(3));
  CHECK(d.reconstruction_ok);
  CHECK(summary(d) == std::vector<std::pair<std::string, std::string>>{{"2", "Sym2"}, {"1", "triv"}});
  d = decompose(ordered_pairs(3));
  CHECK(d.reconstruction_ok);
  CHECK(summary(d) == std::vector<std::pair<std::string, std::string>>{{"2", "triv"}, {"1", "triv"}});
  d = decompose(representable(set(1), {set(0), set(1), set(2), set(3)}));
  CHECK(summary(d) == std::vector<std::pair<std::string, std::string>>{{"1", "triv"}});
}

TEST_CASE("fragment validation") {
  auto U = unordered_pairs(2);
  auto objects = U.objects();
  std::vector<std::vector<std::string>> elements{U.elements(0), U.elements(1), U.elements(2)};
  auto action = U.actions();
  action.erase(action.begin());
  CHECK_THROWS_AS(PresheafFragment(objects, elements, action), ValidationError);
  // Dropping the empty set loses the pullback of the two points of 2.
  CHECK_THROWS_AS(representable(set(1), {set(1), set(2)}), ClosureError);
  // One point over 1 and 2 but nothing over 0: the two points of 2 meet in
  // F(2) although their intersection is empty.
  std::map<Morphism, std::vector<std::size_t>> constant;
  std::vector<ObjectRef> objs{set(0), set(1), set(2)};
  for (const auto& a : objs)
    for (const auto& b : objs)
      for (const auto& f : site::hom_set(a, b))
        constant.emplace(f, a == set(0) ? std::vector<std::size_t>{} : std::vector<std::size_t>{0});
  CHECK_THROWS_AS(PresheafFragment(objs, {{}, {"*"}, {"*"}}, constant), ValidationError);
}

TEST_CASE("sheaf_check_quotient") {
  auto sym2 = make_atom(set(2), {inj(2, 2, {1, 0})});
  CHECK(sheaf_check_quotient(sym2, inj(1, 2, {0}), 3).passed());
  auto t3 = make_atom(fx::T3(), {fx::swap_T3()});
  auto v = sheaf_check_quotient(t3, fx::root_map(fx::T1(), fx::T3()), 2);
  CHECK(v.status == Status::fail);
  CHECK(v.witness["classes_over_cover"] == 0);
  CHECK(sheaf_check_quotient(make_atom(set(2), {}), site::identity(set(2)), 2).passed());
}

TEST_CASE("self_intersection_check") {
  CHECK(self_intersection_check(inj(1, 2, {0}), 3).passed());
  CHECK(self_intersection_check(site::identity(set(2)), 2).passed());
  auto v = self_intersection_check(fx::root_map(fx::T1(), fx::T3()), 3);
  CHECK(v.status == Status::fail);
  CHECK(v.witness["u"]["explicit_images"]["1"] == "0");
}

TEST_CASE("compute_K") {
  auto k = compute_K(inj(1, 2, {0}), 3);
  CHECK(k.K == set(1));
  CHECK(k.G.order() == 1);
  CHECK(k.chain.size() == 2);
  k = compute_K(fx::root_map(fx::T1(), fx::T3()), 3);
  CHECK(k.K == ObjectRef(fx::T3()));
  CHECK(k.G.order() == 2);
  k = compute_K(site::identity(set(2)), 2);
  CHECK(k.K == set(2));
  CHECK(k.G.order() == 1);
}

TEST_CASE("local_iso_check") {
  auto t3 = make_atom(fx::T3(), {fx::swap_T3()});
  auto t1 = make_atom(fx::T1(), {});
  auto m = make_atom_map(t3, t1, fx::root_map(fx::T1(), fx::T3()));
  CHECK(local_iso_check(m, 3).passed());
  auto triv2 = make_atom(set(2), {});
  auto sym2 = make_atom(set(2), {inj(2, 2, {1, 0})});
  CHECK(local_iso_check(atom_hom(triv2, sym2).at(0), 2).status == Status::fail);
  CHECK(local_iso_check(atom_identity(sym2), 2).passed());
}
