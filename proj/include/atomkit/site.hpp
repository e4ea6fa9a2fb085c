#pragma once

// Base-category abstraction shared by every module. Two backends exist:
// finite sets with injections, and finitary labeled trees with embeddings.
// All arrows are monomorphisms. Composition is diagrammatic: compose(f, g)
// is "f, then g".

#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "atomkit/finset.hpp"
#include "atomkit/itree.hpp"
#include "atomkit/rank.hpp"

namespace atomkit {

enum class Backend { finsetinj, itree };

std::string to_string(Backend b);
Backend backend_from_string(const std::string& s);

class ObjectRef {
 public:
  ObjectRef(finset::FinSet s) : v_(s) {}
  ObjectRef(itree::Tree t) : v_(std::move(t)) {}

  Backend backend() const { return v_.index() == 0 ? Backend::finsetinj : Backend::itree; }
  const finset::FinSet& finset() const;
  const itree::Tree& tree() const;

  /// Short printable key, unique per object.
  std::string key() const;

  bool operator==(const ObjectRef&) const = default;
  auto operator<=>(const ObjectRef& o) const = default;

 private:
  std::variant<finset::FinSet, itree::Tree> v_;
};

class Morphism {
 public:
  Morphism(finset::Injection f) : v_(std::move(f)) {}
  Morphism(itree::TreeEmbedding f) : v_(std::move(f)) {}

  Backend backend() const { return v_.index() == 0 ? Backend::finsetinj : Backend::itree; }
  ObjectRef dom() const;
  ObjectRef cod() const;
  const finset::Injection& injection() const;
  const itree::TreeEmbedding& embedding() const;

  std::string key() const;

  bool operator==(const Morphism&) const = default;
  auto operator<=>(const Morphism&) const = default;

 private:
  std::variant<finset::Injection, itree::TreeEmbedding> v_;
};

struct AutGroup {
  ObjectRef object;
  std::vector<Morphism> generators;
  std::vector<Morphism> elements;  // sorted, duplicate-free, contains identity

  std::size_t order() const { return elements.size(); }
  bool contains(const Morphism& m) const;
};

struct Span {
  ObjectRef apex;
  Morphism left;   // apex -> A
  Morphism right;  // apex -> B
};

struct Cospan {
  Morphism left;   // A -> Z
  Morphism right;  // B -> Z
};

struct PullbackSquare {
  Cospan cospan;
  ObjectRef apex;
  Morphism to_left;   // apex -> A
  Morphism to_right;  // apex -> B
};

struct Cocone {
  ObjectRef apex;
  Morphism from_left;   // A -> C
  Morphism from_right;  // B -> C
};

namespace site {

Morphism identity(const ObjectRef& a);
/// f then g. Throws CompositionError or BackendError.
Morphism compose(const Morphism& f, const Morphism& g);
bool is_iso(const Morphism& f);
Morphism inverse(const Morphism& f);

/// All arrows a -> b in canonical order.
std::vector<Morphism> hom_set(const ObjectRef& a, const ObjectRef& b);
PullbackSquare pullback(const Morphism& f, const Morphism& g);
/// Cocone over the span apex -> A, apex -> B.
Cocone amalgamate(const Span& span);
AutGroup aut_group(const ObjectRef& a);
RankValue rank(const ObjectRef& a);
/// Smallest subgroup of Aut(object) containing gens. Throws ValidationError
/// when a generator is not an automorphism of object.
AutGroup subgroup_generated(const ObjectRef& object, const std::vector<Morphism>& gens);

/// Some h with compose(h, g) == f, if f factors through g.
std::optional<Morphism> factor_through(const Morphism& f, const Morphism& g);
/// Same subobject of the common codomain.
bool same_subobject(const Morphism& f, const Morphism& g);

/// Checks the universal property of the square against every object in
/// test_objects by hom-set enumeration.
bool verify_pullback(const PullbackSquare& sq, const std::vector<ObjectRef>& test_objects);

/// Bounded family of objects used by the checkers.
struct ObjectBound {
  std::size_t max_size = 0;   // finsetinj
  std::size_t max_tails = 0;  // itree
  std::size_t max_nodes = 1;  // itree explicit nodes
  std::vector<std::string> labels;
};

std::vector<ObjectRef> objects_within(Backend b, const ObjectBound& bound);

/// Bound derived from a search depth and the objects involved in a check:
/// finite sets up to depth + largest involved size; trees with at most depth
/// tails and 2*depth+3 explicit nodes over the involved labels plus one fresh
/// label.
ObjectBound bound_for_depth(Backend b, std::size_t depth, const std::vector<ObjectRef>& involved);

void require_same_backend(const ObjectRef& a, const ObjectRef& b);

}  // namespace site
}  // namespace atomkit
