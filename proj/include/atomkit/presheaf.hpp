#pragma once

// Finite fragments of pullback-preserving presheaves C -> Set, and bounded
// checkers for sheaf conditions on quotients of representables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atomkit/atoms.hpp"
#include "atomkit/site.hpp"
#include "atomkit/verdict.hpp"

namespace atomkit {

/// A presheaf restricted to finitely many objects. Every arrow between two
/// listed objects must carry an action.
class PresheafFragment {
 public:
  /// Validates injectivity, functoriality and preservation of the pullbacks
  /// of all cospans among listed arrows. Throws ValidationError, or
  /// ClosureError naming a pullback apex that is not listed.
  PresheafFragment(std::vector<ObjectRef> objects, std::vector<std::vector<std::string>> elements,
                   std::map<Morphism, std::vector<std::size_t>> action);

  Backend backend() const { return objects_.front().backend(); }
  const std::vector<ObjectRef>& objects() const { return objects_; }
  std::optional<std::size_t> index_of(const ObjectRef& o) const;
  /// Throws ClosureError when o is not listed.
  std::size_t require_index(const ObjectRef& o) const;
  const std::vector<std::string>& elements(std::size_t obj) const { return elements_.at(obj); }
  /// Throws ValidationError for an unknown name.
  std::size_t element_index(std::size_t obj, const std::string& name) const;
  const std::vector<std::size_t>& action(const Morphism& f) const;
  std::size_t act(const Morphism& f, std::size_t element) const { return action(f).at(element); }
  const std::map<Morphism, std::vector<std::size_t>>& actions() const { return action_; }

 private:
  std::vector<ObjectRef> objects_;
  std::vector<std::vector<std::string>> elements_;
  std::map<Morphism, std::vector<std::size_t>> action_;
};

// Built-in fragments. Objects are listed in the order given.

/// F(n) = unordered pairs {a, b} of elements of n, a = b allowed; finite sets 0..max_size.
PresheafFragment unordered_pairs(std::size_t max_size);
/// F(n) = n x n over finite sets 0..max_size.
PresheafFragment ordered_pairs(std::size_t max_size);
/// Hom(n, -)/G on the given objects.
PresheafFragment quotient_presheaf(const FormalAtom& a, const std::vector<ObjectRef>& objects);
PresheafFragment representable(const ObjectRef& base, const std::vector<ObjectRef>& objects);

/// Class of f : n -> X in Hom(n, X)/G, as its least member.
Morphism class_rep(const Morphism& f, const AutGroup& g);
/// Least members of the classes of Hom(n, X)/G, sorted.
std::vector<Morphism> quotient_classes(const FormalAtom& a, const ObjectRef& x);

struct Support {
  Morphism inclusion;   // Y -> X
  std::size_t element;  // index of the preimage in F(Y)
};

/// Least subobject of X through which element p of F(X) factors, among the
/// listed objects. Throws ClosureError when the candidates have no least
/// member.
Support support(const PresheafFragment& F, const ObjectRef& x, std::size_t p);

/// Automorphisms of X fixing p. Throws PreconditionError unless the support
/// of p is all of X.
AutGroup stabilizer(const PresheafFragment& F, const ObjectRef& x, std::size_t p);

struct Component {
  FormalAtom atom;
  std::size_t generator;  // support-full element of F(atom.base) generating the component
  /// Elements of the fragment assigned to this component, as (object, element).
  std::vector<std::pair<std::size_t, std::size_t>> members;
};

struct Decomposition {
  std::vector<Component> components;  // largest base first
  /// For every object Y, the sizes of Hom(n, Y)/G summed over components
  /// equal |F(Y)|, and every element is assigned exactly once.
  bool reconstruction_ok = false;
};

Decomposition decompose(const PresheafFragment& F);

/// Sheaf condition of Hom(n, -)/G at the cover q : S -> T, with parallel
/// pairs T => X searched over the objects bounded by depth.
CheckVerdict sheaf_check_quotient(const FormalAtom& a, const Morphism& q, std::size_t depth);

/// Searches for u : Y -> B that passes every pair alpha, beta : B => X
/// equalized by f (some v has u beta = v alpha) without factoring through f.
CheckVerdict self_intersection_check(const Morphism& f, std::size_t depth);

struct KResult {
  ObjectRef K;
  Morphism j;  // K -> B
  Morphism i;  // A -> K, with i j = f
  AutGroup G;  // automorphisms s of K with i s = i
  std::vector<Morphism> chain;  // j_0, j_1, ...
  CheckVerdict verdict;
};

/// Shrinks B by pullbacks along violating pairs until none is found within
/// the bound.
KResult compute_K(const Morphism& f, std::size_t depth);

/// Injectivity and local surjectivity of the quotient-presheaf map induced
/// by m, on the objects bounded by depth.
CheckVerdict local_iso_check(const AtomMap& m, std::size_t depth);

}  // namespace atomkit
