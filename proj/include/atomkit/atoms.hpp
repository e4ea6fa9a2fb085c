#pragma once

// Formal atoms n/G and the maps between them.
//
// The atom (n, G) stands for the quotient presheaf Hom(n, -)/G, where G acts
// by precomposition. A map (n, G) -> (m, H) is represented by a base arrow
// r : m -> n (note the direction), read as [f] |-> [r f].

#include <string>
#include <vector>

#include "atomkit/site.hpp"
#include "atomkit/verdict.hpp"

namespace atomkit {

struct FormalAtom {
  ObjectRef base;
  AutGroup group;

  bool operator==(const FormalAtom& o) const { return base == o.base && group.elements == o.group.elements; }
};

/// Which compatibility condition and which equivalence define atom maps
/// (n, G) -> (m, H) represented by r : m -> n.
///
/// derived: for every s in G some h in H has h r = r s; r ~ h r for h in H.
///          This is what the natural transformations between the quotient
///          presheaves are.
/// paper:   for every h in H some s in G has h r = r s; r ~ r s for s in G.
enum class QuantifierRule { derived, paper };

std::string to_string(QuantifierRule r);
QuantifierRule quantifier_rule_from_string(const std::string& s);

struct AtomMap {
  FormalAtom source;
  FormalAtom target;
  Morphism rep;  // target.base -> source.base, least in its class

  bool operator==(const AtomMap& o) const {
    return source == o.source && target == o.target && rep == o.rep;
  }
};

/// Throws ValidationError when a generator is not an automorphism of base.
FormalAtom make_atom(const ObjectRef& base, const std::vector<Morphism>& gens);

/// Short name of the group: "triv", "Sym<n>" for the full group of a finite
/// set, "Aut" for the full group of a tree, otherwise "order<k>".
std::string group_name(const FormalAtom& a);

bool is_compatible(const Morphism& rep, const FormalAtom& source, const FormalAtom& target,
                   QuantifierRule rule = QuantifierRule::derived);
/// Least member of the class of rep.
Morphism canonical_rep(const Morphism& rep, const FormalAtom& source, const FormalAtom& target,
                       QuantifierRule rule = QuantifierRule::derived);

/// One canonical representative per class of compatible base arrows.
std::vector<AtomMap> atom_hom(const FormalAtom& a, const FormalAtom& b,
                              QuantifierRule rule = QuantifierRule::derived);
AtomMap atom_identity(const FormalAtom& a);
/// f then g. Throws CompositionError when f's target is not g's source.
AtomMap atom_compose(const AtomMap& f, const AtomMap& g, QuantifierRule rule = QuantifierRule::derived);
/// Builds the map from rep, checking compatibility. Throws ValidationError.
AtomMap make_atom_map(const FormalAtom& source, const FormalAtom& target, const Morphism& rep,
                      QuantifierRule rule = QuantifierRule::derived);

/// Isomorphism between formal atoms, searched through atom_hom both ways.
/// A pass carries the inverse pair.
CheckVerdict atom_iso_formal(const FormalAtom& a, const FormalAtom& b,
                             QuantifierRule rule = QuantifierRule::derived);

/// The map (n, G) -> (n, <G, extra>) represented by the identity.
AtomMap quotient(const FormalAtom& a, const std::vector<Morphism>& extra);

struct CoeqTrace {
  std::vector<PullbackSquare> steps;
  ObjectRef terminal_object;
  Morphism terminal_automorphism;
  FormalAtom result;
  /// Composite of the first projections, terminal_object -> dom(alpha).
  /// It represents the coequalizing map (dom(alpha), triv) -> result.
  Morphism to_source;
};

/// Coequalizer of the two atom maps (m0, triv) => (m1, triv) represented by
/// alpha, beta : m1 -> m0. Each step pulls the current pair back along
/// itself; the loop stops once both projections are isomorphisms p, q and the
/// result is (apex, <p q^-1>). Throws CompositionError on a non-parallel pair.
CoeqTrace coequalize_representables(const Morphism& alpha, const Morphism& beta);

}  // namespace atomkit
