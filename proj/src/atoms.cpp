#include "atomkit/atoms.hpp"

#include <algorithm>

#include "atomkit/errors.hpp"
#include "atomkit/json_io.hpp"

namespace atomkit {

std::string to_string(QuantifierRule r) { return r == QuantifierRule::derived ? "derived" : "paper"; }

QuantifierRule quantifier_rule_from_string(const std::string& s) {
  if (s == "derived") return QuantifierRule::derived;
  if (s == "paper") return QuantifierRule::paper;
  throw ValidationError("unknown variant '" + s + "' (expected derived or paper)");
}

FormalAtom make_atom(const ObjectRef& base, const std::vector<Morphism>& gens) {
  return FormalAtom{base, site::subgroup_generated(base, gens)};
}

std::string group_name(const FormalAtom& a) {
  const std::size_t k = a.group.order();
  if (k == 1) return "triv";
  if (k == site::aut_group(a.base).order()) {
    if (a.base.backend() == Backend::finsetinj) return "Sym" + std::to_string(a.base.finset().size);
    return "Aut";
  }
  return "order" + std::to_string(k);
}

namespace {

void check_shape(const Morphism& rep, const FormalAtom& source, const FormalAtom& target) {
  if (!(rep.dom() == target.base) || !(rep.cod() == source.base))
    throw CompositionError("atom map representative must go from the target base to the source base");
}

}  // namespace

bool is_compatible(const Morphism& rep, const FormalAtom& source, const FormalAtom& target, QuantifierRule rule) {
  check_shape(rep, source, target);
  const auto& G = source.group.elements;
  const auto& H = target.group.elements;
  if (rule == QuantifierRule::derived) {
    return std::all_of(G.begin(), G.end(), [&](const Morphism& s) {
      const Morphism rs = site::compose(rep, s);
      return std::any_of(H.begin(), H.end(), [&](const Morphism& h) { return site::compose(h, rep) == rs; });
    });
  }
  return std::all_of(H.begin(), H.end(), [&](const Morphism& h) {
    const Morphism hr = site::compose(h, rep);
    return std::any_of(G.begin(), G.end(), [&](const Morphism& s) { return site::compose(rep, s) == hr; });
  });
}

Morphism canonical_rep(const Morphism& rep, const FormalAtom& source, const FormalAtom& target, QuantifierRule rule) {
  check_shape(rep, source, target);
  Morphism best = rep;
  if (rule == QuantifierRule::derived) {
    for (const Morphism& h : target.group.elements) best = std::min(best, site::compose(h, rep));
  } else {
    for (const Morphism& s : source.group.elements) best = std::min(best, site::compose(rep, s));
  }
  return best;
}

std::vector<AtomMap> atom_hom(const FormalAtom& a, const FormalAtom& b, QuantifierRule rule) {
  site::require_same_backend(a.base, b.base);
  std::vector<AtomMap> out;
  for (const Morphism& r : site::hom_set(b.base, a.base)) {
    if (!is_compatible(r, a, b, rule)) continue;
    // hom_set is sorted, so the first member of each class is its least one.
    if (canonical_rep(r, a, b, rule) == r) out.push_back(AtomMap{a, b, r});
  }
  return out;
}

AtomMap atom_identity(const FormalAtom& a) { return AtomMap{a, a, site::identity(a.base)}; }

AtomMap make_atom_map(const FormalAtom& source, const FormalAtom& target, const Morphism& rep, QuantifierRule rule) {
  site::require_same_backend(source.base, target.base);
  if (!is_compatible(rep, source, target, rule))
    throw ValidationError("arrow " + rep.key() + " is not compatible with the groups of the atoms");
  return AtomMap{source, target, canonical_rep(rep, source, target, rule)};
}

AtomMap atom_compose(const AtomMap& f, const AtomMap& g, QuantifierRule rule) {
  if (!(f.target == g.source)) throw CompositionError("atom maps do not compose: target and source differ");
  return make_atom_map(f.source, g.target, site::compose(g.rep, f.rep), rule);
}

CheckVerdict atom_iso_formal(const FormalAtom& a, const FormalAtom& b, QuantifierRule rule) {
  const auto ab = atom_hom(a, b, rule);
  const auto ba = atom_hom(b, a, rule);
  const AtomMap ida = atom_identity(a);
  const AtomMap idb = atom_identity(b);
  for (const AtomMap& f : ab)
    for (const AtomMap& g : ba)
      if (atom_compose(f, g, rule).rep == ida.rep && atom_compose(g, f, rule).rep == idb.rep)
        return CheckVerdict{Status::pass, {{"forward", json_io::encode(f.rep)}, {"backward", json_io::encode(g.rep)}}, 0};
  return CheckVerdict{Status::fail, {{"maps_forward", ab.size()}, {"maps_backward", ba.size()}}, 0};
}

AtomMap quotient(const FormalAtom& a, const std::vector<Morphism>& extra) {
  std::vector<Morphism> gens = a.group.elements;
  gens.insert(gens.end(), extra.begin(), extra.end());
  FormalAtom bigger = make_atom(a.base, gens);
  bigger.group.generators = a.group.generators;
  bigger.group.generators.insert(bigger.group.generators.end(), extra.begin(), extra.end());
  return make_atom_map(a, bigger, site::identity(a.base));
}

CoeqTrace coequalize_representables(const Morphism& alpha, const Morphism& beta) {
  if (!(alpha.dom() == beta.dom()) || !(alpha.cod() == beta.cod()))
    throw CompositionError("coequalizer needs a parallel pair");
  std::vector<PullbackSquare> steps;
  Morphism a = alpha;
  Morphism b = beta;
  Morphism to_source = site::identity(alpha.dom());
  for (;;) {
    PullbackSquare sq = site::pullback(a, b);
    steps.push_back(sq);
    if (site::is_iso(sq.to_left) && site::is_iso(sq.to_right)) {
      to_source = site::compose(sq.to_left, to_source);
      Morphism sigma = site::compose(sq.to_left, site::inverse(sq.to_right));
      FormalAtom result = make_atom(sq.apex, {sigma});
      return CoeqTrace{std::move(steps), sq.apex, sigma, std::move(result), to_source};
    }
    to_source = site::compose(sq.to_left, to_source);
    a = sq.to_left;
    b = sq.to_right;
  }
}

}  // namespace atomkit
