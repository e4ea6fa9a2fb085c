#include "atomkit/site.hpp"

#include <algorithm>
#include <set>

#include "atomkit/errors.hpp"

namespace atomkit {

std::string to_string(Backend b) { return b == Backend::finsetinj ? "finsetinj" : "itree"; }

Backend backend_from_string(const std::string& s) {
  if (s == "finsetinj") return Backend::finsetinj;
  if (s == "itree") return Backend::itree;
  throw ValidationError("unknown site '" + s + "' (expected finsetinj or itree)");
}

const finset::FinSet& ObjectRef::finset() const {
  if (auto p = std::get_if<finset::FinSet>(&v_)) return *p;
  throw BackendError("expected a finsetinj object");
}

const itree::Tree& ObjectRef::tree() const {
  if (auto p = std::get_if<itree::Tree>(&v_)) return *p;
  throw BackendError("expected an itree object");
}

std::string ObjectRef::key() const {
  if (backend() == Backend::finsetinj) return std::to_string(finset().size);
  return tree().key();
}

ObjectRef Morphism::dom() const {
  if (backend() == Backend::finsetinj) return finset::FinSet{injection().dom_size()};
  return embedding().source();
}

ObjectRef Morphism::cod() const {
  if (backend() == Backend::finsetinj) return finset::FinSet{injection().cod_size()};
  return embedding().target();
}

const finset::Injection& Morphism::injection() const {
  if (auto p = std::get_if<finset::Injection>(&v_)) return *p;
  throw BackendError("expected a finsetinj morphism");
}

const itree::TreeEmbedding& Morphism::embedding() const {
  if (auto p = std::get_if<itree::TreeEmbedding>(&v_)) return *p;
  throw BackendError("expected an itree morphism");
}

std::string Morphism::key() const {
  if (backend() == Backend::finsetinj) {
    const auto& f = injection();
    std::string s = std::to_string(f.dom_size()) + "->" + std::to_string(f.cod_size()) + ":[";
    for (std::size_t i = 0; i < f.map().size(); ++i) {
      if (i) s += ",";
      s += std::to_string(f.map()[i]);
    }
    return s + "]";
  }
  const auto& e = embedding();
  std::string s = e.source().key() + "->" + e.target().key() + ":[";
  for (std::size_t i = 0; i < e.images().size(); ++i) {
    if (i) s += ",";
    s += "'" + e.images()[i].bits + "'";
    if (e.routes()[i] >= 0) s += "@" + std::to_string(e.routes()[i]);
  }
  return s + "]";
}

bool AutGroup::contains(const Morphism& m) const {
  return std::binary_search(elements.begin(), elements.end(), m);
}

namespace site {

void require_same_backend(const ObjectRef& a, const ObjectRef& b) {
  if (a.backend() != b.backend())
    throw BackendError("mixed backends: " + to_string(a.backend()) + " and " + to_string(b.backend()));
}

namespace {
void require_same_backend(const Morphism& f, const Morphism& g) {
  if (f.backend() != g.backend())
    throw BackendError("mixed backends: " + to_string(f.backend()) + " and " + to_string(g.backend()));
}
}  // namespace

Morphism identity(const ObjectRef& a) {
  if (a.backend() == Backend::finsetinj) return finset::Injection::identity(a.finset().size);
  return itree::TreeEmbedding::identity(a.tree());
}

Morphism compose(const Morphism& f, const Morphism& g) {
  require_same_backend(f, g);
  if (f.backend() == Backend::finsetinj) return finset::compose(f.injection(), g.injection());
  return itree::compose(f.embedding(), g.embedding());
}

bool is_iso(const Morphism& f) {
  if (f.backend() == Backend::finsetinj) return f.injection().is_bijective();
  return f.embedding().is_iso();
}

Morphism inverse(const Morphism& f) {
  if (f.backend() == Backend::finsetinj) return finset::inverse(f.injection());
  return itree::inverse(f.embedding());
}

std::vector<Morphism> hom_set(const ObjectRef& a, const ObjectRef& b) {
  require_same_backend(a, b);
  std::vector<Morphism> out;
  if (a.backend() == Backend::finsetinj) {
    for (auto& f : finset::hom_set(a.finset(), b.finset())) out.emplace_back(std::move(f));
  } else {
    for (auto& f : itree::enumerate_embeddings(a.tree(), b.tree())) out.emplace_back(std::move(f));
  }
  return out;
}

PullbackSquare pullback(const Morphism& f, const Morphism& g) {
  require_same_backend(f, g);
  if (!(f.cod() == g.cod())) throw CompositionError("pullback needs a common codomain");
  if (f.backend() == Backend::finsetinj) {
    auto pb = finset::pullback(f.injection(), g.injection());
    return PullbackSquare{Cospan{f, g}, pb.apex, pb.to_first, pb.to_second};
  }
  auto pb = itree::tree_pullback(f.embedding(), g.embedding());
  return PullbackSquare{Cospan{f, g}, pb.apex, pb.to_first, pb.to_second};
}

Cocone amalgamate(const Span& span) {
  require_same_backend(span.left, span.right);
  if (!(span.left.dom() == span.apex) || !(span.right.dom() == span.apex))
    throw CompositionError("span legs must start at the apex");
  if (span.left.backend() == Backend::finsetinj) {
    auto po = finset::amalgamate(span.left.injection(), span.right.injection());
    return Cocone{po.apex, po.from_first, po.from_second};
  }
  auto am = itree::tree_amalgamate(span.left.embedding(), span.right.embedding());
  return Cocone{am.apex, am.from_first, am.from_second};
}

AutGroup aut_group(const ObjectRef& a) {
  std::vector<Morphism> elems;
  for (auto& m : hom_set(a, a))
    if (is_iso(m)) elems.push_back(std::move(m));
  return AutGroup{a, elems, elems};
}

RankValue rank(const ObjectRef& a) {
  if (a.backend() == Backend::finsetinj) return RankValue{{a.finset().size}};
  return itree::tree_stats(a.tree()).rank;
}

AutGroup subgroup_generated(const ObjectRef& object, const std::vector<Morphism>& gens) {
  for (const Morphism& g : gens) {
    require_same_backend(object, g.dom());
    if (!(g.dom() == object) || !(g.cod() == object) || !is_iso(g))
      throw ValidationError("generator " + g.key() + " is not an automorphism of " + object.key());
  }
  std::set<Morphism> seen{identity(object)};
  std::vector<Morphism> frontier{identity(object)};
  while (!frontier.empty()) {
    std::vector<Morphism> next;
    for (const Morphism& e : frontier) {
      for (const Morphism& g : gens) {
        Morphism p = compose(e, g);
        if (seen.insert(p).second) next.push_back(std::move(p));
      }
    }
    frontier = std::move(next);
  }
  return AutGroup{object, gens, std::vector<Morphism>(seen.begin(), seen.end())};
}

std::optional<Morphism> factor_through(const Morphism& f, const Morphism& g) {
  require_same_backend(f, g);
  if (!(f.cod() == g.cod())) return std::nullopt;
  for (const Morphism& h : hom_set(f.dom(), g.dom()))
    if (compose(h, g) == f) return h;
  return std::nullopt;
}

bool same_subobject(const Morphism& f, const Morphism& g) {
  return factor_through(f, g).has_value() && factor_through(g, f).has_value();
}

bool verify_pullback(const PullbackSquare& sq, const std::vector<ObjectRef>& test_objects) {
  const Morphism& f = sq.cospan.left;
  const Morphism& g = sq.cospan.right;
  if (!(compose(sq.to_left, f) == compose(sq.to_right, g))) return false;
  const ObjectRef a = f.dom();
  const ObjectRef b = g.dom();
  for (const ObjectRef& w : test_objects) {
    if (w.backend() != a.backend()) continue;
    const auto to_apex = hom_set(w, sq.apex);
    const auto to_b = hom_set(w, b);
    for (const Morphism& p : hom_set(w, a)) {
      const Morphism pf = compose(p, f);
      for (const Morphism& q : to_b) {
        if (!(pf == compose(q, g))) continue;
        std::size_t factorizations = 0;
        for (const Morphism& h : to_apex)
          if (compose(h, sq.to_left) == p && compose(h, sq.to_right) == q) ++factorizations;
        if (factorizations != 1) return false;
      }
    }
  }
  return true;
}

std::vector<ObjectRef> objects_within(Backend b, const ObjectBound& bound) {
  std::vector<ObjectRef> out;
  if (b == Backend::finsetinj) {
    for (std::size_t n = 0; n <= bound.max_size; ++n) out.emplace_back(finset::FinSet{n});
  } else {
    for (auto& t : itree::trees_up_to(bound.max_tails, bound.max_nodes, bound.labels)) out.emplace_back(std::move(t));
  }
  return out;
}

ObjectBound bound_for_depth(Backend b, std::size_t depth, const std::vector<ObjectRef>& involved) {
  ObjectBound bound;
  if (b == Backend::finsetinj) {
    std::size_t largest = 0;
    for (const ObjectRef& o : involved) largest = std::max(largest, o.finset().size);
    bound.max_size = depth + largest;
    return bound;
  }
  std::set<std::string> labels;
  for (const ObjectRef& o : involved)
    for (int t : o.tree().tails()) labels.insert(o.tree().node(t).label);
  std::string fresh = "_0";
  for (int i = 1; labels.count(fresh); ++i) fresh = "_" + std::to_string(i);
  labels.insert(fresh);
  bound.max_tails = depth;
  bound.max_nodes = 2 * depth + 3;
  bound.labels.assign(labels.begin(), labels.end());
  return bound;
}

}  // namespace site
}  // namespace atomkit
