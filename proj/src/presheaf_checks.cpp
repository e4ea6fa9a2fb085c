#include <algorithm>
#include <set>

#include "atomkit/errors.hpp"
#include "atomkit/json_io.hpp"
#include "atomkit/presheaf.hpp"

namespace atomkit {

namespace {

using json_io::encode;

std::vector<ObjectRef> bounded_objects(std::size_t depth, const std::vector<ObjectRef>& involved) {
  const Backend b = involved.front().backend();
  return site::objects_within(b, site::bound_for_depth(b, depth, involved));
}

struct ParallelPair {
  Morphism alpha;
  Morphism beta;
};

/// Pairs alpha, beta : B => X over the given objects with f alpha = f beta.
std::vector<ParallelPair> equalized_pairs(const Morphism& f, const std::vector<ObjectRef>& objects) {
  std::vector<ParallelPair> out;
  for (const ObjectRef& x : objects) {
    const auto hs = site::hom_set(f.cod(), x);
    for (const Morphism& a : hs) {
      const Morphism fa = site::compose(f, a);
      for (const Morphism& b : hs)
        if (site::compose(f, b) == fa) out.push_back(ParallelPair{a, b});
    }
  }
  return out;
}

bool same_class(const Morphism& f, const Morphism& g, const AutGroup& group) {
  return class_rep(f, group) == class_rep(g, group);
}

}  // namespace

CheckVerdict sheaf_check_quotient(const FormalAtom& a, const Morphism& q, std::size_t depth) {
  site::require_same_backend(a.base, q.dom());
  const ObjectRef s = q.dom();
  const ObjectRef t = q.cod();
  const auto objects = bounded_objects(depth, {a.base, s, t});

  // Restriction along q is injective on classes.
  const auto over_s = quotient_classes(a, s);
  std::map<Morphism, Morphism> pushed;
  for (const Morphism& h : over_s) {
    Morphism img = class_rep(site::compose(h, q), a.group);
    auto [it, fresh] = pushed.emplace(img, h);
    if (!fresh)
      return CheckVerdict{Status::fail,
                          {{"reason", "restriction along q is not injective"},
                           {"first", encode(it->second)},
                           {"second", encode(h)}},
                          depth};
  }

  const auto pairs = equalized_pairs(q, objects);
  std::size_t compatible = 0;
  for (const Morphism& f : quotient_classes(a, t)) {
    const bool matches = std::all_of(pairs.begin(), pairs.end(), [&](const ParallelPair& p) {
      return same_class(site::compose(f, p.alpha), site::compose(f, p.beta), a.group);
    });
    if (!matches) continue;
    ++compatible;
    if (pushed.count(f)) continue;
    return CheckVerdict{Status::fail,
                        {{"reason", "compatible element does not descend along q"},
                         {"element", encode(f)},
                         {"classes_over_cover", over_s.size()},
                         {"pairs_checked", pairs.size()}},
                        depth};
  }
  return CheckVerdict{Status::pass,
                      {{"compatible_elements", compatible},
                       {"pairs_checked", pairs.size()},
                       {"objects_checked", objects.size()}},
                      depth};
}

CheckVerdict self_intersection_check(const Morphism& f, std::size_t depth) {
  const ObjectRef b = f.cod();
  const auto objects = bounded_objects(depth, {f.dom(), b});
  const auto pairs = equalized_pairs(f, objects);
  nlohmann::json exclusions = nlohmann::json::array();
  for (const ObjectRef& y : objects) {
    const auto into_b = site::hom_set(y, b);
    for (const Morphism& u : into_b) {
      if (site::factor_through(u, f)) continue;
      // u is excluded by a pair with no v such that u beta = v alpha.
      auto excluding = std::find_if(pairs.begin(), pairs.end(), [&](const ParallelPair& p) {
        const Morphism ub = site::compose(u, p.beta);
        return std::none_of(into_b.begin(), into_b.end(),
                            [&](const Morphism& v) { return site::compose(v, p.alpha) == ub; });
      });
      if (excluding == pairs.end())
        return CheckVerdict{Status::fail,
                            {{"u", encode(u)}, {"pairs_checked", pairs.size()}},
                            depth};
      exclusions.push_back({{"u", encode(u)}, {"alpha", encode(excluding->alpha)}, {"beta", encode(excluding->beta)}});
    }
  }
  return CheckVerdict{Status::pass, {{"excluded", std::move(exclusions)}, {"pairs_checked", pairs.size()}}, depth};
}

KResult compute_K(const Morphism& f, std::size_t depth) {
  const ObjectRef b = f.cod();
  const auto objects = bounded_objects(depth, {f.dom(), b});
  const auto pairs = equalized_pairs(f, objects);
  Morphism j = site::identity(b);
  std::vector<Morphism> chain{j};
  nlohmann::json steps = nlohmann::json::array();
  for (;;) {
    const auto others = site::hom_set(j.dom(), b);
    auto violating = std::find_if(pairs.begin(), pairs.end(), [&](const ParallelPair& p) {
      const Morphism jb = site::compose(j, p.beta);
      return std::none_of(others.begin(), others.end(),
                          [&](const Morphism& v) { return site::compose(v, p.alpha) == jb; });
    });
    if (violating == pairs.end()) break;
    PullbackSquare sq = site::pullback(site::compose(j, violating->beta), violating->alpha);
    if (site::is_iso(sq.to_left)) throw Error("compute_K: pullback step did not shrink K");
    j = site::compose(sq.to_left, j);
    chain.push_back(j);
    steps.push_back({{"alpha", encode(violating->alpha)}, {"beta", encode(violating->beta)}, {"K", encode(j.dom())}});
  }
  auto i = site::factor_through(f, j);
  if (!i) throw Error("compute_K: f does not factor through K");
  std::vector<Morphism> fixing;
  for (const Morphism& s : site::aut_group(j.dom()).elements)
    if (site::compose(*i, s) == *i && !(s == site::identity(j.dom()))) fixing.push_back(s);
  AutGroup g = site::subgroup_generated(j.dom(), fixing);
  CheckVerdict v{Status::pass, {{"steps", std::move(steps)}, {"pairs_checked", pairs.size()}}, depth};
  return KResult{j.dom(), j, *i, std::move(g), std::move(chain), std::move(v)};
}

CheckVerdict local_iso_check(const AtomMap& m, std::size_t depth) {
  const FormalAtom& src = m.source;
  const FormalAtom& tgt = m.target;
  const auto objects = bounded_objects(depth, {src.base, tgt.base});
  // image[x] = classes of Hom(m, X)/H hit by the map, for each bounded X.
  std::vector<std::set<Morphism>> image(objects.size());
  for (std::size_t k = 0; k < objects.size(); ++k) {
    std::map<Morphism, Morphism> seen;
    for (const Morphism& f : quotient_classes(src, objects[k])) {
      Morphism img = class_rep(site::compose(m.rep, f), tgt.group);
      auto [it, fresh] = seen.emplace(img, f);
      if (!fresh)
        return CheckVerdict{Status::fail,
                            {{"reason", "not injective"},
                             {"object", encode(objects[k])},
                             {"first", encode(it->second)},
                             {"second", encode(f)}},
                            depth};
      image[k].insert(img);
    }
  }
  std::size_t lifted = 0;
  for (std::size_t k = 0; k < objects.size(); ++k) {
    for (const Morphism& g : quotient_classes(tgt, objects[k])) {
      if (image[k].count(g)) continue;
      bool found = false;
      for (std::size_t l = 0; l < objects.size() && !found; ++l)
        for (const Morphism& e : site::hom_set(objects[k], objects[l]))
          if (image[l].count(class_rep(site::compose(g, e), tgt.group))) {
            found = true;
            break;
          }
      if (!found)
        return CheckVerdict{Status::fail,
                            {{"reason", "element does not lift after any arrow within the bound"},
                             {"object", encode(objects[k])},
                             {"element", encode(g)}},
                            depth};
      ++lifted;
    }
  }
  return CheckVerdict{Status::pass, {{"objects_checked", objects.size()}, {"lifted_elements", lifted}}, depth};
}

}  // namespace atomkit
