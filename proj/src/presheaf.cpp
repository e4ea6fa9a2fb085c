#include "atomkit/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "atomkit/errors.hpp"

namespace atomkit {

PresheafFragment::PresheafFragment(std::vector<ObjectRef> objects, std::vector<std::vector<std::string>> elements,
                                   std::map<Morphism, std::vector<std::size_t>> action)
    : objects_(std::move(objects)), elements_(std::move(elements)), action_(std::move(action)) {
  if (objects_.empty()) throw ValidationError("fragment: no objects");
  if (elements_.size() != objects_.size()) throw ValidationError("fragment: one element list per object is required");
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    site::require_same_backend(objects_[0], objects_[i]);
    for (std::size_t k = 0; k < i; ++k)
      if (objects_[k] == objects_[i]) throw ValidationError("fragment: object " + objects_[i].key() + " listed twice");
    std::set<std::string> names(elements_[i].begin(), elements_[i].end());
    if (names.size() != elements_[i].size())
      throw ValidationError("fragment: repeated element name over object " + objects_[i].key());
  }

  std::size_t expected = 0;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    for (std::size_t k = 0; k < objects_.size(); ++k) {
      for (const Morphism& f : site::hom_set(objects_[i], objects_[k])) {
        ++expected;
        auto it = action_.find(f);
        if (it == action_.end()) throw ValidationError("fragment: missing action for arrow " + f.key());
        const auto& m = it->second;
        if (m.size() != elements_[i].size())
          throw ValidationError("fragment: action of " + f.key() + " has the wrong length");
        std::vector<bool> hit(elements_[k].size(), false);
        for (std::size_t v : m) {
          if (v >= elements_[k].size()) throw ValidationError("fragment: action of " + f.key() + " is out of range");
          if (hit[v]) throw ValidationError("fragment: action of " + f.key() + " is not injective");
          hit[v] = true;
        }
      }
    }
  }
  if (expected != action_.size()) throw ValidationError("fragment: action lists an arrow between unlisted objects");

  for (const auto& [f, fm] : action_) {
    const std::size_t mid = require_index(f.cod());
    for (std::size_t l = 0; l < objects_.size(); ++l) {
      for (const Morphism& g : site::hom_set(objects_[mid], objects_[l])) {
        const auto& gm = action_.at(g);
        const auto& fgm = action_.at(site::compose(f, g));
        for (std::size_t e = 0; e < fm.size(); ++e)
          if (gm[fm[e]] != fgm[e])
            throw ValidationError("fragment: action is not functorial on " + f.key() + " then " + g.key());
      }
    }
  }

  for (std::size_t z = 0; z < objects_.size(); ++z) {
    std::vector<Morphism> into;
    for (const ObjectRef& x : objects_)
      for (const Morphism& f : site::hom_set(x, objects_[z])) into.push_back(f);
    for (std::size_t a = 0; a < into.size(); ++a) {
      for (std::size_t b = a; b < into.size(); ++b) {
        PullbackSquare sq = site::pullback(into[a], into[b]);
        auto p = index_of(sq.apex);
        if (!p)
          throw ClosureError("fragment: pullback apex " + sq.apex.key() + " of " + into[a].key() + " and " +
                             into[b].key() + " is not listed");
        const auto& fa = action_.at(into[a]);
        std::set<std::size_t> img(fa.begin(), fa.end());
        std::size_t common = 0;
        for (std::size_t v : action_.at(into[b])) common += img.count(v);
        if (common != elements_[*p].size())
          throw ValidationError("fragment: pullback of " + into[a].key() + " and " + into[b].key() + " is not preserved");
      }
    }
  }
}

std::optional<std::size_t> PresheafFragment::index_of(const ObjectRef& o) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == o) return i;
  return std::nullopt;
}

std::size_t PresheafFragment::require_index(const ObjectRef& o) const {
  if (auto i = index_of(o)) return *i;
  throw ClosureError("fragment: object " + o.key() + " is not listed");
}

std::size_t PresheafFragment::element_index(std::size_t obj, const std::string& name) const {
  const auto& es = elements_.at(obj);
  auto it = std::find(es.begin(), es.end(), name);
  if (it == es.end()) throw ValidationError("fragment: no element '" + name + "' over object " + objects_[obj].key());
  return static_cast<std::size_t>(it - es.begin());
}

const std::vector<std::size_t>& PresheafFragment::action(const Morphism& f) const {
  auto it = action_.find(f);
  if (it == action_.end()) throw ClosureError("fragment: no action for arrow " + f.key());
  return it->second;
}

namespace {

using NameFn = std::function<std::vector<std::string>(const ObjectRef&)>;
using ActFn = std::function<std::string(const Morphism&, const std::string&)>;

PresheafFragment build(const std::vector<ObjectRef>& objects, const NameFn& names, const ActFn& act) {
  std::vector<std::vector<std::string>> elements;
  for (const ObjectRef& o : objects) elements.push_back(names(o));
  std::map<Morphism, std::vector<std::size_t>> action;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t k = 0; k < objects.size(); ++k) {
      for (const Morphism& f : site::hom_set(objects[i], objects[k])) {
        std::vector<std::size_t> m;
        for (const std::string& e : elements[i]) {
          const std::string img = act(f, e);
          auto it = std::find(elements[k].begin(), elements[k].end(), img);
          m.push_back(static_cast<std::size_t>(it - elements[k].begin()));
        }
        action.emplace(f, std::move(m));
      }
    }
  }
  return PresheafFragment(objects, std::move(elements), std::move(action));
}

std::vector<ObjectRef> sets_up_to(std::size_t n) {
  std::vector<ObjectRef> out;
  for (std::size_t k = 0; k <= n; ++k) out.emplace_back(finset::FinSet{k});
  return out;
}

std::string pair_name(std::size_t a, std::size_t b, bool ordered) {
  if (ordered) return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
  if (a > b) std::swap(a, b);
  if (a == b) return "{" + std::to_string(a) + "}";
  return "{" + std::to_string(a) + "," + std::to_string(b) + "}";
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    const std::size_t a = std::stoul(s.substr(1, s.size() - 2));
    return {a, a};
  }
  return {std::stoul(s.substr(1, comma - 1)), std::stoul(s.substr(comma + 1, s.size() - comma - 2))};
}

PresheafFragment pairs(std::size_t max_size, bool ordered) {
  auto names = [ordered](const ObjectRef& o) {
    std::vector<std::string> out;
    const std::size_t n = o.finset().size;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = ordered ? 0 : a; b < n; ++b) out.push_back(pair_name(a, b, ordered));
    return out;
  };
  auto act = [ordered](const Morphism& f, const std::string& e) {
    auto [a, b] = parse_pair(e);
    return pair_name(f.injection()(a), f.injection()(b), ordered);
  };
  return build(sets_up_to(max_size), names, act);
}

std::string class_name(const Morphism& rep) {
  std::string s = "[";
  if (rep.backend() == Backend::finsetinj) {
    const auto& m = rep.injection().map();
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + "]";
  }
  const auto& e = rep.embedding();
  for (std::size_t i = 0; i < e.images().size(); ++i) {
    s += (i ? "," : "") + (e.images()[i].empty() ? std::string("e") : e.images()[i].bits);
    if (e.routes()[i] >= 0) s += "@" + std::to_string(e.routes()[i]);
  }
  return s + "]";
}

}  // namespace

PresheafFragment unordered_pairs(std::size_t max_size) { return pairs(max_size, false); }
PresheafFragment ordered_pairs(std::size_t max_size) { return pairs(max_size, true); }

Morphism class_rep(const Morphism& f, const AutGroup& g) {
  Morphism best = f;
  for (const Morphism& s : g.elements) best = std::min(best, site::compose(s, f));
  return best;
}

std::vector<Morphism> quotient_classes(const FormalAtom& a, const ObjectRef& x) {
  std::set<Morphism> reps;
  for (const Morphism& f : site::hom_set(a.base, x)) reps.insert(class_rep(f, a.group));
  return {reps.begin(), reps.end()};
}

PresheafFragment quotient_presheaf(const FormalAtom& a, const std::vector<ObjectRef>& objects) {
  // Names are derived from least representatives, so they can be mapped back.
  std::map<std::pair<ObjectRef, std::string>, Morphism> by_name;
  auto names = [&](const ObjectRef& o) {
    std::vector<std::string> out;
    for (const Morphism& r : quotient_classes(a, o)) {
      out.push_back(class_name(r));
      by_name.emplace(std::make_pair(o, class_name(r)), r);
    }
    return out;
  };
  auto act = [&](const Morphism& f, const std::string& e) {
    return class_name(class_rep(site::compose(by_name.at({f.dom(), e}), f), a.group));
  };
  return build(objects, names, act);
}

PresheafFragment representable(const ObjectRef& base, const std::vector<ObjectRef>& objects) {
  return quotient_presheaf(make_atom(base, {}), objects);
}

Support support(const PresheafFragment& F, const ObjectRef& x, std::size_t p) {
  const std::size_t xi = F.require_index(x);
  if (p >= F.elements(xi).size()) throw ValidationError("support: element index out of range");
  std::vector<Support> cands;
  for (const ObjectRef& y : F.objects()) {
    for (const Morphism& i : site::hom_set(y, x)) {
      const auto& m = F.action(i);
      auto it = std::find(m.begin(), m.end(), p);
      if (it != m.end()) cands.push_back(Support{i, static_cast<std::size_t>(it - m.begin())});
    }
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Support& a, const Support& b) {
    return site::rank(a.inclusion.dom()) < site::rank(b.inclusion.dom());
  });
  for (const Support& c : cands) {
    bool least = std::all_of(cands.begin(), cands.end(), [&](const Support& d) {
      return site::factor_through(c.inclusion, d.inclusion).has_value();
    });
    if (least) return c;
  }
  throw ClosureError("support: element '" + F.elements(xi)[p] + "' over " + x.key() +
                     " has no least support among the listed objects");
}

AutGroup stabilizer(const PresheafFragment& F, const ObjectRef& x, std::size_t p) {
  const Support s = support(F, x, p);
  if (!site::is_iso(s.inclusion))
    throw PreconditionError("stabilizer: the support of the element is " + s.inclusion.dom().key() +
                            ", smaller than " + x.key());
  std::vector<Morphism> fixing;
  for (const Morphism& g : site::aut_group(x).elements)
    if (F.act(g, p) == p && !(g == site::identity(x))) fixing.push_back(g);
  return site::subgroup_generated(x, fixing);
}

Decomposition decompose(const PresheafFragment& F) {
  Decomposition out;
  // (object index, least element of the orbit) -> component index
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> by_orbit;
  auto orbit_min = [&](std::size_t obj, std::size_t e) {
    std::size_t best = e;
    for (const Morphism& g : site::aut_group(F.objects()[obj]).elements) best = std::min(best, F.act(g, e));
    return best;
  };
  for (std::size_t xi = 0; xi < F.objects().size(); ++xi) {
    const ObjectRef& x = F.objects()[xi];
    for (std::size_t p = 0; p < F.elements(xi).size(); ++p) {
      if (!site::is_iso(support(F, x, p).inclusion) || orbit_min(xi, p) != p) continue;
      by_orbit[{xi, p}] = out.components.size();
      out.components.push_back(Component{FormalAtom{x, stabilizer(F, x, p)}, p, {}});
    }
  }
  bool ok = true;
  for (std::size_t yi = 0; yi < F.objects().size(); ++yi) {
    for (std::size_t q = 0; q < F.elements(yi).size(); ++q) {
      const Support s = support(F, F.objects()[yi], q);
      const std::size_t si = F.require_index(s.inclusion.dom());
      auto it = by_orbit.find({si, orbit_min(si, s.element)});
      if (it == by_orbit.end()) {
        ok = false;
        continue;
      }
      out.components[it->second].members.emplace_back(yi, q);
    }
  }
  for (const Component& c : out.components) {
    for (std::size_t yi = 0; yi < F.objects().size(); ++yi) {
      const auto n = static_cast<std::size_t>(std::count_if(c.members.begin(), c.members.end(),
                                                            [&](const auto& m) { return m.first == yi; }));
      if (n != quotient_classes(c.atom, F.objects()[yi]).size()) ok = false;
    }
  }
  out.reconstruction_ok = ok;
  std::stable_sort(out.components.begin(), out.components.end(), [](const Component& a, const Component& b) {
    const auto ra = site::rank(a.atom.base);
    const auto rb = site::rank(b.atom.base);
    if (ra != rb) return ra > rb;
    return a.atom.group.order() > b.atom.group.order();
  });
  return out;
}

}  // namespace atomkit
