#include "atomkit/audit.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "atomkit/errors.hpp"
#include "atomkit/json_io.hpp"

namespace atomkit {

using json_io::encode;
using nlohmann::json;

std::string to_string(Condition c) {
  switch (c) {
    case Condition::c1_amalgamation: return "C1-amalgamation";
    case Condition::c1_regular_mono: return "C1-regular-mono";
    case Condition::c2prime: return "C2prime";
    case Condition::c3: return "C3";
    default: return "C4";
  }
}

std::size_t AuditReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(), [&](const AuditInstance& i) { return i.verdict.status == s; }));
}

json AuditReport::to_json(bool with_instances) const {
  json out = {{"condition", to_string(condition)},
              {"site", to_string(backend)},
              {"bound", bound},
              {"family", bound_detail},
              {"instances_total", instances.size()},
              {"pass", count(Status::pass)},
              {"fail", count(Status::fail)},
              {"unknown", count(Status::unknown)},
              {"summary", summary}};
  if (with_instances) {
    json list = json::array();
    for (const auto& i : instances) list.push_back({{"key", i.key}, {"verdict", i.verdict.to_json()}});
    out["instances"] = std::move(list);
  } else {
    json failures = json::array();
    for (const auto& i : instances)
      if (!i.verdict.passed()) failures.push_back({{"key", i.key}, {"verdict", i.verdict.to_json()}});
    out["failures"] = std::move(failures);
  }
  return out;
}

std::string AuditReport::table() const {
  std::ostringstream os;
  os << to_string(condition) << "  site=" << to_string(backend) << "  bound=" << bound << "  instances="
     << instances.size() << "  pass=" << count(Status::pass) << "  fail=" << count(Status::fail)
     << "  unknown=" << count(Status::unknown) << "\n";
  for (const auto& i : instances)
    if (!i.verdict.passed()) os << "  " << atomkit::to_string(i.verdict.status) << "  " << i.key << "\n";
  return os.str();
}

std::vector<ObjectRef> audit_objects(Backend b, std::size_t bound) {
  if (bound == 0) return {};
  site::ObjectBound ob;
  if (b == Backend::finsetinj) {
    ob.max_size = bound;
  } else {
    ob.max_tails = bound;
    ob.max_nodes = 2 * bound + 1;
    for (std::size_t k = 0; k < bound; ++k) ob.labels.push_back(std::string(1, static_cast<char>('i' + k)));
  }
  return site::objects_within(b, ob);
}

namespace {

json family_detail(Backend b, std::size_t bound) {
  if (b == Backend::finsetinj) return {{"max_size", bound}};
  json labels = json::array();
  for (std::size_t k = 0; k < bound; ++k) labels.push_back(std::string(1, static_cast<char>('i' + k)));
  return {{"max_tails", bound}, {"max_nodes", bound == 0 ? 0 : 2 * bound + 1}, {"labels", labels}};
}

AuditReport empty_report(Condition c, Backend b, std::size_t bound) {
  return AuditReport{c, b, bound, family_detail(b, bound), {}, json::object()};
}

CheckVerdict verdict(bool ok, json witness = json::object()) {
  return CheckVerdict{ok ? Status::pass : Status::fail, std::move(witness), 0};
}

std::vector<Morphism> arrows_into(const ObjectRef& z, const std::vector<ObjectRef>& objects) {
  std::vector<Morphism> out;
  for (const ObjectRef& x : objects)
    for (const Morphism& f : site::hom_set(x, z)) out.push_back(f);
  return out;
}

// Pair alpha, beta : Y => Z whose equalizer is exactly the image of f.
std::optional<std::pair<Morphism, Morphism>> finset_equalizing_pair(const finset::Injection& f) {
  const std::size_t y = f.cod_size();
  std::vector<bool> in_image(y, false);
  for (std::size_t v : f.map()) in_image[v] = true;
  for (std::size_t z = y; z <= 2 * y; ++z) {
    const auto hs = finset::hom_set(finset::FinSet{y}, finset::FinSet{z});
    for (const auto& a : hs)
      for (const auto& b : hs) {
        bool exact = true;
        for (std::size_t k = 0; k < y && exact; ++k) exact = (a(k) == b(k)) == in_image[k];
        if (exact) return std::make_pair(Morphism(a), Morphism(b));
      }
  }
  return std::nullopt;
}

// Shortest sequence in Hom(Z, A + k) from u w to v w where consecutive arrows
// agree on X or on Y, w being the inclusion of A.
std::optional<std::vector<Morphism>> finset_chain(const Morphism& x_in, const Morphism& y_in, const Morphism& u,
                                                  const Morphism& v) {
  const std::size_t a = u.cod().finset().size;
  const std::size_t zsize = u.dom().finset().size;
  for (std::size_t k = 0; k <= zsize; ++k) {
    Morphism w = finset::make_injection(a, a + k, finset::Injection::identity(a).map());
    const Morphism start = site::compose(u, w);
    const Morphism goal = site::compose(v, w);
    const auto nodes = site::hom_set(u.dom(), w.cod());
    std::map<Morphism, std::optional<Morphism>> parent{{start, std::nullopt}};
    std::deque<Morphism> queue{start};
    while (!queue.empty()) {
      Morphism cur = queue.front();
      queue.pop_front();
      if (cur == goal) {
        std::vector<Morphism> path{cur};
        while (parent.at(path.back())) path.push_back(*parent.at(path.back()));
        std::reverse(path.begin(), path.end());
        return path;
      }
      const Morphism cx = site::compose(x_in, cur);
      const Morphism cy = site::compose(y_in, cur);
      for (const Morphism& n : nodes) {
        if (parent.count(n)) continue;
        if (site::compose(x_in, n) == cx || site::compose(y_in, n) == cy) {
          parent.emplace(n, cur);
          queue.push_back(n);
        }
      }
    }
  }
  return std::nullopt;
}

bool chain_ok(const std::vector<Morphism>& chain, const Morphism& x_in, const Morphism& y_in) {
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const bool on_x = site::compose(x_in, chain[k]) == site::compose(x_in, chain[k + 1]);
    const bool on_y = site::compose(y_in, chain[k]) == site::compose(y_in, chain[k + 1]);
    if (!on_x && !on_y) return false;
  }
  return true;
}

}  // namespace

std::vector<AuditReport> audit_c1(Backend b, std::size_t bound) {
  const auto objects = audit_objects(b, bound);
  AuditReport amal = empty_report(Condition::c1_amalgamation, b, bound);
  AuditReport reg = empty_report(Condition::c1_regular_mono, b, bound);
  for (const ObjectRef& x : objects) {
    std::vector<Morphism> out_of;
    for (const ObjectRef& a : objects)
      for (const Morphism& f : site::hom_set(x, a)) out_of.push_back(f);
    for (const Morphism& f : out_of)
      for (const Morphism& g : out_of) {
        Cocone c = site::amalgamate(Span{x, f, g});
        const bool ok = site::compose(f, c.from_left) == site::compose(g, c.from_right);
        amal.instances.push_back({"span " + f.key() + " , " + g.key(), verdict(ok, {{"apex", c.apex.key()}})});
      }
    for (const Morphism& f : out_of) {
      if (b == Backend::itree) {
        auto w = itree::regular_mono_witness(f.embedding());
        const auto eq = itree::equalizer(w.first, w.second);
        const bool ok = itree::same_image(eq, f.embedding()) &&
                        itree::compose(f.embedding(), w.first) == itree::compose(f.embedding(), w.second);
        reg.instances.push_back({"mono " + f.key(), verdict(ok, {{"target", w.target.key()},
                                                                 {"equalizer", eq.source().key()}})});
      } else {
        auto pair = finset_equalizing_pair(f.injection());
        json wit = json::object();
        if (pair) wit = {{"alpha", encode(pair->first)}, {"beta", encode(pair->second)}};
        reg.instances.push_back({"mono " + f.key(), verdict(pair.has_value(), wit)});
      }
    }
  }
  amal.summary = {{"objects", objects.size()}};
  reg.summary = {{"objects", objects.size()}};
  return {amal, reg};
}

AuditReport audit_c2prime(Backend b, std::size_t bound) {
  const auto objects = audit_objects(b, bound);
  AuditReport rep = empty_report(Condition::c2prime, b, bound);
  std::size_t longest = 0;
  for (const ObjectRef& z : objects) {
    const auto into = arrows_into(z, objects);
    for (std::size_t i = 0; i < into.size(); ++i) {
      for (std::size_t k = i; k < into.size(); ++k) {
        const Morphism& f = into[i];
        const Morphism& g = into[k];
        const PullbackSquare sq = site::pullback(f, g);
        const Morphism meet = site::compose(sq.to_left, f);
        for (const ObjectRef& a : objects) {
          const auto hs = site::hom_set(z, a);
          for (std::size_t p = 0; p < hs.size(); ++p) {
            for (std::size_t q = p; q < hs.size(); ++q) {
              const Morphism& u = hs[p];
              const Morphism& v = hs[q];
              if (!(site::compose(meet, u) == site::compose(meet, v))) continue;
              std::vector<Morphism> chain;
              if (u == v) {
                chain = {u};
              } else if (b == Backend::itree) {
                Morphism w = itree::c2prime_witness(f.embedding(), g.embedding(), u.embedding(), v.embedding());
                chain = {u, w, v};
              } else if (auto c = finset_chain(f, g, u, v)) {
                chain = *c;
              }
              const bool ok = !chain.empty() && chain_ok(chain, f, g);
              longest = std::max(longest, chain.size());
              json wit = {{"chain_length", chain.size()}};
              if (!chain.empty()) wit["extended_codomain"] = chain.front().cod().key();
              rep.instances.push_back(
                  {"square " + f.key() + " , " + g.key() + " pair " + u.key() + " , " + v.key(), verdict(ok, wit)});
            }
          }
        }
      }
    }
  }
  rep.summary = {{"objects", objects.size()}, {"longest_chain", longest}};
  return rep;
}

AuditReport audit_c3(Backend b, std::size_t bound) {
  const auto objects = audit_objects(b, bound);
  AuditReport rep = empty_report(Condition::c3, b, bound);
  // Objects sorted by rank, so chain lengths can be filled bottom-up.
  std::vector<std::size_t> order(objects.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return site::rank(objects[x]) < site::rank(objects[y]); });
  std::vector<std::size_t> chain(objects.size(), 1);
  for (std::size_t ai : order) {
    for (std::size_t bi : order) {
      if (ai == bi || site::hom_set(objects[bi], objects[ai]).empty()) continue;
      const RankValue ra = site::rank(objects[ai]);
      const RankValue rb = site::rank(objects[bi]);
      const bool ok = rb < ra;
      rep.instances.push_back({"sub " + objects[bi].key() + " < " + objects[ai].key(),
                               verdict(ok, {{"rank_sub", rb.to_string()}, {"rank", ra.to_string()}})});
      if (ok) chain[ai] = std::max(chain[ai], chain[bi] + 1);
    }
  }
  std::size_t longest = objects.empty() ? 0 : *std::max_element(chain.begin(), chain.end());
  rep.summary = {{"objects", objects.size()}, {"longest_chain", longest}};
  return rep;
}

AuditReport audit_c3_chain(const std::vector<ObjectRef>& chain) {
  AuditReport rep = empty_report(Condition::c3, chain.empty() ? Backend::finsetinj : chain.front().backend(), 0);
  rep.bound_detail = json::array();
  for (const ObjectRef& o : chain) rep.bound_detail.push_back(o.key());
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    site::require_same_backend(chain[k], chain[k + 1]);
    const bool sub = !site::hom_set(chain[k + 1], chain[k]).empty() && !(chain[k] == chain[k + 1]);
    const RankValue ra = site::rank(chain[k]);
    const RankValue rb = site::rank(chain[k + 1]);
    rep.instances.push_back({"sub " + chain[k + 1].key() + " < " + chain[k].key(),
                             verdict(sub && rb < ra, {{"proper_subobject", sub},
                                                      {"rank_sub", rb.to_string()},
                                                      {"rank", ra.to_string()}})});
  }
  rep.summary = {{"chain_length", chain.size()}};
  return rep;
}

AuditReport audit_c4(Backend b, std::size_t bound) {
  const auto objects = audit_objects(b, bound);
  AuditReport rep = empty_report(Condition::c4, b, bound);
  json orders = json::object();
  for (const ObjectRef& o : objects) {
    const std::size_t n = site::aut_group(o).order();
    orders[o.key()] = n;
    rep.instances.push_back({"aut " + o.key(), verdict(n > 0, {{"order", n}})});
  }
  rep.summary = {{"orders", orders}};
  return rep;
}

ParallelExtension extend_parallel_pair(const Morphism& f, const Morphism& alpha, const Morphism& beta) {
  if (!(f.dom() == alpha.dom()) || !(f.dom() == beta.dom()) || !(alpha.cod() == beta.cod()))
    throw CompositionError("extend_parallel_pair: f, alpha, beta must share their domain and alpha, beta their codomain");
  const ObjectRef a = f.dom();
  const Cocone first = site::amalgamate(Span{a, alpha, f});           // v : X -> Y_a, u : B -> Y_a
  const Morphism v = first.from_left;
  const Morphism u = first.from_right;
  if (alpha == beta) return ParallelExtension{first.apex, v, u, u};
  const Cocone second = site::amalgamate(Span{a, site::compose(beta, v), f});  // v' , u'
  const Morphism f_prime = site::compose(v, second.from_left);
  const Morphism alpha_prime = site::compose(u, second.from_left);
  return ParallelExtension{second.apex, f_prime, alpha_prime, second.from_right};
}

}  // namespace atomkit
