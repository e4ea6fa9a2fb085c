#include "atomkit/json_io.hpp"

#include <map>

#include "atomkit/errors.hpp"

namespace atomkit::json_io {

namespace {

using itree::Address;
using itree::NodeKind;
using itree::Tree;
using itree::TreeEmbedding;

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ValidationError(where + ": missing field '" + name + "'");
  return *it;
}

template <class T>
T get_as(const json& j, const char* name, const std::string& where) {
  const json& v = field(j, name, where);
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw ValidationError(where + ": field '" + name + "' has the wrong type");
  }
}

std::string kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::internal: return "internal";
    case NodeKind::leaf: return "leaf";
    default: return "tail";
  }
}

NodeKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "internal") return NodeKind::internal;
  if (s == "leaf") return NodeKind::leaf;
  if (s == "tail") return NodeKind::tail;
  throw ValidationError(where + ": field 'kind' must be internal, leaf or tail");
}

// Tree in the child order of the document, with the map from document ids to
// preorder ids.
struct ParsedTree {
  Tree tree;
  std::map<int, int> ids;
};

ParsedTree parse_tree(const json& j, const std::string& where) {
  if (j.contains("site") && get_as<std::string>(j, "site", where) != "itree")
    throw BackendError(where + ": expected an itree object, got site '" + j["site"].get<std::string>() + "'");
  const int root = get_as<int>(j, "root", where);
  const json& nodes = field(j, "nodes", where);
  if (!nodes.is_array()) throw ValidationError(where + ": field 'nodes' must be an array");
  std::vector<itree::RawNode> raw;
  std::map<int, const itree::RawNode*> by_id;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string w = where + ".nodes[" + std::to_string(k) + "]";
    itree::RawNode n;
    n.id = get_as<int>(nodes[k], "id", w);
    n.kind = parse_kind(get_as<std::string>(nodes[k], "kind", w), w);
    if (nodes[k].contains("children")) n.children = get_as<std::vector<int>>(nodes[k], "children", w);
    if (nodes[k].contains("label")) n.label = get_as<std::string>(nodes[k], "label", w);
    raw.push_back(std::move(n));
  }
  ParsedTree out{Tree::from_raw(raw, root), {}};
  for (const auto& n : raw) by_id[n.id] = &n;
  // from_raw numbers nodes in preorder, left child first.
  std::vector<int> stack{root};
  int next = 0;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    out.ids[id] = next++;
    const auto* n = by_id.at(id);
    if (n->kind == NodeKind::internal) {
      stack.push_back(n->children[1]);
      stack.push_back(n->children[0]);
    }
  }
  return out;
}

TreeEmbedding to_canonical(const Tree& t) {
  auto iso = itree::find_embedding(t, itree::canonical(t));
  if (!iso) throw Error("internal: no isomorphism onto the canonical form");
  return *iso;
}

int to_int_key(const std::string& key, const std::string& where) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(key, &pos);
    if (pos == key.size()) return v;
  } catch (const std::exception&) {
  }
  throw ValidationError(where + ": key '" + key + "' is not a node id");
}

Morphism decode_embedding(const json& j) {
  const std::string where = "embedding";
  ParsedTree src = parse_tree(field(j, "source", where), where + ".source");
  ParsedTree tgt = parse_tree(field(j, "target", where), where + ".target");
  const json& images = field(j, "explicit_images", where);
  if (!images.is_object()) throw ValidationError(where + ": field 'explicit_images' must be an object");
  std::vector<Address> addr(src.tree.size());
  std::vector<bool> seen(src.tree.size(), false);
  for (const auto& [key, val] : images.items()) {
    const int id = to_int_key(key, where + ".explicit_images");
    auto it = src.ids.find(id);
    if (it == src.ids.end()) throw ValidationError(where + ".explicit_images: unknown source node " + key);
    if (!val.is_string()) throw ValidationError(where + ".explicit_images: value for " + key + " must be a bit string");
    addr[static_cast<std::size_t>(it->second)] = Address(val.get<std::string>());
    seen[static_cast<std::size_t>(it->second)] = true;
  }
  for (std::size_t k = 0; k < seen.size(); ++k)
    if (!seen[k]) throw ValidationError(where + ".explicit_images: missing image for a source node");
  std::vector<int> routes(src.tree.size(), -1);
  if (j.contains("tail_routes")) {
    const json& tr = j["tail_routes"];
    if (!tr.is_object()) throw ValidationError(where + ": field 'tail_routes' must be an object");
    for (const auto& [key, val] : tr.items()) {
      const int id = to_int_key(key, where + ".tail_routes");
      auto it = src.ids.find(id);
      if (it == src.ids.end()) throw ValidationError(where + ".tail_routes: unknown source node " + key);
      if (!val.is_number_integer()) throw ValidationError(where + ".tail_routes: value for " + key + " must be a node id");
      auto jt = tgt.ids.find(val.get<int>());
      if (jt == tgt.ids.end()) throw ValidationError(where + ".tail_routes: unknown target node " + val.dump());
      routes[static_cast<std::size_t>(it->second)] = jt->second;
    }
  }
  TreeEmbedding raw_emb(src.tree, tgt.tree, std::move(addr), std::move(routes));
  return itree::compose(itree::compose(itree::inverse(to_canonical(src.tree)), raw_emb), to_canonical(tgt.tree));
}

}  // namespace

json encode(const ObjectRef& o) {
  if (o.backend() == Backend::finsetinj) return {{"site", "finsetinj"}, {"size", o.finset().size}};
  const Tree& t = o.tree();
  json nodes = json::array();
  for (std::size_t id = 0; id < t.size(); ++id) {
    const auto& n = t.node(static_cast<int>(id));
    json e = {{"id", id}, {"kind", kind_name(n.kind)}};
    if (n.kind == NodeKind::internal) e["children"] = {n.children[0], n.children[1]};
    if (n.kind == NodeKind::tail) e["label"] = n.label;
    nodes.push_back(std::move(e));
  }
  return {{"site", "itree"}, {"root", 0}, {"nodes", std::move(nodes)}};
}

json encode(const Morphism& m) {
  if (m.backend() == Backend::finsetinj) {
    const auto& f = m.injection();
    return {{"dom", f.dom_size()}, {"cod", f.cod_size()}, {"map", f.map()}};
  }
  const auto& e = m.embedding();
  json images = json::object();
  json routes = json::object();
  for (std::size_t id = 0; id < e.images().size(); ++id) {
    images[std::to_string(id)] = e.images()[id].bits;
    if (e.routes()[id] >= 0) routes[std::to_string(id)] = e.routes()[id];
  }
  return {{"source", encode(ObjectRef(e.source()))},
          {"target", encode(ObjectRef(e.target()))},
          {"explicit_images", std::move(images)},
          {"tail_routes", std::move(routes)}};
}

json encode(const AutGroup& g) {
  json gens = json::array();
  for (const auto& m : g.generators) gens.push_back(encode(m));
  return {{"object", encode(g.object)}, {"order", g.order()}, {"generators", std::move(gens)}};
}

ObjectRef decode_object(const json& j, std::optional<Backend> expected) {
  const std::string site = get_as<std::string>(j, "site", "object");
  const Backend b = backend_from_string(site);
  if (expected && *expected != b)
    throw BackendError("object: site '" + site + "' does not match the selected site '" + to_string(*expected) + "'");
  if (b == Backend::finsetinj) {
    const json& size = field(j, "size", "object");
    if (!size.is_number_unsigned()) throw ValidationError("object: field 'size' must be a natural number");
    return finset::FinSet{size.get<std::size_t>()};
  }
  return itree::canonical(parse_tree(j, "object").tree);
}

Morphism decode_morphism(const json& j, Backend backend) {
  if (!j.is_object()) throw ValidationError("morphism: expected a JSON object");
  const bool tree_doc = j.contains("source");
  if (tree_doc != (backend == Backend::itree))
    throw BackendError(std::string("morphism: document is a ") + (tree_doc ? "itree" : "finsetinj") +
                       " arrow but the selected site is " + to_string(backend));
  if (tree_doc) return decode_embedding(j);
  const json& dom = field(j, "dom", "morphism");
  const json& cod = field(j, "cod", "morphism");
  if (!dom.is_number_unsigned()) throw ValidationError("morphism: field 'dom' must be a natural number");
  if (!cod.is_number_unsigned()) throw ValidationError("morphism: field 'cod' must be a natural number");
  return finset::make_injection(dom.get<std::size_t>(), cod.get<std::size_t>(),
                                get_as<std::vector<std::size_t>>(j, "map", "morphism"));
}

json encode(const FormalAtom& a) {
  json gens = json::array();
  for (const auto& m : a.group.generators) gens.push_back(encode(m));
  return {{"base", encode(a.base)}, {"generators", std::move(gens)}};
}

FormalAtom decode_atom(const json& j, Backend backend) {
  const ObjectRef base = decode_object(field(j, "base", "atom"), backend);
  std::vector<Morphism> gens;
  if (j.contains("generators")) {
    const json& g = j["generators"];
    if (!g.is_array()) throw ValidationError("atom: field 'generators' must be an array");
    for (const json& m : g) gens.push_back(decode_morphism(m, backend));
  }
  return make_atom(base, gens);
}

json encode(const PresheafFragment& f) {
  json objects = json::array();
  json elements = json::object();
  json action = json::object();
  for (std::size_t i = 0; i < f.objects().size(); ++i) {
    objects.push_back(encode(f.objects()[i]));
    elements[f.objects()[i].key()] = f.elements(i);
  }
  for (const auto& [m, map] : f.actions()) action[m.key()] = map;
  return {{"site", to_string(f.backend())}, {"objects", objects}, {"elements", elements}, {"action", action}};
}

PresheafFragment decode_fragment(const json& j, Backend backend) {
  const std::string where = "fragment";
  if (j.contains("site")) {
    const Backend b = backend_from_string(get_as<std::string>(j, "site", where));
    if (b != backend)
      throw BackendError(where + ": site '" + to_string(b) + "' does not match the selected site '" +
                         to_string(backend) + "'");
  }
  const json& objs = field(j, "objects", where);
  if (!objs.is_array() || objs.empty()) throw ValidationError(where + ": field 'objects' must be a non-empty array");
  std::vector<ObjectRef> objects;
  for (const json& o : objs) objects.push_back(decode_object(o, backend));
  const json& els = field(j, "elements", where);
  std::vector<std::vector<std::string>> elements;
  for (const ObjectRef& o : objects) {
    const std::string w = where + ".elements";
    elements.push_back(get_as<std::vector<std::string>>(els, o.key().c_str(), w));
  }
  const json& act = field(j, "action", where);
  if (!act.is_object()) throw ValidationError(where + ": field 'action' must be an object");
  std::map<Morphism, std::vector<std::size_t>> action;
  for (const ObjectRef& a : objects)
    for (const ObjectRef& b : objects)
      for (const Morphism& m : site::hom_set(a, b))
        action.emplace(m, get_as<std::vector<std::size_t>>(act, m.key().c_str(), where + ".action"));
  if (action.size() != act.size()) throw ValidationError(where + ".action: lists an arrow between unlisted objects");
  return PresheafFragment(std::move(objects), std::move(elements), std::move(action));
}

}  // namespace atomkit::json_io
