#include <algorithm>
#include <map>
#include <set>
#include <string_view>
#include <unordered_map>

#include "atomkit/errors.hpp"
#include "atomkit/itree.hpp"

namespace atomkit::itree {

namespace {

std::string tail_key(const std::string& label) {
  return "T" + std::to_string(label.size()) + ":" + label;
}

// Parses one key produced by Tree::key() into preorder nodes.
int parse_key(std::string_view s, std::size_t& pos, std::vector<Node>& out) {
  const int id = static_cast<int>(out.size());
  out.emplace_back();
  if (pos >= s.size()) throw ValidationError("truncated tree key");
  const char c = s[pos];
  if (c == 'L') {
    ++pos;
    out[static_cast<std::size_t>(id)].kind = NodeKind::leaf;
  } else if (c == 'T') {
    ++pos;
    const std::size_t colon = s.find(':', pos);
    const std::size_t len = std::stoul(std::string(s.substr(pos, colon - pos)));
    out[static_cast<std::size_t>(id)].kind = NodeKind::tail;
    out[static_cast<std::size_t>(id)].label = std::string(s.substr(colon + 1, len));
    pos = colon + 1 + len;
  } else if (c == 'N') {
    pos += 2;  // "N("
    const int a = parse_key(s, pos, out);
    ++pos;  // ','
    const int b = parse_key(s, pos, out);
    ++pos;  // ')'
    out[static_cast<std::size_t>(id)].kind = NodeKind::internal;
    out[static_cast<std::size_t>(id)].children = {a, b};
  } else {
    throw ValidationError("bad tree key");
  }
  return id;
}

std::string node_key(const std::vector<Node>& nodes, int id) {
  const Node& n = nodes[static_cast<std::size_t>(id)];
  switch (n.kind) {
    case NodeKind::leaf:
      return "L";
    case NodeKind::tail:
      return tail_key(n.label);
    case NodeKind::internal: {
      std::string a = node_key(nodes, n.children[0]);
      std::string b = node_key(nodes, n.children[1]);
      if (a == "L" && b[0] == 'T') return b;
      if (b == "L" && a[0] == 'T') return a;
      if (b < a) std::swap(a, b);
      return "N(" + a + "," + b + ")";
    }
  }
  return {};
}

}  // namespace

Tree::Tree() : Tree(std::vector<Node>{Node{}}) {}

Tree::Tree(std::vector<Node> preorder_nodes) : nodes_(std::move(preorder_nodes)) {
  const std::size_t n = nodes_.size();
  addresses_.assign(n, Address{});
  parents_.assign(n, -1);
  on_branch_.assign(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const Node& nd = nodes_[i];
    if (nd.kind != NodeKind::internal) continue;
    for (int c = 0; c < 2; ++c) {
      const auto ch = static_cast<std::size_t>(nd.children[static_cast<std::size_t>(c)]);
      addresses_[ch] = addresses_[i].child(c);
      parents_[ch] = static_cast<int>(i);
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    const Node& nd = nodes_[i];
    if (nd.kind == NodeKind::tail) {
      on_branch_[i] = true;
    } else if (nd.kind == NodeKind::internal) {
      on_branch_[i] = on_branch_[static_cast<std::size_t>(nd.children[0])] ||
                      on_branch_[static_cast<std::size_t>(nd.children[1])];
    }
  }
}

Tree Tree::from_raw(const std::vector<RawNode>& raw, int root) {
  std::unordered_map<int, std::size_t> index;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!index.emplace(raw[i].id, i).second)
      throw ValidationError("duplicate node id " + std::to_string(raw[i].id));
  }
  if (!index.count(root)) throw ValidationError("root id " + std::to_string(root) + " is not a node");
  for (const RawNode& r : raw) {
    const std::string where = "node " + std::to_string(r.id);
    switch (r.kind) {
      case NodeKind::internal:
        if (r.children.size() != 2)
          throw ValidationError(where + ": not full binary (internal node needs exactly two children, has " +
                                std::to_string(r.children.size()) + ")");
        break;
      case NodeKind::leaf:
        if (!r.children.empty()) throw ValidationError(where + ": not full binary (leaf with children)");
        if (r.label) throw ValidationError(where + ": only tail nodes carry a label");
        break;
      case NodeKind::tail:
        if (!r.children.empty()) throw ValidationError(where + ": tail node cannot have explicit children");
        if (!r.label || r.label->empty()) throw ValidationError(where + ": unlabeled tail");
        break;
    }
    for (int c : r.children)
      if (!index.count(c)) throw ValidationError(where + ": child " + std::to_string(c) + " does not exist");
  }

  std::vector<Node> out;
  std::vector<bool> visited(raw.size(), false);
  // Explicit stack: (raw index, slot in parent's children to patch).
  auto visit = [&](auto&& self, int id) -> int {
    const std::size_t i = index.at(id);
    if (visited[i]) throw ValidationError("node " + std::to_string(id) + " is reached twice (cycle or shared child)");
    visited[i] = true;
    const int mine = static_cast<int>(out.size());
    Node nd;
    nd.kind = raw[i].kind;
    if (raw[i].label) nd.label = *raw[i].label;
    out.push_back(nd);
    if (raw[i].kind == NodeKind::internal) {
      const int a = self(self, raw[i].children[0]);
      const int b = self(self, raw[i].children[1]);
      out[static_cast<std::size_t>(mine)].children = {a, b};
    }
    return mine;
  };
  visit(visit, root);
  for (std::size_t i = 0; i < raw.size(); ++i)
    if (!visited[i]) throw ValidationError("node " + std::to_string(raw[i].id) + " is unreachable from the root");
  return Tree(std::move(out));
}

Tree Tree::from_nodes(std::vector<Node> nodes) {
  std::vector<RawNode> raw;
  raw.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    RawNode r;
    r.id = static_cast<int>(i);
    r.kind = nodes[i].kind;
    if (r.kind == NodeKind::internal) r.children = {nodes[i].children[0], nodes[i].children[1]};
    if (r.kind == NodeKind::tail) r.label = nodes[i].label;
    raw.push_back(std::move(r));
  }
  return from_raw(raw, 0);
}

Tree Tree::tail(std::string label) {
  if (label.empty()) throw ValidationError("unlabeled tail");
  Node n;
  n.kind = NodeKind::tail;
  n.label = std::move(label);
  return Tree(std::vector<Node>{n});
}

Tree Tree::join(const Tree& left, const Tree& right) {
  std::vector<Node> out;
  out.push_back(Node{NodeKind::internal, {1, static_cast<int>(1 + left.size())}, {}});
  auto append = [&out](const Tree& t) {
    const int off = static_cast<int>(out.size());
    for (Node n : t.nodes()) {
      if (n.kind == NodeKind::internal) {
        n.children[0] += off;
        n.children[1] += off;
      }
      out.push_back(std::move(n));
    }
  };
  append(left);
  append(right);
  return Tree(std::move(out));
}

std::vector<int> Tree::tails() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].kind == NodeKind::tail) out.push_back(static_cast<int>(i));
  return out;
}

std::size_t Tree::height() const {
  std::size_t h = 0;
  for (const Address& a : addresses_) h = std::max(h, a.size());
  return h;
}

std::optional<Tree::Location> Tree::locate(const Address& a) const {
  int n = 0;
  std::size_t i = 0;
  const std::string& b = a.bits;
  while (true) {
    const Node& nd = nodes_[static_cast<std::size_t>(n)];
    if (i == b.size()) return Location{Location::Kind::explicit_node, n, 0};
    switch (nd.kind) {
      case NodeKind::leaf:
        return std::nullopt;
      case NodeKind::internal:
        if (b[i] != '0' && b[i] != '1') return std::nullopt;
        n = nd.children[b[i] == '1' ? 1 : 0];
        ++i;
        break;
      case NodeKind::tail: {
        const std::size_t k = b.size() - i;
        for (std::size_t j = i; j + 1 < b.size(); ++j)
          if (b[j] != '0') return std::nullopt;
        if (b.back() == '0') return Location{Location::Kind::on_branch, n, k};
        if (b.back() == '1') return Location{Location::Kind::leaf_sibling, n, k};
        return std::nullopt;
      }
    }
  }
}

bool Tree::is_internal_at(const Address& a) const {
  const auto loc = locate(a);
  if (!loc) throw ValidationError("address '" + a.bits + "' is not a node of the tree");
  switch (loc->kind) {
    case Location::Kind::explicit_node:
      return node(loc->node).kind != NodeKind::leaf;
    case Location::Kind::on_branch:
      return true;
    case Location::Kind::leaf_sibling:
      return false;
  }
  return false;
}

std::optional<int> Tree::branch_tail_at(const Address& a) const {
  const auto loc = locate(a);
  if (!loc) return std::nullopt;
  if (loc->kind == Location::Kind::on_branch) return loc->node;
  if (loc->kind == Location::Kind::explicit_node && node(loc->node).kind == NodeKind::tail) return loc->node;
  return std::nullopt;
}

Tree Tree::subtree_at(const Address& a) const {
  const auto loc = locate(a);
  if (!loc) throw ValidationError("address '" + a.bits + "' is not a node of the tree");
  if (loc->kind == Location::Kind::on_branch) return Tree::tail(node(loc->node).label);
  if (loc->kind == Location::Kind::leaf_sibling) return Tree::leaf();
  std::vector<Node> out;
  auto copy = [&](auto&& self, int id) -> int {
    const int mine = static_cast<int>(out.size());
    out.push_back(node(id));
    if (node(id).kind == NodeKind::internal) {
      const int c0 = self(self, node(id).children[0]);
      const int c1 = self(self, node(id).children[1]);
      out[static_cast<std::size_t>(mine)].children = {c0, c1};
    }
    return mine;
  };
  copy(copy, loc->node);
  return Tree(std::move(out));
}

std::string Tree::key() const { return node_key(nodes_, 0); }

Tree canonical(const Tree& t) {
  const std::string k = t.key();
  std::vector<Node> nodes;
  std::size_t pos = 0;
  parse_key(k, pos, nodes);
  return Tree::from_nodes(std::move(nodes));
}

Tree validate_tree(const std::vector<RawNode>& nodes, int root) {
  return canonical(Tree::from_raw(nodes, root));
}

TreeStats tree_stats(const Tree& t) {
  TreeStats s;
  s.branch_count = t.tails().size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int id = static_cast<int>(i);
    const int p = t.parent(id);
    if (p < 0 ? !t.on_branch(id) : !t.on_branch(p)) ++s.f_count;
  }
  s.rank = RankValue{{s.branch_count, s.f_count}};
  return s;
}

std::vector<Tree> trees_up_to(std::size_t max_tails, std::size_t max_nodes,
                              const std::vector<std::string>& labels) {
  struct Entry {
    std::string key;
    std::size_t tails;
  };
  const std::size_t max_leaves = (max_nodes + 1) / 2;
  std::vector<std::vector<Entry>> by_leaves(max_leaves + 1);
  if (max_leaves >= 1) {
    by_leaves[1].push_back({"L", 0});
    if (max_tails >= 1) {
      std::set<std::string> uniq(labels.begin(), labels.end());
      for (const std::string& l : uniq) by_leaves[1].push_back({tail_key(l), 1});
    }
  }
  for (std::size_t k = 2; k <= max_leaves; ++k) {
    for (std::size_t k1 = 1; k1 <= k / 2; ++k1) {
      const std::size_t k2 = k - k1;
      for (const Entry& a : by_leaves[k1]) {
        for (const Entry& b : by_leaves[k2]) {
          if (k1 == k2 && b.key < a.key) continue;
          if (a.tails + b.tails > max_tails) continue;
          if ((a.key == "L" && b.key[0] == 'T') || (b.key == "L" && a.key[0] == 'T')) continue;
          const std::string& lo = std::min(a.key, b.key);
          const std::string& hi = std::max(a.key, b.key);
          by_leaves[k].push_back({"N(" + lo + "," + hi + ")", a.tails + b.tails});
        }
      }
    }
  }
  std::vector<Tree> out;
  for (const auto& level : by_leaves) {
    for (const Entry& e : level) {
      std::vector<Node> nodes;
      std::size_t pos = 0;
      parse_key(e.key, pos, nodes);
      out.push_back(Tree::from_nodes(std::move(nodes)));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace atomkit::itree
