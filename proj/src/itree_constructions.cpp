#include <map>

#include "atomkit/errors.hpp"
#include "atomkit/itree.hpp"

namespace atomkit::itree {

namespace {

// Accumulates nodes in preorder.
class Builder {
 public:
  int add(NodeKind kind, std::string label = {}) {
    nodes_.push_back(Node{kind, {-1, -1}, std::move(label)});
    return static_cast<int>(nodes_.size()) - 1;
  }
  void set_children(int id, int a, int b) { nodes_[static_cast<std::size_t>(id)].children = {a, b}; }
  int append(const Tree& t) {
    const int off = static_cast<int>(nodes_.size());
    for (Node n : t.nodes()) {
      if (n.kind == NodeKind::internal) {
        n.children[0] += off;
        n.children[1] += off;
      }
      nodes_.push_back(std::move(n));
    }
    return off;
  }
  std::size_t size() const { return nodes_.size(); }
  Tree finish() { return Tree::from_nodes(std::move(nodes_)); }

 private:
  std::vector<Node> nodes_;
};

// Longest recorded prefix of a, with the rest of a appended to its image.
Address lookup_prefix(const std::map<Address, Address>& m, const Address& a) {
  for (std::size_t len = a.size() + 1; len-- > 0;) {
    auto it = m.find(Address(a.bits.substr(0, len)));
    if (it != m.end()) return Address(it->second.bits + a.bits.substr(len));
  }
  throw ValidationError("address '" + a.bits + "' has no recorded image");
}

// Follows a through the explicit nodes of t; the recorded image of the last
// explicit node reached is extended by the unconsumed bits.
Address walk_records(const Tree& t, const std::vector<Address>& rec, const Address& a) {
  int n = 0;
  std::size_t i = 0;
  while (true) {
    const Node& nd = t.node(n);
    if (i == a.size() || nd.kind == NodeKind::tail)
      return Address(rec[static_cast<std::size_t>(n)].bits + a.bits.substr(i));
    if (nd.kind == NodeKind::leaf) throw ValidationError("address '" + a.bits + "' leaves the tree");
    n = nd.children[a.bits[i] == '1' ? 1 : 0];
    ++i;
  }
}

// Canonical form of raw together with an isomorphism raw -> canonical.
std::pair<Tree, TreeEmbedding> canonicalize(const Tree& raw) {
  Tree c = canonical(raw);
  auto iso = find_embedding(raw, c);
  if (!iso) throw Error("internal: canonical form is not isomorphic to its source");
  return {std::move(c), std::move(*iso)};
}

std::size_t copy_size(const Tree& t, const Address& a) {
  const auto loc = t.locate(a);
  if (loc->kind != Tree::Location::Kind::explicit_node) return 1;
  return t.subtree_at(a).size();
}

}  // namespace

TreePullback tree_pullback(const TreeEmbedding& f, const TreeEmbedding& g) {
  if (!(f.target() == g.target())) throw CompositionError("pullback needs a common codomain");
  const Tree& x = f.source();
  const Tree& y = g.source();
  Builder b;
  std::vector<Address> ry;
  auto build = [&](auto&& self, const Address& xa, const Address& ya) -> int {
    const bool xin = x.is_internal_at(xa);
    const bool yin = y.is_internal_at(ya);
    if (!xin || !yin) {
      ry.push_back(ya);
      return b.add(NodeKind::leaf);
    }
    const auto tx = x.branch_tail_at(xa);
    const auto ty = y.branch_tail_at(ya);
    if (tx && ty && f.routes()[static_cast<std::size_t>(*tx)] == g.routes()[static_cast<std::size_t>(*ty)]) {
      ry.push_back(ya);
      return b.add(NodeKind::tail, x.node(*tx).label);
    }
    ry.push_back(ya);
    const int id = b.add(NodeKind::internal);
    int kids[2];
    for (int c = 0; c < 2; ++c) {
      const Address xc = xa.child(c);
      const Address yc = g(ya.child(0)) == f(xc) ? ya.child(0) : ya.child(1);
      kids[c] = self(self, xc, yc);
    }
    b.set_children(id, kids[0], kids[1]);
    return id;
  };
  build(build, Address{}, Address{});
  const Tree raw = b.finish();
  auto raw_to_x = TreeEmbedding::from_function(raw, x, [](const Address& a) { return a; });
  auto raw_to_y = TreeEmbedding::from_function(raw, y, [&](const Address& a) { return walk_records(raw, ry, a); });
  auto [apex, to_canon] = canonicalize(raw);
  const auto from_canon = inverse(to_canon);
  return TreePullback{apex, compose(from_canon, raw_to_x), compose(from_canon, raw_to_y)};
}

TreeAmalgam tree_amalgamate(const TreeEmbedding& a_emb, const TreeEmbedding& b_emb) {
  if (!(a_emb.source() == b_emb.source())) throw CompositionError("span legs must share their domain");
  const Tree& x = a_emb.source();
  const Tree& ta = a_emb.target();
  const Tree& tb = b_emb.target();

  std::map<std::pair<Address, Address>, std::size_t> memo;
  auto free_size = [&](auto&& self, const Address& a, const Address& bb) -> std::size_t {
    const bool ain = ta.is_internal_at(a);
    const bool bin = tb.is_internal_at(bb);
    if (!ain && !bin) return 1;
    if (!ain) return copy_size(tb, bb);
    if (!bin) return copy_size(ta, a);
    const auto sa = ta.branch_tail_at(a);
    const auto sb = tb.branch_tail_at(bb);
    if (sa && sb) return ta.node(*sa).label == tb.node(*sb).label ? 1 : 3;
    const auto key = std::make_pair(a, bb);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::size_t best = static_cast<std::size_t>(-1);
    for (int p = 0; p < 2; ++p)
      best = std::min(best, 1 + self(self, a.child(0), bb.child(p)) + self(self, a.child(1), bb.child(1 - p)));
    memo[key] = best;
    return best;
  };

  Builder b;
  // Recorded (C node, A address) and (C node, B address) pairs.
  std::vector<std::pair<int, Address>> rec_a, rec_b;
  auto copy = [&](auto&& self, const Tree& t, const Address& at, std::vector<std::pair<int, Address>>& rec) -> int {
    const auto loc = t.locate(at);
    if (loc->kind == Tree::Location::Kind::leaf_sibling) {
      const int id = b.add(NodeKind::leaf);
      rec.emplace_back(id, at);
      return id;
    }
    if (loc->kind == Tree::Location::Kind::on_branch) {
      const int id = b.add(NodeKind::tail, t.node(loc->node).label);
      rec.emplace_back(id, at);
      return id;
    }
    const Node& nd = t.node(loc->node);
    const int id = b.add(nd.kind, nd.label);
    rec.emplace_back(id, at);
    if (nd.kind == NodeKind::internal) {
      const int c0 = self(self, t, at.child(0), rec);
      const int c1 = self(self, t, at.child(1), rec);
      b.set_children(id, c0, c1);
    }
    return id;
  };
  auto merge = [&](auto&& self, const std::optional<Address>& xa, const Address& a, const Address& bb) -> int {
    const bool forced = xa && x.is_internal_at(*xa);
    const bool ain = ta.is_internal_at(a);
    const bool bin = tb.is_internal_at(bb);
    if (!forced) {
      if (!ain) {
        const int id = copy(copy, tb, bb, rec_b);
        rec_a.emplace_back(id, a);
        return id;
      }
      if (!bin) {
        const int id = copy(copy, ta, a, rec_a);
        rec_b.emplace_back(id, bb);
        return id;
      }
    }
    const auto sa = ta.branch_tail_at(a);
    const auto sb = tb.branch_tail_at(bb);
    const bool both_tails = sa && sb;
    if (both_tails && (forced ? x.branch_tail_at(*xa).has_value() : ta.node(*sa).label == tb.node(*sb).label)) {
      const int id = b.add(NodeKind::tail, ta.node(*sa).label);
      rec_a.emplace_back(id, a);
      rec_b.emplace_back(id, bb);
      return id;
    }
    const int id = b.add(NodeKind::internal);
    rec_a.emplace_back(id, a);
    rec_b.emplace_back(id, bb);
    int kids[2];
    if (forced) {
      for (int c = 0; c < 2; ++c) {
        const Address xc = xa->child(c);
        kids[c] = self(self, std::optional<Address>(xc), a_emb(xc), b_emb(xc));
      }
    } else {
      int pairing = 0;
      if (both_tails) {
        pairing = 1;  // branch of A against the leaf of B and vice versa
      } else {
        const std::size_t straight = free_size(free_size, a.child(0), bb.child(0)) + free_size(free_size, a.child(1), bb.child(1));
        const std::size_t crossed = free_size(free_size, a.child(0), bb.child(1)) + free_size(free_size, a.child(1), bb.child(0));
        pairing = crossed < straight ? 1 : 0;
      }
      for (int c = 0; c < 2; ++c) kids[c] = self(self, std::nullopt, a.child(c), bb.child(c ^ pairing));
    }
    b.set_children(id, kids[0], kids[1]);
    return id;
  };
  merge(merge, std::optional<Address>(Address{}), Address{}, Address{});
  const Tree raw = b.finish();
  std::map<Address, Address> map_a, map_b;
  for (const auto& [id, addr] : rec_a) map_a.emplace(addr, raw.address(id));
  for (const auto& [id, addr] : rec_b) map_b.emplace(addr, raw.address(id));
  auto a_to_raw = TreeEmbedding::from_function(ta, raw, [&](const Address& al) { return lookup_prefix(map_a, al); });
  auto b_to_raw = TreeEmbedding::from_function(tb, raw, [&](const Address& al) { return lookup_prefix(map_b, al); });
  auto [apex, to_canon] = canonicalize(raw);
  return TreeAmalgam{apex, compose(a_to_raw, to_canon), compose(b_to_raw, to_canon)};
}

TreeEmbedding c2prime_witness(const TreeEmbedding& x_in, const TreeEmbedding& y_in,
                              const TreeEmbedding& u, const TreeEmbedding& v) {
  if (!(x_in.target() == y_in.target()) || !(x_in.target() == u.source()) || !(u.source() == v.source()) ||
      !(u.target() == v.target())) {
    throw CompositionError("c2prime witness needs X -> Z, Y -> Z and u, v : Z -> A");
  }
  const auto pb = tree_pullback(x_in, y_in);
  const auto meet = compose(pb.to_first, x_in);
  if (!(compose(meet, u) == compose(meet, v)))
    throw PreconditionError("u and v do not coincide on the intersection");
  const Tree& x = x_in.source();
  // Nodes of the intersection that are leaves of X.
  auto in_l = [&](const Address& p) {
    const auto xp = x_in.preimage(p);
    return xp && !x.is_internal_at(*xp) && meet.preimage(p).has_value();
  };
  return TreeEmbedding::from_function(u.source(), u.target(), [&](const Address& z) {
    for (std::size_t len = 0; len <= z.size(); ++len)
      if (in_l(Address(z.bits.substr(0, len)))) return v(z);
    return u(z);
  });
}

RegularMonoWitness regular_mono_witness(const TreeEmbedding& emb) {
  const Tree& x = emb.source();
  const Tree& y = emb.target();
  struct Doubled {
    Address at;
    TreeEmbedding leg0;
    TreeEmbedding leg1;
  };
  std::vector<Doubled> doubled;
  Builder b;
  auto build = [&](auto&& self, const Address& ya) -> int {
    const auto px = emb.preimage(ya);
    const bool yin = y.is_internal_at(ya);
    if (!yin) return b.add(NodeKind::leaf);
    if (px && !x.is_internal_at(*px)) {
      // Replace the hanging subtree by two copies of an amalgam of its halves.
      const Tree left = y.subtree_at(ya.child(0));
      const Tree right = y.subtree_at(ya.child(1));
      const Tree point;
      const auto am = tree_amalgamate(TreeEmbedding::from_function(point, left, [](const Address& a) { return a; }),
                                      TreeEmbedding::from_function(point, right, [](const Address& a) { return a; }));
      doubled.push_back(Doubled{ya, am.from_first, am.from_second});
      const int id = b.add(NodeKind::internal);
      const int c0 = b.append(am.apex);
      const int c1 = b.append(am.apex);
      b.set_children(id, c0, c1);
      return id;
    }
    const auto ty = y.branch_tail_at(ya);
    if (ty && (!px || x.branch_tail_at(*px))) return b.add(NodeKind::tail, y.node(*ty).label);
    const int id = b.add(NodeKind::internal);
    const int c0 = self(self, ya.child(0));
    const int c1 = self(self, ya.child(1));
    b.set_children(id, c0, c1);
    return id;
  };
  build(build, Address{});
  const Tree raw = b.finish();
  auto side = [&](bool swapped) {
    return TreeEmbedding::from_function(y, raw, [&, swapped](const Address& a) {
      for (const Doubled& d : doubled) {
        if (a.size() > d.at.size() && a.has_prefix(d.at)) {
          const int c = a.bits[d.at.size()] == '1' ? 1 : 0;
          const Address rest(a.bits.substr(d.at.size() + 1));
          const Address inner = c == 0 ? d.leg0(rest) : d.leg1(rest);
          const int slot = swapped ? 1 - c : c;
          return Address(d.at.bits + (slot ? "1" : "0") + inner.bits);
        }
      }
      return a;
    });
  };
  const auto e1 = side(false);
  const auto e2 = side(true);
  auto [target, to_canon] = canonicalize(raw);
  return RegularMonoWitness{target, compose(e1, to_canon), compose(e2, to_canon)};
}

TreeEmbedding equalizer(const TreeEmbedding& e1, const TreeEmbedding& e2) {
  if (!(e1.source() == e2.source()) || !(e1.target() == e2.target()))
    throw CompositionError("equalizer needs a parallel pair");
  const Tree& y = e1.source();
  Builder b;
  auto build = [&](auto&& self, const Address& ya) -> int {
    if (!y.is_internal_at(ya)) return b.add(NodeKind::leaf);
    if (const auto t = y.branch_tail_at(ya);
        t && e1.routes()[static_cast<std::size_t>(*t)] == e2.routes()[static_cast<std::size_t>(*t)]) {
      return b.add(NodeKind::tail, y.node(*t).label);
    }
    if (!(e1(ya.child(0)) == e2(ya.child(0)))) return b.add(NodeKind::leaf);
    const int id = b.add(NodeKind::internal);
    const int c0 = self(self, ya.child(0));
    const int c1 = self(self, ya.child(1));
    b.set_children(id, c0, c1);
    return id;
  };
  build(build, Address{});
  const Tree raw = b.finish();
  const auto incl = TreeEmbedding::from_function(raw, y, [](const Address& a) { return a; });
  auto [eq, to_canon] = canonicalize(raw);
  return compose(inverse(to_canon), incl);
}

bool same_image(const TreeEmbedding& a, const TreeEmbedding& b) {
  if (!(a.target() == b.target())) return false;
  const auto pb = tree_pullback(a, b);
  const std::string k = pb.apex.key();
  return k == a.source().key() && k == b.source().key();
}

}  // namespace atomkit::itree
