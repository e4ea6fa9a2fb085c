#include <algorithm>

#include "atomkit/errors.hpp"
#include "atomkit/itree.hpp"

namespace atomkit::itree {

namespace {

// Bit idx of the infinite path through tail marker s: its explicit address
// followed by zeros.
char branch_bit(const Address& marker, std::size_t idx) {
  return idx < marker.size() ? marker.bits[idx] : '0';
}

Address branch_prefix(const Address& marker, std::size_t len) {
  if (len <= marker.size()) return Address(marker.bits.substr(0, len));
  return Address(marker.bits + std::string(len - marker.size(), '0'));
}

bool lies_on_branch(const Address& a, const Address& marker) {
  return branch_prefix(marker, a.size()) == a;
}

}  // namespace

TreeEmbedding::TreeEmbedding(Unchecked, Tree source, Tree target, std::vector<Address> images,
                             std::vector<int> routes)
    : source_(std::move(source)),
      target_(std::move(target)),
      images_(std::move(images)),
      routes_(std::move(routes)) {}

TreeEmbedding::TreeEmbedding(Tree source, Tree target, std::vector<Address> images,
                             std::vector<int> routes)
    : TreeEmbedding(Unchecked{}, std::move(source), std::move(target), std::move(images),
                    std::move(routes)) {
  validate();
}

void TreeEmbedding::validate() const {
  const std::size_t n = source_.size();
  if (images_.size() != n || routes_.size() != n)
    throw ValidationError("embedding must give one image and one route slot per source node");
  if (!images_[0].empty()) throw ValidationError("embedding must send the root to the root");
  for (std::size_t i = 0; i < n; ++i) {
    const Node& nd = source_.node(static_cast<int>(i));
    const Address& img = images_[i];
    const std::string where = "source node " + std::to_string(i);
    if (!target_.contains(img)) throw ValidationError(where + ": image '" + img.bits + "' is not a target node");
    if (nd.kind != NodeKind::tail && routes_[i] != -1)
      throw ValidationError(where + ": only tail markers have a route");
    if (nd.kind == NodeKind::internal) {
      if (!target_.is_internal_at(img)) throw ValidationError(where + ": internal node sent to a leaf");
      const Address& a = images_[static_cast<std::size_t>(nd.children[0])];
      const Address& b = images_[static_cast<std::size_t>(nd.children[1])];
      const bool ok = (a == img.child(0) && b == img.child(1)) || (a == img.child(1) && b == img.child(0));
      if (!ok) throw ValidationError(where + ": children not sent onto the children of the image");
    } else if (nd.kind == NodeKind::tail) {
      const int s = routes_[i];
      if (s < 0 || static_cast<std::size_t>(s) >= target_.size() || target_.node(s).kind != NodeKind::tail)
        throw ValidationError(where + ": route must name a target tail marker");
      if (target_.node(s).label != nd.label)
        throw ValidationError(where + ": branch label '" + nd.label + "' routed onto branch labeled '" +
                              target_.node(s).label + "'");
      if (!lies_on_branch(img, target_.address(s)))
        throw ValidationError(where + ": image does not lie on the routed branch");
    }
  }
}

TreeEmbedding TreeEmbedding::identity(const Tree& t) {
  std::vector<Address> images;
  std::vector<int> routes(t.size(), -1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    images.push_back(t.address(static_cast<int>(i)));
    if (t.node(static_cast<int>(i)).kind == NodeKind::tail) routes[i] = static_cast<int>(i);
  }
  return TreeEmbedding(Unchecked{}, t, t, std::move(images), std::move(routes));
}

TreeEmbedding TreeEmbedding::from_function(const Tree& source, const Tree& target,
                                           const std::function<Address(const Address&)>& fn) {
  std::vector<Address> images;
  std::vector<int> routes(source.size(), -1);
  const std::size_t deep = target.height() + 2;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Address& a = source.address(static_cast<int>(i));
    images.push_back(fn(a));
    if (source.node(static_cast<int>(i)).kind == NodeKind::tail) {
      const Address far = fn(Address(a.bits + std::string(deep, '0')));
      const auto t = target.branch_tail_at(far);
      if (!t) throw ValidationError("map does not send the branch at '" + a.bits + "' onto a target branch");
      routes[i] = *t;
    }
  }
  return TreeEmbedding(source, target, std::move(images), std::move(routes));
}

Address TreeEmbedding::operator()(const Address& a) const {
  int n = 0;
  std::size_t i = 0;
  const std::string& b = a.bits;
  while (true) {
    const Node& nd = source_.node(n);
    const Address& img = images_[static_cast<std::size_t>(n)];
    if (i == b.size()) return img;
    switch (nd.kind) {
      case NodeKind::leaf:
        throw ValidationError("address '" + a.bits + "' is not a source node");
      case NodeKind::internal:
        n = nd.children[b[i] == '1' ? 1 : 0];
        ++i;
        break;
      case NodeKind::tail: {
        const std::size_t k = b.size() - i;
        for (std::size_t j = i; j + 1 < b.size(); ++j)
          if (b[j] != '0') throw ValidationError("address '" + a.bits + "' is not a source node");
        const Address& marker = target_.address(routes_[static_cast<std::size_t>(n)]);
        const std::size_t len = img.size() + k;
        if (b.back() == '0') return branch_prefix(marker, len);
        Address out = branch_prefix(marker, len - 1);
        out.bits.push_back(branch_bit(marker, len - 1) == '0' ? '1' : '0');
        return out;
      }
    }
  }
}

std::optional<Address> TreeEmbedding::preimage(const Address& t) const {
  int n = 0;
  while (true) {
    const Node& nd = source_.node(n);
    const Address& img = images_[static_cast<std::size_t>(n)];
    if (img == t) return source_.address(n);
    if (!t.has_prefix(img)) return std::nullopt;
    switch (nd.kind) {
      case NodeKind::leaf:
        return std::nullopt;
      case NodeKind::internal: {
        const Address& c0 = images_[static_cast<std::size_t>(nd.children[0])];
        n = t.has_prefix(c0) ? nd.children[0] : nd.children[1];
        break;
      }
      case NodeKind::tail: {
        const Address& marker = target_.address(routes_[static_cast<std::size_t>(n)]);
        const std::size_t len = t.size();
        const std::size_t k = len - img.size();
        const Address& base = source_.address(n);
        if (branch_prefix(marker, len) == t) return Address(base.bits + std::string(k, '0'));
        Address sib = branch_prefix(marker, len - 1);
        sib.bits.push_back(branch_bit(marker, len - 1) == '0' ? '1' : '0');
        if (sib == t) return Address(base.bits + std::string(k - 1, '0') + "1");
        return std::nullopt;
      }
    }
  }
}

bool TreeEmbedding::is_iso() const { return source_.key() == target_.key(); }

TreeEmbedding compose(const TreeEmbedding& f, const TreeEmbedding& g) {
  if (!(f.target() == g.source())) throw CompositionError("tree embeddings do not compose: codomain differs from domain");
  return TreeEmbedding::from_function(f.source(), g.target(),
                                      [&](const Address& a) { return g(f(a)); });
}

TreeEmbedding inverse(const TreeEmbedding& f) {
  if (!f.is_iso()) throw PreconditionError("tree embedding is not an isomorphism");
  return TreeEmbedding::from_function(f.target(), f.source(), [&](const Address& a) {
    auto p = f.preimage(a);
    if (!p) throw PreconditionError("tree embedding is not onto");
    return *p;
  });
}

std::vector<TreeEmbedding> search_embeddings(const Tree& x, const Tree& y, std::size_t limit) {
  std::vector<TreeEmbedding> out;
  const std::size_t n = x.size();
  std::vector<Address> images(n);
  std::vector<int> routes(n, -1);
  const std::vector<int> y_tails = y.tails();
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (out.size() >= limit) return;
    if (i == n) {
      out.push_back(TreeEmbedding(TreeEmbedding::Unchecked{}, x, y, images, routes));
      return;
    }
    const Node& nd = x.node(static_cast<int>(i));
    const Address a = images[i];
    switch (nd.kind) {
      case NodeKind::leaf:
        self(self, i + 1);
        break;
      case NodeKind::internal:
        if (!y.is_internal_at(a)) return;
        for (int swap = 0; swap < 2; ++swap) {
          images[static_cast<std::size_t>(nd.children[0])] = a.child(swap);
          images[static_cast<std::size_t>(nd.children[1])] = a.child(1 - swap);
          self(self, i + 1);
        }
        break;
      case NodeKind::tail:
        for (int s : y_tails) {
          if (y.node(s).label != nd.label || !lies_on_branch(a, y.address(s))) continue;
          routes[i] = s;
          self(self, i + 1);
          routes[i] = -1;
        }
        break;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<TreeEmbedding> enumerate_embeddings(const Tree& x, const Tree& y) {
  auto out = search_embeddings(x, y, static_cast<std::size_t>(-1));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<TreeEmbedding> find_embedding(const Tree& x, const Tree& y) {
  auto out = search_embeddings(x, y, 1);
  if (out.empty()) return std::nullopt;
  return std::move(out.front());
}

}  // namespace atomkit::itree
