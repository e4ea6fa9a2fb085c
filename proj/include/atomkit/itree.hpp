#pragma once

// Finitary labeled binary trees and their embeddings.
//
// A Tree is a finite encoding of a full binary tree with finitely many labeled
// infinite branches. Explicit nodes are internal (two children), leaf, or tail.
// A tail marker stands for an infinite branch carrying its label: the marker
// itself is the first node of the continuation, and every node of the
// continuation has one child that continues the branch and one leaf child.
//
// Nodes of the denoted infinite tree are addressed by their path from the root
// (Address). Below a tail marker, bit '0' follows the branch and bit '1' steps
// to the leaf sibling.

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "atomkit/rank.hpp"

namespace atomkit::itree {

enum class NodeKind { internal, leaf, tail };

struct Node {
  NodeKind kind = NodeKind::leaf;
  std::array<int, 2> children{-1, -1};
  std::string label;  // non-empty iff kind == tail

  auto operator<=>(const Node&) const = default;
};

struct Address {
  std::string bits;

  Address() = default;
  explicit Address(std::string b) : bits(std::move(b)) {}

  std::size_t size() const { return bits.size(); }
  bool empty() const { return bits.empty(); }
  Address child(int c) const { return Address(bits + (c ? '1' : '0')); }
  bool has_prefix(const Address& p) const {
    return p.size() <= size() && bits.compare(0, p.size(), p.bits) == 0;
  }

  auto operator<=>(const Address&) const = default;
};

/// Node record as written in input files; ids are arbitrary.
struct RawNode {
  int id = 0;
  NodeKind kind = NodeKind::leaf;
  std::vector<int> children;
  std::optional<std::string> label;
};

class Tree {
 public:
  /// The one-node tree.
  Tree();

  /// Checks the finitary-tree invariants and renumbers nodes in preorder,
  /// keeping the given child order. Throws ValidationError.
  static Tree from_raw(const std::vector<RawNode>& nodes, int root);
  /// Nodes indexed by id with root 0.
  static Tree from_nodes(std::vector<Node> nodes);

  static Tree leaf() { return Tree(); }
  static Tree tail(std::string label);
  static Tree join(const Tree& left, const Tree& right);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(int id) const { return nodes_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const { return nodes_.size(); }
  const Address& address(int id) const { return addresses_.at(static_cast<std::size_t>(id)); }
  int parent(int id) const { return parents_.at(static_cast<std::size_t>(id)); }
  std::vector<int> tails() const;
  /// Longest explicit address.
  std::size_t height() const;

  struct Location {
    enum class Kind { explicit_node, on_branch, leaf_sibling };
    Kind kind;
    int node;           // explicit node id, or the tail marker id
    std::size_t depth;  // steps below the tail marker; 0 for explicit nodes
  };
  std::optional<Location> locate(const Address& a) const;
  bool contains(const Address& a) const { return locate(a).has_value(); }
  /// Whether the denoted node at a has two children. Throws on a bad address.
  bool is_internal_at(const Address& a) const;
  /// The tail marker whose branch passes through a, when a is the marker or
  /// lies on its continuation.
  std::optional<int> branch_tail_at(const Address& a) const;
  /// The denoted subtree below a, re-rooted at a (child order kept).
  Tree subtree_at(const Address& a) const;

  /// Some tail marker is a descendant-or-self of the node.
  bool on_branch(int id) const { return on_branch_.at(static_cast<std::size_t>(id)); }

  /// Isomorphism invariant: equal keys iff isomorphic trees.
  std::string key() const;

  bool operator==(const Tree& o) const { return nodes_ == o.nodes_; }
  auto operator<=>(const Tree& o) const { return nodes_ <=> o.nodes_; }

 private:
  explicit Tree(std::vector<Node> preorder_nodes);

  std::vector<Node> nodes_;
  std::vector<Address> addresses_;
  std::vector<int> parents_;
  std::vector<bool> on_branch_;
};

/// Canonical representative of the isomorphism class: an internal node with a
/// leaf child and a tail child is folded into a tail, children are sorted by
/// key, nodes are numbered in preorder.
Tree canonical(const Tree& t);

/// Validation entry point for raw input; returns the canonical tree.
Tree validate_tree(const std::vector<RawNode>& nodes, int root);

struct TreeStats {
  std::size_t branch_count = 0;
  std::size_t f_count = 0;
  RankValue rank;
};

/// F counts explicit nodes whose parent lies on no branch, plus the root when
/// the root lies on no branch.
TreeStats tree_stats(const Tree& t);

/// All canonical trees with at most max_tails tail markers and max_nodes
/// explicit nodes (counted in canonical form) over the given labels, sorted.
std::vector<Tree> trees_up_to(std::size_t max_tails, std::size_t max_nodes,
                              const std::vector<std::string>& labels);

class TreeEmbedding {
 public:
  /// images[x] is the target address of source node x; routes[x] is the
  /// target tail followed by the branch of source tail x, and -1 for other
  /// nodes. Throws ValidationError when this is not an embedding.
  TreeEmbedding(Tree source, Tree target, std::vector<Address> images, std::vector<int> routes);

  static TreeEmbedding identity(const Tree& t);
  /// Normal form of the embedding whose action on addresses is fn.
  static TreeEmbedding from_function(const Tree& source, const Tree& target,
                                     const std::function<Address(const Address&)>& fn);

  const Tree& source() const { return source_; }
  const Tree& target() const { return target_; }
  const std::vector<Address>& images() const { return images_; }
  const std::vector<int>& routes() const { return routes_; }

  /// Image of any denoted source node.
  Address operator()(const Address& a) const;
  std::optional<Address> preimage(const Address& a) const;

  bool is_iso() const;

  auto operator<=>(const TreeEmbedding&) const = default;

 private:
  struct Unchecked {};
  TreeEmbedding(Unchecked, Tree source, Tree target, std::vector<Address> images,
                std::vector<int> routes);
  void validate() const;

  Tree source_;
  Tree target_;
  std::vector<Address> images_;
  std::vector<int> routes_;

  friend std::vector<TreeEmbedding> search_embeddings(const Tree&, const Tree&, std::size_t);
};

/// Embeddings x -> y in search order, stopping after limit of them.
std::vector<TreeEmbedding> search_embeddings(const Tree& x, const Tree& y, std::size_t limit);

/// f first, then g.
TreeEmbedding compose(const TreeEmbedding& f, const TreeEmbedding& g);
TreeEmbedding inverse(const TreeEmbedding& f);

/// All embeddings x -> y, sorted. Root goes to root, each internal node picks
/// one of two child assignments, each tail picks a target branch with the same
/// label.
std::vector<TreeEmbedding> enumerate_embeddings(const Tree& x, const Tree& y);

/// First embedding x -> y in search order, if any.
std::optional<TreeEmbedding> find_embedding(const Tree& x, const Tree& y);

// ---------------------------------------------------------------------------
// Constructions

struct TreePullback {
  Tree apex;
  TreeEmbedding to_first;   // apex -> source of f
  TreeEmbedding to_second;  // apex -> source of g
};

/// Intersection of the two images with the induced structure; canonical apex.
TreePullback tree_pullback(const TreeEmbedding& f, const TreeEmbedding& g);

struct TreeAmalgam {
  Tree apex;
  TreeEmbedding from_first;   // A -> C
  TreeEmbedding from_second;  // B -> C
};

/// Cocone for the span X -> A, X -> B. Outside X, equal-labeled branches are
/// merged and differently labeled ones are split at the first node where both
/// trees are inside their tail continuations.
TreeAmalgam tree_amalgamate(const TreeEmbedding& a_emb, const TreeEmbedding& b_emb);

/// Given subtrees x_in: X -> Z, y_in: Y -> Z and u, v: Z -> A agreeing on the
/// intersection, returns w: Z -> A agreeing with u on X and with v on Y.
/// Throws PreconditionError when u and v disagree on the intersection.
TreeEmbedding c2prime_witness(const TreeEmbedding& x_in, const TreeEmbedding& y_in,
                              const TreeEmbedding& u, const TreeEmbedding& v);

struct RegularMonoWitness {
  Tree target;  // Y'
  TreeEmbedding first;
  TreeEmbedding second;
};

/// Two embeddings Y -> Y' whose equalizer is the image of emb: X -> Y.
RegularMonoWitness regular_mono_witness(const TreeEmbedding& emb);

/// Subtree of the common source where e1 and e2 agree, as an inclusion with a
/// canonical domain.
TreeEmbedding equalizer(const TreeEmbedding& e1, const TreeEmbedding& e2);

/// Both embeddings have the same image in their common target.
bool same_image(const TreeEmbedding& a, const TreeEmbedding& b);

}  // namespace atomkit::itree
