#pragma once

#include "atomkit/site.hpp"

namespace fx {

using atomkit::itree::Tree;
using atomkit::itree::TreeEmbedding;
using atomkit::itree::Address;

inline Tree T1() { return Tree::leaf(); }
inline Tree T3() { return Tree::join(Tree::leaf(), Tree::leaf()); }
// Root with one internal child (two leaves) and one leaf child.
inline Tree T5() { return atomkit::itree::canonical(Tree::join(T3(), Tree::leaf())); }
inline Tree tail(const std::string& l) { return Tree::tail(l); }

inline TreeEmbedding root_map(const Tree& x, const Tree& y) {
  return TreeEmbedding::from_function(x, y, [](const Address& a) { return a; });
}

inline TreeEmbedding swap_T3() {
  return TreeEmbedding::from_function(T3(), T3(), [](const Address& a) {
    Address b = a;
    if (!b.bits.empty()) b.bits[0] = b.bits[0] == '0' ? '1' : '0';
    return b;
  });
}

// The two embeddings T3 -> T5 in enumeration order.
inline std::vector<TreeEmbedding> T3_into_T5() { return atomkit::itree::enumerate_embeddings(T3(), T5()); }

inline atomkit::finset::Injection inj(std::size_t dom, std::size_t cod, std::vector<std::size_t> m) {
  return atomkit::finset::Injection(dom, cod, std::move(m));
}

}  // namespace fx
