// Cross-checks against the brute-force references in oracles.hpp.

#include <doctest.h>

#include <numeric>

#include "atomkit/atoms.hpp"
#include "atomkit/presheaf.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace atomkit;

namespace {

ObjectRef set(std::size_t n) { return finset::FinSet{n}; }

oracle::Map as_map(const Morphism& m) { return m.injection().map(); }

// Union-find over indices.
struct Partition {
  std::vector<std::size_t> parent;
  explicit Partition(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) { return parent[a] == a ? a : parent[a] = find(parent[a]); }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

TEST_CASE("quotient class counts agree with the reference") {
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto aut = site::aut_group(set(n)).elements;
    for (const auto& a : aut)
      for (const auto& b : aut) {
        const FormalAtom atom = make_atom(set(n), {a, b});
        std::vector<oracle::Map> g;
        for (const auto& s : atom.group.elements) g.push_back(as_map(s));
        const oracle::Quotient ref(n, g, 5);
        for (std::size_t x = 0; x <= 5; ++x) CHECK(quotient_classes(atom, set(x)).size() == ref.reps[x].size());
      }
  }
}

TEST_CASE("coequalizer of representables matches the quotient by the generated relation") {
  // alpha, beta : m0 -> m1 induce y(m1) => y(m0). On each X large enough,
  // Hom(m0, X) modulo (alpha g ~ beta g) must be in bijection with the
  // classes of Hom(R, X)/G via g |-> [to_source g].
  for (std::size_t m0 = 0; m0 <= 2; ++m0)
    for (std::size_t m1 = m0; m1 <= 3; ++m1) {
      const auto hs = site::hom_set(set(m0), set(m1));
      for (const auto& alpha : hs)
        for (const auto& beta : hs) {
          const auto tr = coequalize_representables(alpha, beta);
          for (std::size_t x = m0 + m1; x <= 5; ++x) {
            const auto src = site::hom_set(set(m0), set(x));
            std::map<Morphism, std::size_t> idx;
            for (std::size_t k = 0; k < src.size(); ++k) idx.emplace(src[k], k);
            Partition p(src.size());
            for (const auto& g : site::hom_set(set(m1), set(x)))
              p.join(idx.at(site::compose(alpha, g)), idx.at(site::compose(beta, g)));

            std::map<std::size_t, Morphism> class_of_block;
            std::set<Morphism> hit;
            bool consistent = true;
            for (std::size_t k = 0; k < src.size(); ++k) {
              const Morphism c = class_rep(site::compose(tr.to_source, src[k]), tr.result.group);
              hit.insert(c);
              auto [it, fresh] = class_of_block.emplace(p.find(k), c);
              if (!fresh && !(it->second == c)) consistent = false;
            }
            CAPTURE(alpha.key());
            CAPTURE(beta.key());
            CAPTURE(x);
            CHECK(consistent);
            CHECK(hit.size() == class_of_block.size());
            CHECK(hit.size() == quotient_classes(tr.result, set(x)).size());
          }
        }
    }
}

TEST_CASE("compute_K on finite sets keeps the class count of the source") {
  for (std::size_t a = 0; a <= 2; ++a)
    for (std::size_t b = a; b <= 3; ++b)
      for (const auto& f : site::hom_set(set(a), set(b))) {
        const auto k = compute_K(f, 3);
        const FormalAtom ka{k.K, k.G};
        CHECK(site::compose(k.i, k.j) == f);
        for (std::size_t x = 0; x <= 4; ++x)
          CHECK(quotient_classes(ka, set(x)).size() == site::hom_set(set(a), set(x)).size());
      }
}

TEST_CASE("embedding counts agree with the unfolded-tree reference") {
  const auto family = site::objects_within(Backend::itree, {0, 2, 5, {"i", "j"}});
  for (const auto& x : family)
    for (const auto& y : family) {
      const std::size_t depth = std::max(x.tree().height(), y.tree().height()) + 3;
      CHECK(itree::enumerate_embeddings(x.tree(), y.tree()).size() == oracle::count_embeddings(x.tree(), y.tree(), depth));
    }
}
