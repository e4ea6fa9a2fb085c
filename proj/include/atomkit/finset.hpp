#pragma once

// Finite sets and injections. Elements of an object of size n are 0..n-1.

#include <compare>
#include <cstddef>
#include <vector>

namespace atomkit::finset {

struct FinSet {
  std::size_t size = 0;

  auto operator<=>(const FinSet&) const = default;
};

class Injection {
 public:
  /// Throws ValidationError on an out-of-range or repeated entry.
  Injection(std::size_t dom, std::size_t cod, std::vector<std::size_t> map);

  static Injection identity(std::size_t n);

  std::size_t dom_size() const { return dom_; }
  std::size_t cod_size() const { return cod_; }
  const std::vector<std::size_t>& map() const { return map_; }
  std::size_t operator()(std::size_t i) const { return map_.at(i); }

  bool is_bijective() const { return dom_ == cod_; }

  auto operator<=>(const Injection&) const = default;

 private:
  std::size_t dom_;
  std::size_t cod_;
  std::vector<std::size_t> map_;
};

inline Injection make_injection(std::size_t dom, std::size_t cod,
                                std::vector<std::size_t> map) {
  return Injection(dom, cod, std::move(map));
}

/// Codomain elements outside the image, ascending.
std::vector<std::size_t> complement_positions(const Injection& f);

/// Diagrammatic composite: f first, then g.
Injection compose(const Injection& f, const Injection& g);

Injection inverse(const Injection& f);

/// All injections a -> b in lexicographic order of their maps.
std::vector<Injection> hom_set(FinSet a, FinSet b);

struct Pullback {
  FinSet apex;
  Injection to_first;   // apex -> dom(f)
  Injection to_second;  // apex -> dom(g)
};

/// Intersection of images, indexed in ascending codomain order.
Pullback pullback(const Injection& f, const Injection& g);

struct Pushout {
  FinSet apex;
  Injection from_first;   // A -> C
  Injection from_second;  // B -> C
};

/// Gluing of A and B along the shared X of the span X -> A, X -> B. A keeps its
/// positions; the rest of B is appended in ascending order.
Pushout amalgamate(const Injection& left, const Injection& right);

}  // namespace atomkit::finset
