#include "atomkit/finset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "atomkit/errors.hpp"

namespace atomkit::finset {

Injection::Injection(std::size_t dom, std::size_t cod, std::vector<std::size_t> map)
    : dom_(dom), cod_(cod), map_(std::move(map)) {
  if (map_.size() != dom_) {
    throw ValidationError("injection map has length " + std::to_string(map_.size()) +
                          ", expected " + std::to_string(dom_));
  }
  std::vector<bool> seen(cod_, false);
  for (std::size_t i = 0; i < map_.size(); ++i) {
    const std::size_t v = map_[i];
    if (v >= cod_) {
      throw ValidationError("injection entry " + std::to_string(i) + " = " +
                            std::to_string(v) + " is out of range for codomain " +
                            std::to_string(cod_));
    }
    if (seen[v]) {
      throw ValidationError("injection has duplicate entry " + std::to_string(v));
    }
    seen[v] = true;
  }
}

Injection Injection::identity(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return Injection(n, n, std::move(m));
}

std::vector<std::size_t> complement_positions(const Injection& f) {
  std::vector<bool> hit(f.cod_size(), false);
  for (std::size_t v : f.map()) hit[v] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < hit.size(); ++i)
    if (!hit[i]) out.push_back(i);
  return out;
}

Injection compose(const Injection& f, const Injection& g) {
  if (f.cod_size() != g.dom_size()) {
    throw CompositionError("cannot compose injection into " + std::to_string(f.cod_size()) +
                           " with injection from " + std::to_string(g.dom_size()));
  }
  std::vector<std::size_t> m(f.dom_size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g(f(i));
  return Injection(f.dom_size(), g.cod_size(), std::move(m));
}

Injection inverse(const Injection& f) {
  if (!f.is_bijective()) throw PreconditionError("injection is not invertible");
  std::vector<std::size_t> m(f.dom_size());
  for (std::size_t i = 0; i < m.size(); ++i) m[f(i)] = i;
  return Injection(f.cod_size(), f.dom_size(), std::move(m));
}

std::vector<Injection> hom_set(FinSet a, FinSet b) {
  std::vector<Injection> out;
  if (a.size > b.size) return out;
  std::vector<std::size_t> current;
  std::vector<bool> used(b.size, false);
  auto rec = [&](auto&& self) -> void {
    if (current.size() == a.size) {
      out.emplace_back(a.size, b.size, current);
      return;
    }
    for (std::size_t v = 0; v < b.size; ++v) {
      if (used[v]) continue;
      used[v] = true;
      current.push_back(v);
      self(self);
      current.pop_back();
      used[v] = false;
    }
  };
  rec(rec);
  return out;
}

Pullback pullback(const Injection& f, const Injection& g) {
  if (f.cod_size() != g.cod_size()) {
    throw CompositionError("pullback needs a common codomain");
  }
  const std::size_t n = f.cod_size();
  std::vector<std::ptrdiff_t> pre_f(n, -1), pre_g(n, -1);
  for (std::size_t i = 0; i < f.dom_size(); ++i) pre_f[f(i)] = static_cast<std::ptrdiff_t>(i);
  for (std::size_t i = 0; i < g.dom_size(); ++i) pre_g[g(i)] = static_cast<std::ptrdiff_t>(i);
  std::vector<std::size_t> p1, p2;
  for (std::size_t z = 0; z < n; ++z) {
    if (pre_f[z] >= 0 && pre_g[z] >= 0) {
      p1.push_back(static_cast<std::size_t>(pre_f[z]));
      p2.push_back(static_cast<std::size_t>(pre_g[z]));
    }
  }
  const std::size_t k = p1.size();
  return Pullback{FinSet{k}, Injection(k, f.dom_size(), std::move(p1)),
                  Injection(k, g.dom_size(), std::move(p2))};
}

Pushout amalgamate(const Injection& left, const Injection& right) {
  if (left.dom_size() != right.dom_size()) {
    throw CompositionError("span legs must share their domain");
  }
  const std::size_t a = left.cod_size();
  const std::size_t b = right.cod_size();
  const std::size_t c = a + b - left.dom_size();
  std::vector<std::ptrdiff_t> glued(b, -1);
  for (std::size_t x = 0; x < left.dom_size(); ++x)
    glued[right(x)] = static_cast<std::ptrdiff_t>(left(x));
  std::vector<std::size_t> from_b(b);
  std::size_t next = a;
  for (std::size_t i = 0; i < b; ++i)
    from_b[i] = glued[i] >= 0 ? static_cast<std::size_t>(glued[i]) : next++;
  return Pushout{FinSet{c}, Injection(a, c, Injection::identity(a).map()),
                 Injection(b, c, std::move(from_b))};
}

}  // namespace atomkit::finset
