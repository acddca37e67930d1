#pragma once

// Brute-force subgroup closure on raw image arrays. Shares no code with the
// library's permutation type.

#include <cstdint>
#include <deque>
#include <set>
#include <vector>

namespace oracle {

using Perm = std::vector<std::uint32_t>;

// Right action: (a * b)[x] = b[a[x]].
inline Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[x] = b[a[x]];
  return out;
}

inline Perm identity(std::size_t n) {
  Perm p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<std::uint32_t>(i);
  return p;
}

inline Perm invert(const Perm& a) {
  Perm out(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) out[a[x]] = static_cast<std::uint32_t>(x);
  return out;
}

// Every element of <gens>, by breadth-first multiplication.
inline std::set<Perm> closure(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<Perm> seen{identity(degree)};
  std::deque<Perm> todo{identity(degree)};
  while (!todo.empty()) {
    Perm g = todo.front();
    todo.pop_front();
    for (const auto& s : gens) {
      Perm h = compose(g, s);
      if (seen.insert(h).second) todo.push_back(h);
    }
  }
  return seen;
}

// Smallest subgroup containing `gens` and closed under conjugation by `ambient`.
inline std::set<Perm> normal_closure(std::size_t degree, const std::vector<Perm>& ambient, std::vector<Perm> gens) {
  while (true) {
    std::set<Perm> h = closure(degree, gens);
    bool grew = false;
    for (const auto& x : std::vector<Perm>(h.begin(), h.end())) {
      for (const auto& s : ambient) {
        Perm c = compose(compose(invert(s), x), s);
        if (!h.count(c)) {
          gens.push_back(c);
          grew = true;
          break;
        }
      }
      if (grew) break;
    }
    if (!grew) return h;
  }
}

inline std::uint64_t order_of(const Perm& p) {
  Perm id = identity(p.size()), x = p;
  std::uint64_t k = 1;
  while (x != id) {
    x = compose(x, p);
    ++k;
  }
  return k;
}

}  // namespace oracle
