#pragma once

#include <algorithm>
#include <map>
#include <optional>

#include "clutter/clutter.hpp"

namespace clutter {

namespace detail {

// Column classes by iterated refinement: start from (degree, sizes of
// incident members) and refine with the class multiset each member sees,
// until the partition stabilizes. Class ids are assigned in sorted key
// order, so they are comparable across clutters.
inline std::vector<int> refine_classes(const Clutter& c) {
  const int n = c.n();
  const auto& mem = c.members();
  std::vector<int> cls(n, 0);

  auto assign = [&](const std::vector<std::vector<long long>>& keys) {
    std::map<std::vector<long long>, int> order;
    for (const auto& k : keys) order.emplace(k, 0);
    int next = 0;
    for (auto& [k, id] : order) id = next++;
    for (int v = 0; v < n; ++v) cls[v] = order.at(keys[v]);
    return next;
  };

  std::vector<std::vector<long long>> keys(n);
  for (int v = 0; v < n; ++v) {
    std::vector<long long> k{c.degree(v)};
    std::vector<long long> sizes;
    for (Mask m : mem)
      if (contains(m, v)) sizes.push_back(popcount(m));
    std::sort(sizes.begin(), sizes.end());
    k.insert(k.end(), sizes.begin(), sizes.end());
    keys[v] = std::move(k);
  }
  int count = assign(keys);

  for (int round = 0; round < n; ++round) {
    for (int v = 0; v < n; ++v) {
      std::vector<std::vector<long long>> blocks;
      for (Mask m : mem) {
        if (!contains(m, v)) continue;
        std::vector<long long> b{popcount(m)};
        std::vector<long long> inner;
        for (int u : bits_of(m)) inner.push_back(cls[u]);
        std::sort(inner.begin(), inner.end());
        b.insert(b.end(), inner.begin(), inner.end());
        blocks.push_back(std::move(b));
      }
      std::sort(blocks.begin(), blocks.end());
      std::vector<long long> k{cls[v]};
      for (const auto& b : blocks) {
        k.push_back(-1);
        k.insert(k.end(), b.begin(), b.end());
      }
      keys[v] = std::move(k);
    }
    int now = assign(keys);
    if (now == count) break;
    count = now;
  }
  return cls;
}

}  // namespace detail

// Canonical form of a clutter's incidence matrix under column permutation
// (rows are order-free). Columns are placed class block by class block; the
// minimized objective is the tuple, over depths d = 1..n, of the sorted
// vector of d-bit row prefixes. Comparing depth by depth keeps the search
// prunable: a partial assignment that already exceeds the best tuple at its
// depth cannot recover later.
struct CanonicalForm {
  std::vector<std::vector<Mask>> levels;  // levels[d] = sorted row prefixes at depth d+1
  std::vector<int> perm;                  // perm[position] = original column
  std::vector<int> classes;               // refinement class per original column

  bool matrix_equal(const CanonicalForm& other) const { return levels == other.levels; }
};

inline CanonicalForm canonical_form(const Clutter& c) {
  const int n = c.n();
  const auto& mem = c.members();
  const int m = c.num_members();

  CanonicalForm best;
  best.classes = detail::refine_classes(c);

  // Positions are grouped by class id; candidates at a position are the
  // unused columns of that position's class.
  std::vector<int> class_of_position;
  {
    std::vector<int> sorted_cls = best.classes;
    std::sort(sorted_cls.begin(), sorted_cls.end());
    class_of_position = sorted_cls;
  }

  std::vector<std::vector<Mask>> stack_levels(n);
  std::vector<int> perm(n, -1);
  std::vector<char> used(n, 0);
  std::vector<std::vector<Mask>> vals(n + 1, std::vector<Mask>(m, 0));
  bool have_best = false;

  auto dfs = [&](auto&& self, int depth, bool strictly_less) -> void {
    if (depth == n) {
      if (!have_best || strictly_less) {
        best.levels = stack_levels;
        best.perm = perm;
        have_best = true;
      }
      return;
    }
    for (int col = 0; col < n; ++col) {
      if (used[col] || best.classes[col] != class_of_position[depth]) continue;
      auto& nv = vals[depth + 1];
      for (int r = 0; r < m; ++r)
        nv[r] = (vals[depth][r] << 1) | (contains(mem[r], col) ? 1 : 0);
      std::vector<Mask> level = nv;
      std::sort(level.begin(), level.end());
      bool child_less = strictly_less;
      if (have_best && !strictly_less) {
        if (level > best.levels[depth]) continue;
        if (level < best.levels[depth]) child_less = true;
      }
      stack_levels[depth] = std::move(level);
      used[col] = 1;
      perm[depth] = col;
      self(self, depth + 1, child_less);
      used[col] = 0;
    }
  };
  dfs(dfs, 0, false);
  return best;
}

// Isomorphism test: returns a bijection map with map[a-element] = b-element
// under which a's member family equals b's, or nullopt. Decided by equality
// of canonical forms after cheap invariant screens.
inline std::optional<std::vector<int>> clutter_isomorphic(const Clutter& a, const Clutter& b) {
  if (a.n() != b.n() || a.num_members() != b.num_members()) return std::nullopt;
  auto sizes = [](const Clutter& c) {
    std::vector<int> s;
    for (Mask m : c.members()) s.push_back(popcount(m));
    std::sort(s.begin(), s.end());
    return s;
  };
  if (sizes(a) != sizes(b)) return std::nullopt;
  auto degrees = [](const Clutter& c) {
    std::vector<int> d;
    for (int v = 0; v < c.n(); ++v) d.push_back(c.degree(v));
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(a) != degrees(b)) return std::nullopt;

  CanonicalForm ca = canonical_form(a);
  CanonicalForm cb = canonical_form(b);
  if (!ca.matrix_equal(cb)) return std::nullopt;

  std::vector<int> map(a.n(), -1);
  for (int pos = 0; pos < a.n(); ++pos) map[ca.perm[pos]] = cb.perm[pos];

  // The map must carry a's family onto b's exactly; anything else is a bug.
  std::vector<Mask> mapped;
  for (Mask m : a.members()) {
    Mask im = 0;
    for (int v : bits_of(m)) im |= Mask{1} << map[v];
    mapped.push_back(im);
  }
  std::sort(mapped.begin(), mapped.end());
  if (mapped != b.sorted_members())
    throw std::logic_error("clutter_isomorphic: canonical forms matched but map failed");
  return map;
}

}  // namespace clutter
