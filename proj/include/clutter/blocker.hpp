#pragma once

#include <set>

#include "clutter/clutter.hpp"

namespace clutter {

// b(c): the clutter of minimal covers of c, over the same ground set.
//
// Poles of the construction: the empty clutter is covered by the empty set,
// so b({}) = {{}}; a clutter containing the empty member has no cover at
// all, so b({{}}) = {}. These two are each other's blockers, which is what
// the involution b(b(c)) = c requires.
//
// Enumeration: branch on the elements of the first member missed by the
// partial cover. A partial cover is pruned as soon as some chosen element
// loses its private member (a member it alone meets), since no extension
// can be a minimal cover then; the same test at a leaf is exactly
// minimality. Distinct branches can reach the same cover, hence the set.
inline Clutter blocker(const Clutter& c) {
  GroundSet g = c.ground;
  if (c.has_empty_member()) return Clutter::antichain(std::move(g), {});
  if (c.is_empty_family()) return Clutter::antichain(std::move(g), {Mask{0}});

  const auto& mem = c.members();
  std::set<Mask> covers;

  auto each_private = [&](Mask chosen) {
    for (int t : bits_of(chosen)) {
      bool has_private = false;
      for (Mask m : mem)
        if ((m & chosen) == (Mask{1} << t)) {
          has_private = true;
          break;
        }
      if (!has_private) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, Mask chosen) -> void {
    if (!each_private(chosen)) return;
    Mask uncovered = 0;
    bool all_covered = true;
    for (Mask m : mem)
      if ((m & chosen) == 0) {
        uncovered = m;
        all_covered = false;
        break;
      }
    if (all_covered) {
      covers.insert(chosen);
      return;
    }
    for (int v : bits_of(uncovered)) self(self, chosen | (Mask{1} << v));
  };
  rec(rec, 0);

  return Clutter::antichain(std::move(g), std::vector<Mask>(covers.begin(), covers.end()));
}

}  // namespace clutter
