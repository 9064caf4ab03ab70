#pragma once

#include "clutter/binary_matroid.hpp"
#include "clutter/clutter.hpp"
#include "clutter/packing.hpp"

// Built-in instances. Member order reproduces the published incidence
// matrices bit for bit where one exists, so tests can pin exact rows.
namespace clutter::datasets {

inline Clutter q6() {
  return Clutter::antichain(GroundSet(6), {
                                              mask_of_one_based({2, 4, 6}),
                                              mask_of_one_based({1, 3, 6}),
                                              mask_of_one_based({1, 4, 5}),
                                              mask_of_one_based({2, 3, 5}),
                                          });
}

inline Clutter q() {
  return Clutter::antichain(GroundSet(8), {
                                              mask_of_one_based({1, 2, 5, 7}),
                                              mask_of_one_based({1, 2, 6, 8}),
                                              mask_of_one_based({3, 4, 5, 8}),
                                              mask_of_one_based({3, 4, 6, 7}),
                                              mask_of_one_based({1, 3, 4, 5, 7}),
                                              mask_of_one_based({2, 3, 6, 8}),
                                              mask_of_one_based({2, 3, 5, 8}),
                                              mask_of_one_based({1, 2, 4, 6, 7}),
                                          });
}

// The seven lines of the Fano plane; identically self-blocking.
inline Clutter l7() {
  return Clutter::antichain(GroundSet(7), {
                                              mask_of_one_based({1, 2, 3}),
                                              mask_of_one_based({1, 4, 5}),
                                              mask_of_one_based({1, 6, 7}),
                                              mask_of_one_based({2, 5, 6}),
                                              mask_of_one_based({2, 4, 7}),
                                              mask_of_one_based({3, 4, 6}),
                                              mask_of_one_based({3, 5, 7}),
                                          });
}

// Lines of a degenerate projective plane over [n]: the member {2,...,n}
// plus the pairs {1,i}.
inline Clutter delta(int n) {
  if (n < 3) throw std::invalid_argument("delta: need n >= 3");
  if (n > max_elements) throw std::invalid_argument("delta: ground set too large");
  std::vector<Mask> members;
  members.push_back(full_mask(n) & ~Mask{1});
  for (int i = 2; i <= n; ++i) members.push_back(mask_of_one_based({1, i}));
  return Clutter::antichain(GroundSet(n), std::move(members));
}

// The odd hole itself: cycle edges {1,2},{2,3},...,{n,1}. An extended odd
// hole with no extra members.
inline Clutter eoh(int n) {
  if (n < 5 || n % 2 == 0) throw std::invalid_argument("eoh: need odd n >= 5");
  if (n > max_elements) throw std::invalid_argument("eoh: ground set too large");
  std::vector<Mask> members;
  for (int i = 1; i < n; ++i) members.push_back(mask_of_one_based({i, i + 1}));
  members.push_back(mask_of_one_based({n, 1}));
  return Clutter::antichain(GroundSet(n), std::move(members));
}

// Cuboid of the full square {0,1}^2: tangled, rank 2, setcore not a simplex.
inline Clutter square_cuboid() {
  return cuboid(PointSet::of(2, {"00", "10", "01", "11"}));
}

struct NamedInstance {
  std::string name;
  Clutter instance;
};

// The fixed corpus the analysis and verification commands default to.
inline std::vector<NamedInstance> corpus() {
  return {
      {"q6", q6()},
      {"q", q()},
      {"l7", l7()},
      {"delta-3", delta(3)},
      {"eoh-5", eoh(5)},
      {"pg-cuboid-1", pg_cuboid(1)},
      {"pg-cuboid-2", pg_cuboid(2)},
      {"pg-cuboid-3", pg_cuboid(3)},
      {"square", square_cuboid()},
  };
}

}  // namespace clutter::datasets
