#pragma once

#include <algorithm>
#include <optional>
#include <sstream>

#include "clutter/bits.hpp"
#include "clutter/lp.hpp"

namespace clutter {

// A set of 0-1 points in {0,1}^dim, stored as masks (bit i = coordinate i),
// kept sorted and distinct. Text form: "dim <n>" then one 0/1 string per
// point, character j = coordinate j.
struct PointSet {
  int dim = 0;
  std::vector<Mask> points;

  PointSet() = default;
  PointSet(int d, std::vector<Mask> pts) : dim(d), points(std::move(pts)) {
    if (dim < 0 || dim > max_elements) throw std::invalid_argument("PointSet: bad dimension");
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (Mask p : points)
      if ((p & ~full_mask(dim)) != 0)
        throw std::invalid_argument("PointSet: point outside dimension");
  }

  static PointSet of(int d, std::initializer_list<const char*> strs) {
    std::vector<Mask> pts;
    for (const char* s : strs) {
      std::string str(s);
      if (static_cast<int>(str.size()) != d)
        throw std::invalid_argument("PointSet::of: wrong string length");
      pts.push_back(mask_from_string(str));
    }
    return PointSet(d, std::move(pts));
  }

  int size() const { return static_cast<int>(points.size()); }
  bool contains_point(Mask p) const {
    return std::binary_search(points.begin(), points.end(), p);
  }
  bool operator==(const PointSet& other) const = default;

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    for (Mask p : points) out.push_back(mask_to_string(p, dim));
    return out;
  }

  std::vector<std::vector<Rational>> to_vectors() const {
    std::vector<std::vector<Rational>> out;
    for (Mask p : points) {
      std::vector<Rational> v(dim);
      for (int i = 0; i < dim; ++i) v[i] = contains(p, i) ? 1 : 0;
      out.push_back(std::move(v));
    }
    return out;
  }
};

inline std::string to_text(const PointSet& s) {
  std::ostringstream os;
  os << "dim " << s.dim << "\n";
  for (Mask p : s.points) os << mask_to_string(p, s.dim) << "\n";
  return os.str();
}

inline PointSet pointset_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int dim = -1;
  std::vector<Mask> pts;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "dim") {
      if (dim != -1 || !(ls >> dim) || dim < 1 || dim > max_elements)
        throw std::invalid_argument("pointset format, line " + std::to_string(lineno) +
                                    ": bad dim line");
    } else {
      if (dim == -1)
        throw std::invalid_argument("pointset format: point before dim");
      if (static_cast<int>(tok.size()) != dim)
        throw std::invalid_argument("pointset format, line " + std::to_string(lineno) +
                                    ": point length != dim");
      pts.push_back(mask_from_string(tok));
    }
  }
  if (dim == -1) throw std::invalid_argument("pointset format: missing dim line");
  return PointSet(dim, std::move(pts));
}

// Translate every point by XOR with q.
inline PointSet twist(const PointSet& s, Mask q) {
  if ((q & ~full_mask(s.dim)) != 0) throw std::invalid_argument("twist: q outside dimension");
  std::vector<Mask> pts;
  pts.reserve(s.points.size());
  for (Mask p : s.points) pts.push_back(p ^ q);
  return PointSet(s.dim, std::move(pts));
}

// Flip a single coordinate.
inline PointSet twist_coordinate(const PointSet& s, int i) {
  if (i < 0 || i >= s.dim) throw std::invalid_argument("twist_coordinate: out of range");
  return twist(s, Mask{1} << i);
}

inline PointSet permute_coordinates(const PointSet& s, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != s.dim)
    throw std::invalid_argument("permute_coordinates: bad permutation size");
  std::vector<Mask> pts;
  for (Mask p : s.points) {
    Mask q = 0;
    for (int i = 0; i < s.dim; ++i)
      if (contains(p, i)) q |= Mask{1} << perm[i];
    pts.push_back(q);
  }
  return PointSet(s.dim, std::move(pts));
}

// Coordinate classes where two coordinates are duplicates when their value
// columns agree on every point either identically or complementarily.
inline std::vector<std::vector<int>> duplicate_coordinate_classes(const PointSet& s) {
  std::vector<std::vector<char>> col(s.dim, std::vector<char>(s.points.size()));
  for (int i = 0; i < s.dim; ++i)
    for (std::size_t r = 0; r < s.points.size(); ++r) col[i][r] = contains(s.points[r], i);
  auto complement = [](const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t r = 0; r < a.size(); ++r)
      if (a[r] == b[r]) return false;
    return true;
  };
  std::vector<std::vector<int>> classes;
  std::vector<char> seen(s.dim, 0);
  for (int i = 0; i < s.dim; ++i) {
    if (seen[i]) continue;
    classes.push_back({i});
    seen[i] = 1;
    for (int j = i + 1; j < s.dim; ++j)
      if (!seen[j] && (col[i] == col[j] || complement(col[i], col[j]))) {
        classes.back().push_back(j);
        seen[j] = 1;
      }
  }
  return classes;
}

// Projection onto the lowest-index representative of each duplicate class.
// Injective on points: within a class, columns determine one another.
inline PointSet deduplicate_coordinates(const PointSet& s) {
  auto classes = duplicate_coordinate_classes(s);
  std::vector<int> reps;
  for (const auto& cls : classes) reps.push_back(cls.front());
  std::vector<Mask> pts;
  for (Mask p : s.points) {
    Mask q = 0;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (contains(p, reps[i])) q |= Mask{1} << i;
    pts.push_back(q);
  }
  return PointSet(static_cast<int>(reps.size()), std::move(pts));
}

// Isomorphism of point sets under coordinate permutation followed by a
// twist: returns (perm, q) with twist(permute_coordinates(a, perm), q) == b.
// Backtracking over coordinate images with multiset pruning: after every
// placement, the projections onto the placed coordinates must agree as
// multisets. Exhaustive, intended for the small dimensions used here.
inline std::optional<std::pair<std::vector<int>, Mask>> pointset_isomorphic(const PointSet& a,
                                                                            const PointSet& b) {
  if (a.dim != b.dim || a.size() != b.size()) return std::nullopt;
  const int d = a.dim;
  if (d == 0) return std::make_pair(std::vector<int>{}, Mask{0});
  const auto weight = [](const PointSet& s, int i) {
    int w = 0;
    for (Mask p : s.points) w += contains(p, i);
    return w;
  };
  // Column weights must match up to complement.
  std::vector<int> wa(d), wb(d);
  {
    std::vector<int> na(d), nb(d);
    for (int i = 0; i < d; ++i) {
      wa[i] = weight(a, i);
      wb[i] = weight(b, i);
      na[i] = std::min(wa[i], a.size() - wa[i]);
      nb[i] = std::min(wb[i], b.size() - wb[i]);
    }
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return std::nullopt;
  }

  std::vector<int> perm(d, -1);  // perm[a-coordinate] = b-coordinate
  std::vector<char> used(d, 0);
  Mask q = 0;

  auto projections_match = [&](int placed_count, const std::vector<int>& placed_a) {
    // Project a through (perm, twist-so-far) and b onto the image coords.
    std::vector<Mask> pa, pb;
    pa.reserve(a.points.size());
    pb.reserve(b.points.size());
    for (Mask p : a.points) {
      Mask m = 0;
      for (int idx = 0; idx < placed_count; ++idx) {
        int i = placed_a[idx];
        bool bit = contains(p, i) ^ contains(q, perm[i]);
        if (bit) m |= Mask{1} << idx;
      }
      pa.push_back(m);
    }
    for (Mask p : b.points) {
      Mask m = 0;
      for (int idx = 0; idx < placed_count; ++idx)
        if (contains(p, perm[placed_a[idx]])) m |= Mask{1} << idx;
      pb.push_back(m);
    }
    std::sort(pa.begin(), pa.end());
    std::sort(pb.begin(), pb.end());
    return pa == pb;
  };

  std::vector<int> placed;
  auto dfs = [&](auto&& self, int i) -> bool {
    if (i == d) return true;
    for (int j = 0; j < d; ++j) {
      if (used[j]) continue;
      for (int flip : {0, 1}) {
        if (flip == 0 && wa[i] != wb[j]) continue;
        if (flip == 1 && wa[i] != b.size() - wb[j]) continue;
        perm[i] = j;
        used[j] = 1;
        if (flip) q |= Mask{1} << j;
        placed.push_back(i);
        if (projections_match(static_cast<int>(placed.size()), placed) && self(self, i + 1))
          return true;
        placed.pop_back();
        if (flip) q &= ~(Mask{1} << j);
        used[j] = 0;
        perm[i] = -1;
      }
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  if (twist(permute_coordinates(a, perm), q) != b)
    throw std::logic_error("pointset_isomorphic: witness failed to replay");
  return std::make_pair(perm, q);
}

// Affine independence; the full-dimensional variant additionally wants
// dim + 1 points, i.e. the hull is a simplex of the ambient dimension.
inline bool is_simplex(const PointSet& s) {
  if (s.size() == 0) return false;
  return affine_rank(s.to_vectors()) == s.size() - 1;
}

inline bool is_full_simplex(const PointSet& s) {
  return s.size() == s.dim + 1 && is_simplex(s);
}

}  // namespace clutter
