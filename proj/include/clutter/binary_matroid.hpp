#pragma once

#include <map>
#include <random>
#include <sstream>

#include "clutter/blocker.hpp"
#include "clutter/clutter.hpp"
#include "clutter/isomorphism.hpp"
#include "clutter/packing.hpp"
#include "clutter/pointset.hpp"

namespace clutter {

// ---------------------------------------------------------------------------
// 0-1 matrices over GF(2), their row and null spaces, and the projective
// geometries PG(k-1, 2).
// ---------------------------------------------------------------------------

struct BinaryMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Mask> row_masks;  // bit j of row_masks[i] is entry (i, j)

  BinaryMatrix() = default;
  BinaryMatrix(int r, int c, std::vector<Mask> rm) : rows(r), cols(c), row_masks(std::move(rm)) {
    if (r < 0 || c < 0 || c > max_elements)
      throw std::invalid_argument("BinaryMatrix: bad shape");
    if (static_cast<int>(row_masks.size()) != r)
      throw std::invalid_argument("BinaryMatrix: row count mismatch");
    for (Mask m : row_masks)
      if ((m & ~full_mask(c)) != 0)
        throw std::invalid_argument("BinaryMatrix: entries outside column range");
  }

  bool at(int i, int j) const { return contains(row_masks[i], j); }

  std::string to_text() const {
    std::ostringstream out;
    out << rows << ' ' << cols << '\n';
    for (Mask m : row_masks) out << mask_to_string(m, cols) << '\n';
    return out.str();
  }
};

inline BinaryMatrix binary_matrix_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int r = -1, c = -1;
  std::vector<Mask> rm;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    if (r < 0) {
      if (!(ls >> r >> c)) {
        r = -1;
        continue;  // blank or comment-only line before the header
      }
      if (r < 0 || c < 0) throw std::invalid_argument("binary matrix text: bad header");
      continue;
    }
    std::string word;
    if (!(ls >> word)) continue;
    if (static_cast<int>(word.size()) != c)
      throw std::invalid_argument("binary matrix text: row width != cols");
    rm.push_back(mask_from_string(word));
  }
  if (r < 0) throw std::invalid_argument("binary matrix text: missing header");
  return BinaryMatrix(r, c, std::move(rm));
}

// PG(k-1, 2) as a k x (2^k - 1) matrix: one column per nonzero vector
// v in [1, 2^k - 1], in ascending order, with entry (i, v-1) = bit i of v.
inline BinaryMatrix pg(int k) {
  if (k < 1 || (Mask{1} << k) - 1 > static_cast<Mask>(max_elements))
    throw std::invalid_argument("pg: need 1 <= k <= 6");
  int cols = (1 << k) - 1;
  std::vector<Mask> rm(k, 0);
  for (int v = 1; v <= cols; ++v)
    for (int i = 0; i < k; ++i)
      if ((v >> i) & 1) rm[i] |= Mask{1} << (v - 1);
  return BinaryMatrix(k, cols, std::move(rm));
}

namespace gf2 {

// Reduced row echelon form; returns the nonzero rows.
inline std::vector<Mask> row_reduce(std::vector<Mask> rows) {
  std::vector<Mask> basis;
  for (Mask r : rows) {
    for (Mask b : basis)
      if (contains(r, lowest_bit(b))) r ^= b;
    if (r != 0) {
      for (Mask& b : basis)
        if (contains(b, lowest_bit(r))) b ^= r;
      basis.push_back(r);
    }
  }
  std::sort(basis.begin(), basis.end(), [](Mask a, Mask b) {
    return lowest_bit(a) < lowest_bit(b);
  });
  return basis;
}

inline int rank(const std::vector<Mask>& rows) {
  return static_cast<int>(row_reduce(rows).size());
}

// Basis of the null space {x : Mx = 0 over GF(2)}, one vector per free column.
inline std::vector<Mask> null_basis(const BinaryMatrix& m) {
  std::vector<Mask> rref = row_reduce(m.row_masks);
  Mask pivots = 0;
  for (Mask r : rref) pivots |= Mask{1} << lowest_bit(r);
  std::vector<Mask> out;
  for (int f = 0; f < m.cols; ++f) {
    if (contains(pivots, f)) continue;
    Mask x = Mask{1} << f;
    for (Mask r : rref)
      if (contains(r, f)) x |= Mask{1} << lowest_bit(r);
    out.push_back(x);
  }
  return out;
}

}  // namespace gf2

namespace detail {

inline PointSet span_points(int dim, const std::vector<Mask>& basis) {
  if (basis.size() > 20)
    throw std::invalid_argument("span enumeration: space larger than 2^20 points");
  std::vector<Mask> pts;
  pts.reserve(std::size_t{1} << basis.size());
  pts.push_back(0);
  for (Mask b : basis) {
    std::size_t sz = pts.size();
    for (std::size_t i = 0; i < sz; ++i) pts.push_back(pts[i] ^ b);
  }
  return PointSet(dim, std::move(pts));
}

}  // namespace detail

// Row space of the matrix, enumerated as a point set over its columns.
inline PointSet cocycle_space(const BinaryMatrix& m) {
  return detail::span_points(m.cols, gf2::row_reduce(m.row_masks));
}

// Null space of the matrix as a point set over its columns.
inline PointSet cycle_space(const BinaryMatrix& m) {
  return detail::span_points(m.cols, gf2::null_basis(m));
}

// ---------------------------------------------------------------------------
// Binary and affine binary spaces, and binary clutters.
// ---------------------------------------------------------------------------

inline bool is_binary_space(const PointSet& s) {
  if (!s.contains_point(0)) return false;
  for (Mask a : s.points)
    for (Mask b : s.points)
      if (!s.contains_point(a ^ b)) return false;
  return true;
}

inline bool is_affine_binary_space(const PointSet& s) {
  if (s.points.empty()) return false;
  for (Mask a : s.points)
    for (Mask b : s.points)
      for (Mask c : s.points)
        if (!s.contains_point(a ^ b ^ c)) return false;
  return true;
}

// A clutter is binary when the symmetric difference of any three members
// contains a member.
inline bool is_binary_clutter(const Clutter& c) {
  if (c.degenerate()) throw std::invalid_argument("is_binary_clutter: degenerate clutter");
  const auto& mem = c.members();
  auto covers_some_member = [&](Mask s) {
    for (Mask m : mem)
      if (subset(m, s)) return true;
    return false;
  };
  const int m = c.num_members();
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int k = j + 1; k < m; ++k)
        if (!covers_some_member(mem[i] ^ mem[j] ^ mem[k])) return false;
  return true;
}

// Equivalent test: every member meets every blocker member an odd number of
// times. Both criteria are evaluated and must agree.
inline bool binary_clutter_criteria_agree(const Clutter& c) {
  bool via_triples = is_binary_clutter(c);
  bool via_blocker = true;
  Clutter b = blocker(c);
  for (Mask m : c.members()) {
    for (Mask t : b.members())
      if (popcount(m & t) % 2 == 0) {
        via_blocker = false;
        break;
      }
    if (!via_blocker) break;
  }
  if (via_triples != via_blocker)
    throw std::logic_error("binary clutter criteria disagree");
  return via_triples;
}

// ---------------------------------------------------------------------------
// Structure checks specific to the projective geometries.
// ---------------------------------------------------------------------------

// The cuboid of the cocycle space of pg(k).
inline Clutter pg_cuboid(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("pg_cuboid: need 1 <= k <= 5");
  return cuboid(cocycle_space(pg(k)));
}

struct PgPropertiesReport {
  bool weights_ok = false;       // nonzero cocycles all have weight 2^(k-1)
  bool triangles_ok = false;     // every column pair extends to a triangle
  bool decomposition_ok = false; // sampled cycles decompose into triangles
  int cycles_checked = 0;
};

// Checks three facts about pg(k): cocycle weights, triangles through every
// column pair, and the greedy triangle decomposition of cycles. Cycle
// spaces larger than the sample limit are sampled with a fixed seed.
inline PgPropertiesReport pg_properties_check(int k, int cycle_sample_limit = 512) {
  PgPropertiesReport rep;
  BinaryMatrix m = pg(k);
  const int cols = m.cols;

  PointSet cocycles = cocycle_space(m);
  rep.weights_ok = true;
  for (Mask p : cocycles.points)
    if (p != 0 && popcount(p) != (1 << (k - 1))) rep.weights_ok = false;

  auto is_cycle = [&](Mask t) {
    for (Mask row : m.row_masks)
      if (popcount(row & t) % 2 != 0) return false;
    return true;
  };

  // Column j carries the point v = j + 1, and column vectors XOR the way
  // the points do, so the third point of the triangle through e and f sits
  // at column (e+1) xor (f+1) - 1.
  auto third = [&](int e, int f) { return (((e + 1) ^ (f + 1)) - 1); };
  rep.triangles_ok = true;
  for (int e = 0; e < cols && rep.triangles_ok; ++e)
    for (int f = e + 1; f < cols && rep.triangles_ok; ++f) {
      int g = third(e, f);
      Mask col_e = 0, col_f = 0, col_g = 0;
      for (int i = 0; i < k; ++i) {
        if (m.at(i, e)) col_e |= Mask{1} << i;
        if (m.at(i, f)) col_f |= Mask{1} << i;
        if (m.at(i, g)) col_g |= Mask{1} << i;
      }
      Mask t = (Mask{1} << e) | (Mask{1} << f) | (Mask{1} << g);
      if (g == e || g == f || col_g != (col_e ^ col_f) || !is_cycle(t))
        rep.triangles_ok = false;
    }

  auto decompose = [&](Mask cycle) {
    while (cycle != 0) {
      if (popcount(cycle) < 3) return false;
      auto vs = bits_of(cycle);
      int e = vs[0], f = vs[1], g = third(e, f);
      Mask t = (Mask{1} << e) | (Mask{1} << f) | (Mask{1} << g);
      if (!is_cycle(t)) return false;
      int before = popcount(cycle);
      cycle ^= t;
      int after = popcount(cycle);
      if (after != before - 1 && after != before - 3) return false;
    }
    return true;
  };

  std::vector<Mask> nb = gf2::null_basis(m);
  rep.decomposition_ok = true;
  if (nb.size() <= 12 && (1 << nb.size()) <= cycle_sample_limit) {
    for (Mask cyc : cycle_space(m).points) {
      if (!decompose(cyc)) rep.decomposition_ok = false;
      ++rep.cycles_checked;
    }
  } else {
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < cycle_sample_limit; ++trial) {
      Mask cyc = 0;
      for (Mask b : nb)
        if (rng() & 1) cyc ^= b;
      if (!is_cycle(cyc) || !decompose(cyc)) rep.decomposition_ok = false;
      ++rep.cycles_checked;
    }
  }
  return rep;
}

struct PgRecursiveReport {
  bool ok = false;
  int pivots_checked = 0;
};

// The cocycle space of pg(k) decomposes around every column w: the columns
// other than w pair up as {v, v xor w}; cocycles vanishing at w agree on
// each pair and the rest disagree on each pair, and either half, restricted
// to one representative per pair, is exactly the cocycle space of pg(k-1).
// Representatives are the pair elements with the lowest bit of w clear, and
// a representative v maps to the pg(k-1) column indexed by v with that bit
// dropped.
inline PgRecursiveReport pg_recursive_decompose(int k) {
  if (k < 2) throw std::invalid_argument("pg_recursive_decompose: need k >= 2");
  PgRecursiveReport rep;
  const int cols = (1 << k) - 1;
  PointSet big = cocycle_space(pg(k));
  PointSet small = cocycle_space(pg(k - 1));

  for (int w = 1; w <= cols; ++w) {
    int j = lowest_bit(static_cast<Mask>(w));
    auto pack = [&](int v) {
      int low = v & ((1 << j) - 1);
      int high = (v >> (j + 1)) << j;
      return low | high;
    };
    std::vector<int> reps;
    for (int v = 1; v <= cols; ++v)
      if (v != w && ((v >> j) & 1) == 0) reps.push_back(v);
    if (static_cast<int>(reps.size()) != (1 << (k - 1)) - 1)
      throw std::logic_error("pg_recursive_decompose: representative count");
    {
      Mask seen = 0;
      for (int v : reps) {
        int img = pack(v);
        if (img < 1 || img > (1 << (k - 1)) - 1 || contains(seen, img - 1))
          throw std::logic_error("pg_recursive_decompose: column mapping not a bijection");
        seen |= Mask{1} << (img - 1);
      }
    }

    std::vector<Mask> half0, half1;
    bool pairing_ok = true;
    for (Mask p : big.points) {
      bool at_w = contains(p, w - 1);
      Mask reduced = 0;
      for (int v : reps) {
        bool pv = contains(p, v - 1);
        bool pu = contains(p, (v ^ w) - 1);
        if (at_w ? (pu == pv) : (pu != pv)) pairing_ok = false;
        if (pv) reduced |= Mask{1} << (pack(v) - 1);
      }
      (at_w ? half1 : half0).push_back(reduced);
    }
    bool halves_ok = PointSet((1 << (k - 1)) - 1, half0) == small &&
                     PointSet((1 << (k - 1)) - 1, half1) == small;
    if (!pairing_ok || !halves_ok) return rep;  // ok stays false
    ++rep.pivots_checked;
  }
  rep.ok = true;
  return rep;
}

struct PgSimplexReport {
  bool full_simplex = false;
  bool interior = false;
  bool packing_unique = false;
  bool packing_uniform = false;
  Rational weight;  // common member weight when uniform
};

// The cocycle space of pg(k) spans a full-dimensional simplex with the half
// point inside, and its cuboid has a unique maximum fractional packing,
// uniform at 1 / 2^(k-1).
inline PgSimplexReport pg_simplex_check(int k) {
  if (k < 1 || k > 4)
    throw std::invalid_argument("pg_simplex_check: guarded to 1 <= k <= 4");
  PgSimplexReport rep;
  PointSet s = cocycle_space(pg(k));
  rep.full_simplex = is_full_simplex(s);
  std::vector<Rational> half(s.dim, Rational(1, 2));
  rep.interior = interior_point_test(s.to_vectors(), half);

  Clutter c = pg_cuboid(k);
  auto packing = unique_value_two_packing(c);
  rep.packing_unique = packing.has_value();
  if (packing) {
    Rational expect(1, 1 << (k - 1));
    rep.packing_uniform = true;
    for (const auto& wt : packing->weights)
      if (wt != expect) rep.packing_uniform = false;
    if (rep.packing_uniform) rep.weight = expect;
  }
  return rep;
}

struct PgMinorReport {
  bool classes_ok = false;        // duplicate classes after contraction all have size 2
  bool reduced_isomorphic = false;
};

// Contracting one side of a coordinate pair of pg_cuboid(k) (and deleting
// the other) leaves a duplication of pg_cuboid(k-1): the surviving elements
// fall into duplicate classes of size exactly 2 and deduplication gives a
// clutter isomorphic to pg_cuboid(k-1). Generic canonical-form matching is
// hopeless on these vertex-transitive clutters, so the isomorphism is found
// through the underlying point sets and the resulting element map is
// verified member by member.
inline PgMinorReport pg_contraction_minor_check(int k, int column_v) {
  if (k < 2) throw std::invalid_argument("pg_contraction_minor_check: need k >= 2");
  const int cols = (1 << k) - 1;
  if (column_v < 1 || column_v > cols)
    throw std::invalid_argument("pg_contraction_minor_check: column out of range");
  PgMinorReport rep;
  Clutter c = pg_cuboid(k);
  Mask del = Mask{1} << (2 * (column_v - 1));      // the p_v = 1 side
  Mask con = Mask{1} << (2 * (column_v - 1) + 1);  // the p_v = 0 side
  Clutter m = minor(c, del, con);
  Deduplication d = deduplicate(m);
  rep.classes_ok = true;
  for (const auto& cls : d.classes)
    if (cls.size() != 2) rep.classes_ok = false;
  if (!rep.classes_ok) return rep;

  Clutter target = pg_cuboid(k - 1);
  auto st = as_cuboid(d.reduced);
  if (!st) return rep;
  auto iso = pointset_isomorphic(st->points, cocycle_space(pg(k - 1)));
  if (!iso) return rep;
  const auto& [perm, q] = *iso;
  std::vector<int> elem_map(d.reduced.n(), -1);
  for (std::size_t i = 0; i < st->pairs.size(); ++i) {
    int j = perm[i];
    bool flip = contains(q, j);
    elem_map[st->pairs[i].first] = flip ? 2 * j + 1 : 2 * j;
    elem_map[st->pairs[i].second] = flip ? 2 * j : 2 * j + 1;
  }
  std::vector<Mask> mapped;
  for (Mask mem : d.reduced.members()) {
    Mask img = 0;
    for (int v : bits_of(mem)) img |= Mask{1} << elem_map[v];
    mapped.push_back(img);
  }
  std::sort(mapped.begin(), mapped.end());
  rep.reduced_isomorphic = mapped == target.sorted_members();
  return rep;
}

}  // namespace clutter
