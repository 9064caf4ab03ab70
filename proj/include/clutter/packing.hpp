#pragma once

#include <map>
#include <optional>

#include "clutter/blocker.hpp"
#include "clutter/clutter.hpp"
#include "clutter/errors.hpp"
#include "clutter/lp.hpp"
#include "clutter/pointset.hpp"

namespace clutter {

// ---------------------------------------------------------------------------
// Fractional packings.
//
// A fractional packing assigns a weight y_C >= 0 to every member so that
// each element carries total weight at most one. Its value is the total
// weight. The packing LP maximizes the value; a clutter with covering
// number two can never exceed value two, and the clutters this module cares
// about attain it.
// ---------------------------------------------------------------------------

struct FractionalPacking {
  std::vector<Rational> weights;  // one per member, construction order
  Rational value;                 // sum of weights

  std::vector<int> support() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < weights.size(); ++i)
      if (weights[i] > 0) out.push_back(static_cast<int>(i));
    return out;
  }
};

inline FractionalPacking make_packing(const Clutter& c, std::vector<Rational> weights) {
  if (static_cast<int>(weights.size()) != c.num_members())
    throw std::invalid_argument("make_packing: weight count != member count");
  FractionalPacking p;
  p.value = 0;
  for (const auto& w : weights) {
    if (w < 0) throw std::invalid_argument("make_packing: negative weight");
    p.value += w;
  }
  for (int v = 0; v < c.n(); ++v) {
    Rational load = 0;
    for (int i = 0; i < c.num_members(); ++i)
      if (contains(c.member(i), v)) load += weights[i];
    if (load > 1)
      throw std::invalid_argument("make_packing: element " + std::to_string(v + 1) +
                                  " overloaded");
  }
  p.weights = std::move(weights);
  return p;
}

// The packing LP (D): maximize 1.y subject to, for every element v,
// sum of y_C over members containing v at most one, y >= 0.
inline LinearProgram packing_lp(const Clutter& c) {
  LinearProgram lp;
  lp.sense = Sense::maximize;
  lp.objective.assign(c.num_members(), Rational(1));
  for (int v = 0; v < c.n(); ++v) {
    std::vector<Rational> row(c.num_members());
    for (int i = 0; i < c.num_members(); ++i) row[i] = contains(c.member(i), v) ? 1 : 0;
    lp.lhs.push_back(std::move(row));
    lp.rel.push_back(Relation::less_equal);
    lp.rhs.push_back(Rational(1));
  }
  return lp;
}

inline FractionalPacking max_fractional_packing(const Clutter& c) {
  if (c.degenerate())
    throw std::invalid_argument("max_fractional_packing: degenerate clutter");
  LpResult res = solve(packing_lp(c));
  if (res.status != LpStatus::optimal)
    throw std::logic_error("max_fractional_packing: packing LP must be bounded and feasible");
  return make_packing(c, res.primal);
}

// Tangled: covering number two and every element in some minimum cover.
inline bool is_tangled(const Clutter& c) {
  auto tau = covering_number(c);
  if (!tau || *tau != 2) return false;
  Mask touched = 0;
  for (Mask e : two_element_covers(c)) touched |= e;
  return touched == full_mask(c.n());
}

// ---------------------------------------------------------------------------
// The graph of minimum covers and its bipartition.
// ---------------------------------------------------------------------------

struct CoverGraph {
  struct Component {
    Mask u = 0;  // side containing the component's lowest vertex
    Mask v = 0;
  };
  std::vector<Mask> edges;  // all 2-element covers
  std::vector<Component> components;  // ordered by lowest vertex

  int rank() const { return static_cast<int>(components.size()); }
};

struct CoverGraphResult {
  std::optional<CoverGraph> graph;  // present iff bipartite
  std::vector<int> odd_cycle;       // otherwise: an odd cycle, as a vertex list
};

// Builds the graph over the ground set whose edges are the minimum covers.
// Requires a tangled input (so the edges touch every vertex). If some
// component is not bipartite the input was not clean, and the odd cycle is
// returned as the certificate instead of a graph.
inline CoverGraphResult cover_graph(const Clutter& c) {
  if (!is_tangled(c)) throw std::invalid_argument("cover_graph: input is not tangled");
  CoverGraphResult out;
  CoverGraph g;
  g.edges = two_element_covers(c);
  const int n = c.n();
  std::vector<std::vector<int>> adj(n);
  for (Mask e : g.edges) {
    auto vs = bits_of(e);
    adj[vs[0]].push_back(vs[1]);
    adj[vs[1]].push_back(vs[0]);
  }
  std::vector<int> color(n, -1), parent(n, -1);
  for (int root = 0; root < n; ++root) {
    if (color[root] != -1) continue;
    CoverGraph::Component comp;
    std::vector<int> queue{root};
    color[root] = 0;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      int x = queue[qi];
      (color[x] == 0 ? comp.u : comp.v) |= Mask{1} << x;
      for (int y : adj[x]) {
        if (color[y] == -1) {
          color[y] = 1 - color[x];
          parent[y] = x;
          queue.push_back(y);
        } else if (color[y] == color[x]) {
          // Odd cycle: tree paths from both endpoints to their meeting
          // point, plus the conflicting edge.
          std::vector<int> px{x}, py{y};
          while (parent[px.back()] != -1) px.push_back(parent[px.back()]);
          while (parent[py.back()] != -1) py.push_back(parent[py.back()]);
          while (px.size() > 1 && py.size() > 1 &&
                 px[px.size() - 2] == py[py.size() - 2]) {
            px.pop_back();
            py.pop_back();
          }
          out.odd_cycle = px;
          for (auto it = py.rbegin(); it != py.rend(); ++it)
            if (*it != px.back()) out.odd_cycle.push_back(*it);
          return out;
        }
      }
    }
    g.components.push_back(comp);
  }
  out.graph = std::move(g);
  return out;
}

// ---------------------------------------------------------------------------
// Core and setcore.
// ---------------------------------------------------------------------------

namespace detail {

// Face of the packing polytope where the value is exactly two.
inline std::vector<std::pair<std::vector<Rational>, Rational>> value_two_face(const Clutter& c) {
  return {{std::vector<Rational>(c.num_members(), Rational(1)), Rational(2)}};
}

}  // namespace detail

// Members carrying positive weight in at least one value-two packing,
// decided one LP per undecided member. Fails with a certificate when no
// value-two packing exists at all.
inline std::vector<int> core_lp(const Clutter& c) {
  FractionalPacking best = max_fractional_packing(c);
  if (best.value < 2)
    throw certificate_error("no-value-two-packing",
                            "maximum fractional packing value is " +
                                to_fraction_string(best.value));
  LinearProgram lp = packing_lp(c);
  auto face = detail::value_two_face(c);
  std::vector<int> out;
  for (int i = 0; i < c.num_members(); ++i) {
    LpResult r = maximize_coordinate(lp, face, i, Sense::maximize);
    if (r.status != LpStatus::optimal)
      throw std::logic_error("core_lp: face probe did not solve");
    if (r.value > 0) out.push_back(i);
  }
  return out;
}

// The combinatorial description: members meeting every component in exactly
// one of its two sides.
inline std::vector<int> core_combinatorial(const Clutter& c, const CoverGraph& g) {
  std::vector<int> out;
  for (int i = 0; i < c.num_members(); ++i) {
    bool good = true;
    for (const auto& comp : g.components) {
      Mask both = comp.u | comp.v;
      Mask inter = c.member(i) & both;
      if (inter != comp.u && inter != comp.v) {
        good = false;
        break;
      }
    }
    if (good) out.push_back(i);
  }
  return out;
}

// LP core cross-checked against the combinatorial formula; a mismatch is a
// certificate that the input was not clean tangled.
inline std::vector<int> core(const Clutter& c, const CoverGraph& g) {
  std::vector<int> lp_core = core_lp(c);
  std::vector<int> comb = core_combinatorial(c, g);
  if (lp_core != comb) {
    auto fmt = [](const std::vector<int>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i] + 1);
      return s + "}";
    };
    throw certificate_error("core-mismatch", "LP core " + fmt(lp_core) +
                                                 " != combinatorial core " + fmt(comb));
  }
  return lp_core;
}

inline std::vector<int> core(const Clutter& c) {
  CoverGraphResult gr = cover_graph(c);
  if (!gr.graph) {
    std::string cyc;
    for (int v : gr.odd_cycle) cyc += (cyc.empty() ? "" : "-") + std::to_string(v + 1);
    throw certificate_error("odd-cycle", "cover graph has odd cycle " + cyc);
  }
  return core(c, *gr.graph);
}

struct Setcore {
  CoverGraph graph;
  std::vector<int> core_members;  // indices into c's members
  PointSet points;                // one point per core member, same order as sorted masks
  std::vector<Mask> point_of_member;  // point (as mask) for each core member, core order
};

// The setcore: one point per core member, coordinate i equal to zero
// exactly when the member meets component i in its u side. The paper's
// structural facts about it are asserted on the way out (each failure is a
// certificate that the input was not clean tangled):
//   * distinct core members give distinct points;
//   * every core member is the union of its chosen sides, so the core is a
//     duplication of cuboid(points) with the sides as duplicate classes;
//   * no two side columns coincide across components;
//   * conv(points) is full-dimensional with the half point in its interior.
inline Setcore setcore(const Clutter& c, const CoverGraph& g) {
  Setcore out;
  out.graph = g;
  out.core_members = core(c, g);
  const int r = g.rank();

  std::vector<Mask> pts;
  for (int idx : out.core_members) {
    Mask member = c.member(idx);
    Mask p = 0;
    Mask rebuilt = 0;
    for (int i = 0; i < r; ++i) {
      Mask inter = member & (g.components[i].u | g.components[i].v);
      if (inter == g.components[i].v) p |= Mask{1} << i;
      rebuilt |= inter;
    }
    if (rebuilt != member)
      throw certificate_error("core-not-side-union",
                              "core member " + std::to_string(idx + 1) +
                                  " is not a union of component sides");
    out.point_of_member.push_back(p);
    pts.push_back(p);
  }
  {
    std::vector<Mask> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw certificate_error("core-point-collision",
                              "two core members project to the same point");
  }
  out.points = PointSet(r, pts);

  for (const auto& cls : duplicate_coordinate_classes(out.points))
    if (cls.size() > 1) {
      std::string s;
      for (int i : cls) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
      throw certificate_error("duplicate-setcore-coordinates",
                              "setcore coordinates {" + s + "} are duplicates");
    }

  auto vecs = out.points.to_vectors();
  if (affine_rank(vecs) != r)
    throw certificate_error("setcore-not-full-dimensional",
                            "affine rank " + std::to_string(affine_rank(vecs)) +
                                " < rank " + std::to_string(r));
  std::vector<Rational> half(r, Rational(1, 2));
  if (!interior_point_test(vecs, half))
    throw certificate_error("setcore-interior",
                            "the half point is not interior to conv(setcore)");
  return out;
}

inline Setcore setcore(const Clutter& c) {
  CoverGraphResult gr = cover_graph(c);
  if (!gr.graph) {
    std::string cyc;
    for (int v : gr.odd_cycle) cyc += (cyc.empty() ? "" : "-") + std::to_string(v + 1);
    throw certificate_error("odd-cycle", "cover graph has odd cycle " + cyc);
  }
  return setcore(c, *gr.graph);
}

// cuboid(S) over ground set [2n]: the member for point p contains element
// 2i-1 when p_i = 1 and element 2i when p_i = 0 (1-based).
inline Clutter cuboid(const PointSet& s) {
  if (s.dim < 1) throw std::invalid_argument("cuboid: dimension must be at least 1");
  if (2 * s.dim > max_elements) throw std::invalid_argument("cuboid: ground set too large");
  std::vector<Mask> members;
  for (Mask p : s.points) {
    Mask m = 0;
    for (int i = 0; i < s.dim; ++i)
      m |= Mask{1} << (contains(p, i) ? 2 * i : 2 * i + 1);
    members.push_back(m);
  }
  return Clutter::antichain(GroundSet(2 * s.dim), std::move(members));
}

// Recognizes cuboid structure: a perfect matching of the ground set into
// pairs with complementary columns, each member picking one element per
// pair. Pairs are ordered by their lower element and p_i = 1 means the
// member contains the lower element of pair i, so as_cuboid inverts cuboid
// exactly. Returns nothing when some element lacks a unique complementary
// partner.
struct CuboidStructure {
  std::vector<std::pair<int, int>> pairs;  // (lower, higher) element per coordinate
  PointSet points;
  std::vector<Mask> point_of_member;  // in member order
};

inline std::optional<CuboidStructure> as_cuboid(const Clutter& c) {
  const int n = c.n();
  if (n == 0 || n % 2 != 0 || c.degenerate()) return std::nullopt;
  std::vector<std::vector<char>> cols(n);
  for (int v = 0; v < n; ++v) cols[v] = c.column(v);
  std::vector<int> partner(n, -1);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      if (u == v) continue;
      bool comp = true;
      for (int i = 0; i < c.num_members(); ++i)
        if (cols[v][i] == cols[u][i]) {
          comp = false;
          break;
        }
      if (comp) {
        if (partner[v] != -1) return std::nullopt;  // ambiguous
        partner[v] = u;
      }
    }
    if (partner[v] == -1) return std::nullopt;
  }
  CuboidStructure out;
  for (int v = 0; v < n; ++v)
    if (v < partner[v]) out.pairs.emplace_back(v, partner[v]);
  const int r = static_cast<int>(out.pairs.size());
  for (int i = 0; i < c.num_members(); ++i) {
    Mask p = 0;
    for (int j = 0; j < r; ++j)
      if (contains(c.member(i), out.pairs[j].first)) p |= Mask{1} << j;
    out.point_of_member.push_back(p);
  }
  out.points = PointSet(r, out.point_of_member);
  return out;
}

// ---------------------------------------------------------------------------
// Uniqueness of the value-two packing.
// ---------------------------------------------------------------------------

// A value-two packing is unique exactly when every member's weight is
// constant over the value-two face (per-member min equals max). The result
// is cross-asserted against the simplex test on the setcore, which the
// structure theory proves equivalent for clean tangled inputs.
inline std::optional<FractionalPacking> unique_value_two_packing(const Clutter& c) {
  LinearProgram lp = packing_lp(c);
  auto face = detail::value_two_face(c);
  bool unique = true;
  std::vector<Rational> weights(c.num_members());
  for (int i = 0; i < c.num_members() && unique; ++i) {
    LpResult hi = maximize_coordinate(lp, face, i, Sense::maximize);
    if (hi.status != LpStatus::optimal)
      throw certificate_error("no-value-two-packing", "value-two face is empty");
    LpResult lo = maximize_coordinate(lp, face, i, Sense::minimize);
    if (hi.value != lo.value) unique = false;
    weights[i] = hi.value;
  }
  bool simplex = is_simplex(setcore(c).points);
  if (simplex != unique)
    throw certificate_error("uniqueness-simplex-mismatch",
                            std::string("unique packing: ") + (unique ? "yes" : "no") +
                                ", setcore simplex: " + (simplex ? "yes" : "no"));
  if (!unique) return std::nullopt;
  return make_packing(c, std::move(weights));
}

// ---------------------------------------------------------------------------
// Complementary slackness between a minimum cover and an optimal packing.
// ---------------------------------------------------------------------------

struct SlacknessReport {
  bool ok = true;
  std::string violation;
};

// For a minimum cover B and a packing y of value |B|: every supported
// member must meet B exactly once, and every element of B must be
// saturated. These are the LP complementary slackness conditions for the
// covering/packing pair.
inline SlacknessReport complementary_slackness_check(const Clutter& c,
                                                     const FractionalPacking& y, Mask b) {
  SlacknessReport rep;
  auto tau = covering_number(c);
  if (!tau) throw std::invalid_argument("complementary_slackness_check: degenerate clutter");
  if (!is_cover(c, b) || popcount(b) != *tau)
    throw std::invalid_argument("complementary_slackness_check: B is not a minimum cover");
  if (y.value != *tau)
    throw std::invalid_argument("complementary_slackness_check: packing value != covering number");
  for (int i = 0; i < c.num_members(); ++i)
    if (y.weights[i] > 0 && popcount(c.member(i) & b) != 1) {
      rep.ok = false;
      rep.violation = "supported member " + std::to_string(i + 1) + " meets the cover " +
                      std::to_string(popcount(c.member(i) & b)) + " times";
      return rep;
    }
  for (int v : bits_of(b)) {
    Rational load = 0;
    for (int i = 0; i < c.num_members(); ++i)
      if (contains(c.member(i), v)) load += y.weights[i];
    if (load != 1) {
      rep.ok = false;
      rep.violation = "cover element " + std::to_string(v + 1) + " carries weight " +
                      to_fraction_string(load) + ", not 1";
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Recursive combination of packings across one component.
// ---------------------------------------------------------------------------

// Given a component with sides (U, V), a value-two packing of c \ U / V
// lifts to c by giving each member disjoint from U the weight of its
// contraction image; averaging the two lifted packings (one per side)
// yields a value-two packing of c. The lift is rejected if some supported
// minor member has no preimage.
inline FractionalPacking combine_packings(const Clutter& c, const CoverGraph::Component& comp,
                                          const FractionalPacking& z_across_u,
                                          const FractionalPacking& z_across_v) {
  auto lift = [&](Mask deleted, Mask contracted, const FractionalPacking& z) {
    Clutter mc = minor(c, deleted, contracted);
    if (static_cast<int>(z.weights.size()) != mc.num_members())
      throw std::invalid_argument("combine_packings: packing does not fit the minor");
    if (z.value != 2)
      throw std::invalid_argument("combine_packings: packing value must be two");
    make_packing(mc, z.weights);  // validates feasibility on the minor

    Mask keep = full_mask(c.n()) & ~(deleted | contracted);
    std::vector<int> new_of_old(c.n(), -1);
    {
      int idx = 0;
      for (int v : bits_of(keep)) new_of_old[v] = idx++;
    }
    std::map<Mask, int> minor_index;
    for (int i = 0; i < mc.num_members(); ++i) minor_index[mc.member(i)] = i;

    std::vector<Rational> y(c.num_members(), Rational(0));
    std::vector<char> hit(mc.num_members(), 0);
    for (int i = 0; i < c.num_members(); ++i) {
      Mask m = c.member(i);
      if ((m & deleted) != 0) continue;
      Mask image = 0;
      for (int v : bits_of(m & keep)) image |= Mask{1} << new_of_old[v];
      auto it = minor_index.find(image);
      if (it == minor_index.end()) continue;  // dominated away in the minor
      y[i] = z.weights[it->second];
      hit[it->second] = 1;
    }
    for (int i = 0; i < mc.num_members(); ++i)
      if (!hit[i] && z.weights[i] > 0)
        throw certificate_error("lift-undefined",
                                "supported minor member " + std::to_string(i + 1) +
                                    " has no preimage member");
    return y;
  };

  std::vector<Rational> yu = lift(comp.u, comp.v, z_across_u);
  std::vector<Rational> yv = lift(comp.v, comp.u, z_across_v);
  std::vector<Rational> combined(c.num_members());
  for (int i = 0; i < c.num_members(); ++i)
    combined[i] = yu[i] / 2 + yv[i] / 2;
  FractionalPacking p = make_packing(c, std::move(combined));
  if (p.value != 2)
    throw certificate_error("combined-value", "combined packing has value " +
                                                  to_fraction_string(p.value) + ", expected 2");
  return p;
}

// ---------------------------------------------------------------------------
// Clause inequalities over 0-1 point sets, and their resolution.
// ---------------------------------------------------------------------------

// sum_{i in pos} x_i + sum_{j in neg} (1 - x_j) >= 1, with pos and neg
// disjoint. A point falsifies the clause when it is 0 on pos and 1 on neg.
struct Clause {
  Mask pos = 0;
  Mask neg = 0;
};

inline void check_clause(const Clause& cl) {
  if ((cl.pos & cl.neg) != 0)
    throw std::invalid_argument("clause: positive and negated parts overlap");
}

inline bool is_valid_inequality(const PointSet& s, const Clause& cl) {
  check_clause(cl);
  if (((cl.pos | cl.neg) & ~full_mask(s.dim)) != 0)
    throw std::invalid_argument("clause: coordinates outside dimension");
  for (Mask p : s.points)
    if ((p & cl.pos) == 0 && (cl.neg & ~p) == 0) return false;
  return true;
}

enum class ResolventKind {
  clause,     // a proper clause
  tautology,  // some coordinate appears on both sides: always true
  empty       // 0 >= 1: both inputs can only hold over the empty set
};

struct Resolvent {
  ResolventKind kind = ResolventKind::clause;
  Clause clause;
};

// Resolution on a pivot coordinate appearing positively in the first clause
// and negated in the second: the union of the remaining literals.
inline Resolvent resolve(const Clause& a, const Clause& b, int pivot) {
  check_clause(a);
  check_clause(b);
  Mask bit = Mask{1} << pivot;
  if ((a.pos & bit) == 0 || (b.neg & bit) == 0)
    throw std::invalid_argument("resolve: pivot must be positive in a and negated in b");
  Resolvent out;
  out.clause.pos = (a.pos | b.pos) & ~bit;
  out.clause.neg = (a.neg | b.neg) & ~bit;
  if ((out.clause.pos & out.clause.neg) != 0)
    out.kind = ResolventKind::tautology;
  else if (out.clause.pos == 0 && out.clause.neg == 0)
    out.kind = ResolventKind::empty;
  return out;
}

// ---------------------------------------------------------------------------
// Monochromatic covers.
// ---------------------------------------------------------------------------

struct SidePick {
  int component = 0;
  bool v_side = false;
};

struct MonoOutcome {
  int k = 0;
  bool ok = false;
  std::optional<Mask> triple;  // present when k == 3
  std::string note;
};

// When a union of one side from each of k chosen components is a cover:
// the theory makes k at least 3 for clean tangled inputs, and for k = 3 it
// promises a minimum cover taking exactly one element from each chosen
// side. Either failure is reported as evidence against cleanness.
inline MonoOutcome monochromatic_cover_check(const Clutter& c, const CoverGraph& g,
                                             const std::vector<SidePick>& picks) {
  Mask chosen = 0;
  std::vector<Mask> sides;
  for (const auto& pick : picks) {
    if (pick.component < 0 || pick.component >= g.rank())
      throw std::out_of_range("monochromatic_cover_check: bad component index");
    Mask side = pick.v_side ? g.components[pick.component].v : g.components[pick.component].u;
    sides.push_back(side);
    chosen |= side;
  }
  if (!is_cover(c, chosen))
    throw std::invalid_argument("monochromatic_cover_check: chosen sides do not cover");
  MonoOutcome out;
  out.k = static_cast<int>(picks.size());
  if (out.k <= 2) {
    out.ok = false;
    out.note = "cover by " + std::to_string(out.k) +
               " monochromatic sides; impossible for a clean tangled clutter";
    return out;
  }
  if (out.k > 3) {
    out.ok = true;
    return out;
  }
  for (int a : bits_of(sides[0]))
    for (int b : bits_of(sides[1]))
      for (int d : bits_of(sides[2])) {
        Mask t = (Mask{1} << a) | (Mask{1} << b) | (Mask{1} << d);
        if (popcount(t) != 3 || !is_cover(c, t)) continue;
        bool minimal = true;
        for (int drop : bits_of(t))
          if (is_cover(c, t & ~(Mask{1} << drop))) {
            minimal = false;
            break;
          }
        if (minimal) {
          out.ok = true;
          out.triple = t;
          return out;
        }
      }
  out.ok = false;
  out.note = "no minimum cover takes one element from each of the three chosen sides";
  return out;
}

}  // namespace clutter
