#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "clutter/bits.hpp"

namespace clutter {

// Ground set {1..n} with optional display labels. Indices are 0-based
// internally; all text formats and reports use 1-based positions.
struct GroundSet {
  int n = 0;
  std::vector<std::string> labels;  // empty => default labels "1".."n"

  GroundSet() = default;
  explicit GroundSet(int size) : n(size) { check(); }
  GroundSet(int size, std::vector<std::string> names) : n(size), labels(std::move(names)) { check(); }

  void check() const {
    if (n < 0 || n > max_elements) throw std::invalid_argument("GroundSet: size out of range");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
      throw std::invalid_argument("GroundSet: label count != size");
    for (const auto& l : labels)
      if (l.empty() || l.find_first_of(" \t\n") != std::string::npos)
        throw std::invalid_argument("GroundSet: labels must be nonempty, no whitespace");
  }

  std::string label(int i) const {
    if (i < 0 || i >= n) throw std::out_of_range("GroundSet::label");
    if (!labels.empty()) return labels[i];
    return std::to_string(i + 1);
  }
};

// A clutter: a family of pairwise-incomparable subsets of the ground set.
// Members keep their construction order (incidence rows print in this
// order); comparisons always go through the sorted view so order never
// affects equality. The two degenerate families, {} and {{}}, are
// representable and flagged.
class Clutter {
 public:
  GroundSet ground;

  Clutter() = default;

  // Validating constructor: members must be distinct and form an antichain.
  static Clutter antichain(GroundSet g, std::vector<Mask> members) {
    Clutter c;
    c.ground = std::move(g);
    c.members_ = std::move(members);
    c.validate();
    return c;
  }

  // Builds the clutter of inclusion-wise minimal sets of an arbitrary
  // family. Members come out sorted ascending as masks (deterministic).
  static Clutter minimal_of(GroundSet g, const std::vector<Mask>& family) {
    std::vector<Mask> mins;
    for (Mask a : family) {
      bool keep = true;
      for (Mask b : family)
        if (b != a && subset(b, a)) {
          keep = false;
          break;
        }
      if (keep) mins.push_back(a);
    }
    std::sort(mins.begin(), mins.end());
    mins.erase(std::unique(mins.begin(), mins.end()), mins.end());
    return antichain(std::move(g), std::move(mins));
  }

  const std::vector<Mask>& members() const { return members_; }
  int num_members() const { return static_cast<int>(members_.size()); }
  int n() const { return ground.n; }
  Mask member(int i) const { return members_.at(i); }

  bool is_empty_family() const { return members_.empty(); }
  bool has_empty_member() const {
    return std::find(members_.begin(), members_.end(), Mask{0}) != members_.end();
  }
  bool degenerate() const { return is_empty_family() || has_empty_member(); }

  std::vector<Mask> sorted_members() const {
    std::vector<Mask> v = members_;
    std::sort(v.begin(), v.end());
    return v;
  }

  // Equality of member families over equal-sized ground sets; member order
  // and labels are presentation, not identity.
  bool same_family(const Clutter& other) const {
    return ground.n == other.ground.n && sorted_members() == other.sorted_members();
  }

  int degree(int element) const {
    int d = 0;
    for (Mask m : members_)
      if (contains(m, element)) ++d;
    return d;
  }

  std::vector<char> column(int element) const {  // incidence column over member rows
    std::vector<char> col(members_.size(), 0);
    for (std::size_t r = 0; r < members_.size(); ++r)
      if (contains(members_[r], element)) col[r] = 1;
    return col;
  }

 private:
  std::vector<Mask> members_;

  void validate() const {
    ground.check();
    Mask full = full_mask(ground.n);
    for (Mask m : members_)
      if ((m & ~full) != 0) throw std::invalid_argument("Clutter: member outside ground set");
    for (std::size_t i = 0; i < members_.size(); ++i)
      for (std::size_t j = 0; j < members_.size(); ++j) {
        if (i == j) continue;
        if (members_[i] == members_[j]) throw std::invalid_argument("Clutter: duplicate member");
        if (subset(members_[i], members_[j]))
          throw std::invalid_argument("Clutter: members must form an antichain");
      }
  }
};

struct IncidenceMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Mask> row_masks;  // row i = incidence of member i

  std::vector<std::string> to_strings() const {
    std::vector<std::string> out;
    out.reserve(rows);
    for (Mask r : row_masks) out.push_back(mask_to_string(r, cols));
    return out;
  }
};

inline IncidenceMatrix incidence_matrix(const Clutter& c) {
  return IncidenceMatrix{c.num_members(), c.n(), c.members()};
}

inline Clutter from_incidence(const IncidenceMatrix& m, GroundSet g = {}) {
  if (g.n == 0 && m.cols > 0) g = GroundSet(m.cols);
  if (g.n != m.cols) throw std::invalid_argument("from_incidence: ground size != column count");
  return Clutter::antichain(std::move(g), m.row_masks);
}

// s covers c when it meets every member; s is a transversal when it meets
// every member exactly once. The empty set covers the empty clutter only.
inline bool is_cover(const Clutter& c, Mask s) {
  for (Mask m : c.members())
    if ((m & s) == 0) return false;
  return true;
}

inline bool is_transversal(const Clutter& c, Mask s) {
  for (Mask m : c.members())
    if (popcount(m & s) != 1) return false;
  return true;
}

// Minimum cover cardinality. Empty family -> 0 (the empty set covers).
// A clutter containing the empty member has no cover at all; that value is
// undefined and reported as nullopt rather than a sentinel.
inline std::optional<int> covering_number(const Clutter& c) {
  if (c.has_empty_member()) return std::nullopt;
  if (c.is_empty_family()) return 0;
  const auto& mem = c.members();
  int best = c.n() + 1;
  // Branch and bound: branch on the elements of the first uncovered member.
  auto rec = [&](auto&& self, Mask chosen, int size) -> void {
    if (size >= best) return;
    Mask first_uncovered = 0;
    for (Mask m : mem)
      if ((m & chosen) == 0) {
        first_uncovered = m;
        break;
      }
    if (first_uncovered == 0) {
      best = size;
      return;
    }
    for (int v : bits_of(first_uncovered)) self(self, chosen | (Mask{1} << v), size + 1);
  };
  rec(rec, 0, 0);
  return best;
}

inline std::vector<Mask> two_element_covers(const Clutter& c) {
  std::vector<Mask> out;
  for (int u = 0; u < c.n(); ++u)
    for (int v = u + 1; v < c.n(); ++v) {
      Mask s = (Mask{1} << u) | (Mask{1} << v);
      if (is_cover(c, s)) out.push_back(s);
    }
  return out;
}

// Minor c \ del / con: delete the elements of del (drop members meeting
// them), contract the elements of con (remove them from the survivors and
// keep the minimal sets). Ground set shrinks to V - (del | con), indices
// compacted in ascending order, labels carried along.
inline Clutter minor(const Clutter& c, Mask del, Mask con) {
  Mask full = full_mask(c.n());
  if ((del & con) != 0) throw std::invalid_argument("minor: delete/contract sets overlap");
  if (((del | con) & ~full) != 0) throw std::invalid_argument("minor: sets outside ground set");

  Mask keep = full & ~(del | con);
  std::vector<int> old_of_new = bits_of(keep);
  std::vector<int> new_of_old(c.n(), -1);
  for (std::size_t i = 0; i < old_of_new.size(); ++i) new_of_old[old_of_new[i]] = static_cast<int>(i);

  std::vector<std::string> labels;
  if (!c.ground.labels.empty())
    for (int v : old_of_new) labels.push_back(c.ground.labels[v]);

  std::vector<Mask> family;
  for (Mask m : c.members()) {
    if ((m & del) != 0) continue;
    Mask reduced = 0;
    for (int v : bits_of(m & keep)) reduced |= Mask{1} << new_of_old[v];
    family.push_back(reduced);
  }
  GroundSet g(static_cast<int>(old_of_new.size()), std::move(labels));
  return Clutter::minimal_of(std::move(g), family);
}

// Adds a clone of element w as the new last element: the clone joins every
// member containing w, so the two incidence columns are identical.
inline Clutter duplicate_element(const Clutter& c, int w) {
  if (w < 0 || w >= c.n()) throw std::out_of_range("duplicate_element: no such element");
  if (c.n() + 1 > max_elements) throw std::invalid_argument("duplicate_element: ground set full");
  std::vector<std::string> labels;
  if (!c.ground.labels.empty()) labels = c.ground.labels;
  else
    for (int i = 0; i < c.n(); ++i) labels.push_back(std::to_string(i + 1));
  labels.push_back(labels[w] + "'");
  std::vector<Mask> members = c.members();
  for (Mask& m : members)
    if (contains(m, w)) m |= Mask{1} << c.n();
  return Clutter::antichain(GroundSet(c.n() + 1, std::move(labels)), std::move(members));
}

struct Deduplication {
  Clutter reduced;                      // restricted to class representatives
  std::vector<std::vector<int>> classes;  // identical-column classes, ascending
};

// Groups elements with identical incidence columns; the reduced clutter
// keeps the lowest-index representative of each class. Duplicating every
// representative back out recovers the input up to relabeling.
inline Deduplication deduplicate(const Clutter& c) {
  Deduplication out;
  std::vector<int> rep_of(c.n(), -1);
  std::vector<std::vector<char>> cols(c.n());
  for (int v = 0; v < c.n(); ++v) cols[v] = c.column(v);
  for (int v = 0; v < c.n(); ++v) {
    if (rep_of[v] != -1) continue;
    out.classes.push_back({v});
    rep_of[v] = v;
    for (int u = v + 1; u < c.n(); ++u)
      if (rep_of[u] == -1 && cols[u] == cols[v]) {
        rep_of[u] = v;
        out.classes.back().push_back(u);
      }
  }
  std::vector<int> reps;
  for (const auto& cl : out.classes) reps.push_back(cl[0]);
  std::vector<int> new_of_old(c.n(), -1);
  for (std::size_t i = 0; i < reps.size(); ++i) new_of_old[reps[i]] = static_cast<int>(i);

  std::vector<std::string> labels;
  if (!c.ground.labels.empty())
    for (int r : reps) labels.push_back(c.ground.labels[r]);
  std::vector<Mask> members;
  for (Mask m : c.members()) {
    Mask reduced = 0;
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (contains(m, reps[i])) reduced |= Mask{1} << i;
    members.push_back(reduced);
  }
  out.reduced = Clutter::antichain(GroundSet(static_cast<int>(reps.size()), std::move(labels)),
                                   std::move(members));
  return out;
}

// ---------------------------------------------------------------------------
// Text format.
//
//   # comment lines and blank lines are ignored
//   n 6
//   labels a b c d e f        (optional; defaults to 1..n)
//   m 2 4 6                   (one line per member, 1-based indices)
//
// A line "m" with no indices is the empty member; a file with no m-lines is
// the empty clutter. The writer emits exactly this shape, so write(read(x))
// is byte-stable.
// ---------------------------------------------------------------------------

inline std::string to_text(const Clutter& c) {
  std::ostringstream os;
  os << "n " << c.n() << "\n";
  if (!c.ground.labels.empty()) {
    os << "labels";
    for (const auto& l : c.ground.labels) os << " " << l;
    os << "\n";
  }
  for (Mask m : c.members()) {
    os << "m";
    for (int v : bits_of(m)) os << " " << v + 1;
    os << "\n";
  }
  return os.str();
}

inline Clutter from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int n = -1;
  std::vector<std::string> labels;
  std::vector<Mask> members;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("clutter format, line " + std::to_string(lineno) + ": " + why);
    };
    if (tag == "n") {
      if (n != -1) fail("duplicate n line");
      if (!(ls >> n) || n < 1 || n > max_elements) fail("n must be in 1..64");
    } else if (tag == "labels") {
      if (n == -1) fail("labels before n");
      std::string l;
      while (ls >> l) labels.push_back(l);
      if (static_cast<int>(labels.size()) != n) fail("label count != n");
    } else if (tag == "m") {
      if (n == -1) fail("member before n");
      Mask m = 0;
      int idx;
      while (ls >> idx) {
        if (idx < 1 || idx > n) fail("member index out of range");
        m |= Mask{1} << (idx - 1);
      }
      members.push_back(m);
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  if (n == -1) throw std::invalid_argument("clutter format: missing n line");
  return Clutter::antichain(GroundSet(n, std::move(labels)), std::move(members));
}

}  // namespace clutter
