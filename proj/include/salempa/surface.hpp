#pragma once

// Glued-rectangle surfaces from positive integer matrices. Strip j is a
// cyclic band of sum_i Q(i,j) rectangles ("boxes"); the central curve of
// strip j is C_j. Each box carries one D-label; D_i runs top-to-bottom
// through each of its boxes and the bottom edge of a box is glued to the
// top edge of the next box on D_i's itinerary. Left/right edges are glued
// along the strip. All identifications are translations, so each crossing
// of D_i with C_j has the same sign.
//
// The analysis walks box corners around each quotient vertex: crossing a
// vertical side swaps east/west, crossing a horizontal side swaps
// north/south. Corner orbits are the complementary faces of the curve
// system; V = #boxes (one crossing per box), E = 2V.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "salempa/matrix.hpp"
#include "salempa/rational.hpp"

namespace salempa {

enum Side : int { kTop = 0, kBottom = 1, kLeft = 2, kRight = 3 };
enum Corner : int { kNW = 0, kNE = 1, kSE = 2, kSW = 3 };

struct SurfaceBox {
  int strip;   // C-curve index
  int pos;     // position along the strip
  int dlabel;  // D-curve index
};

struct CombinatorialSurface {
  int n = 0;                            // number of C curves == number of D curves
  std::vector<SurfaceBox> boxes;
  std::vector<int> glue;                // involution on slots, slot = 4*box + side
  std::vector<std::vector<int>> c_paths;  // per strip: box ids in cyclic order
  std::vector<std::vector<int>> d_paths;  // per D label: box ids in itinerary order

  static int slot(int box, Side side) { return 4 * box + static_cast<int>(side); }
  static int box_of(int s) { return s / 4; }
  static Side side_of(int s) { return static_cast<Side>(s % 4); }
};

struct RoutingPlan {
  // per strip: the D-label of each box, left to right
  std::vector<std::vector<int>> strip_labels;
  // per D-label: the cyclic itinerary as (strip, pos) references
  std::vector<std::vector<std::pair<int, int>>> connections;
};

struct SurfaceReport {
  long long vertices = 0;  // crossings of C with D
  long long edges = 0;
  long long faces = 0;
  long long euler = 0;
  long long genus = 0;  // meaningful when connected and orientable
  bool orientable = false;
  bool connected = false;
  int components = 0;
  bool tight = false;
  bool filling = false;
  RatMatrix intersection;  // recovered matrix, entry (i, j) = i(D_i, C_j)
};

namespace detail {

inline void validate_positive_integer_matrix(const RatMatrix& q) {
  if (!q.is_square() || q.rows() == 0)
    throw precondition_error("square matrix of positive size required");
  if (!q.is_integral()) throw precondition_error("integer matrix required");
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j)
      if (q.at(i, j) < 1) throw precondition_error("positive entries required");
  if (q.det() == 0) throw precondition_error("nonsingular required");
}

}  // namespace detail

inline RoutingPlan canonical_plan(const RatMatrix& q) {
  detail::validate_positive_integer_matrix(q);
  const int n = q.rows();
  RoutingPlan plan;
  plan.strip_labels.resize(n);
  plan.connections.resize(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      long long count = static_cast<long long>(rat_num(q.at(i, j)));
      for (long long c = 0; c < count; ++c) plan.strip_labels[j].push_back(i);
    }
  // D_i crosses its boxes on strip j left to right, then moves to strip j+1
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < static_cast<int>(plan.strip_labels[j].size()); ++p)
        if (plan.strip_labels[j][p] == i) plan.connections[i].emplace_back(j, p);
  return plan;
}

inline CombinatorialSurface build_surface(const RatMatrix& q,
                                          const std::optional<RoutingPlan>& plan_opt = {}) {
  detail::validate_positive_integer_matrix(q);
  const int n = q.rows();
  RoutingPlan plan = plan_opt ? *plan_opt : canonical_plan(q);

  if (static_cast<int>(plan.strip_labels.size()) != n ||
      static_cast<int>(plan.connections.size()) != n)
    throw precondition_error("routing plan size does not match the matrix");
  // label multiplicities must reproduce Q
  for (int j = 0; j < n; ++j) {
    std::vector<long long> count(n, 0);
    for (int label : plan.strip_labels[j]) {
      if (label < 0 || label >= n) throw precondition_error("routing plan label out of range");
      ++count[label];
    }
    for (int i = 0; i < n; ++i)
      if (Rat(count[i]) != q.at(i, j))
        throw precondition_error("routing plan multiplicities do not match the matrix");
  }

  CombinatorialSurface s;
  s.n = n;
  std::vector<int> strip_offset(n + 1, 0);
  for (int j = 0; j < n; ++j)
    strip_offset[j + 1] = strip_offset[j] + static_cast<int>(plan.strip_labels[j].size());
  const int total = strip_offset[n];
  s.boxes.reserve(total);
  for (int j = 0; j < n; ++j)
    for (int p = 0; p < static_cast<int>(plan.strip_labels[j].size()); ++p)
      s.boxes.push_back({j, p, plan.strip_labels[j][p]});
  auto box_id = [&](int strip, int pos) { return strip_offset[strip] + pos; };

  s.glue.assign(4 * total, -1);
  // strip bands: right edge to the left edge of the next box around the band
  s.c_paths.resize(n);
  for (int j = 0; j < n; ++j) {
    const int len = static_cast<int>(plan.strip_labels[j].size());
    for (int p = 0; p < len; ++p) {
      int b = box_id(j, p);
      int b2 = box_id(j, (p + 1) % len);
      s.glue[CombinatorialSurface::slot(b, kRight)] = CombinatorialSurface::slot(b2, kLeft);
      s.glue[CombinatorialSurface::slot(b2, kLeft)] = CombinatorialSurface::slot(b, kRight);
      s.c_paths[j].push_back(b);
    }
  }
  // D itineraries: bottom edge to the top edge of the next box on the curve
  s.d_paths.resize(n);
  for (int i = 0; i < n; ++i) {
    const auto& conn = plan.connections[i];
    if (conn.empty()) throw precondition_error("routing plan leaves a D curve empty");
    std::vector<char> seen_box(total, 0);
    for (const auto& [strip, pos] : conn) {
      if (strip < 0 || strip >= n || pos < 0 ||
          pos >= static_cast<int>(plan.strip_labels[strip].size()))
        throw precondition_error("routing plan connection out of range");
      if (plan.strip_labels[strip][pos] != i)
        throw precondition_error("routing plan connection visits a box of another D curve");
      int b = box_id(strip, pos);
      if (seen_box[b]) throw precondition_error("routing plan visits a box twice");
      seen_box[b] = 1;
      s.d_paths[i].push_back(b);
    }
    long long expected = 0;
    for (int j = 0; j < n; ++j) expected += static_cast<long long>(rat_num(q.at(i, j)));
    if (static_cast<long long>(conn.size()) != expected)
      throw precondition_error("routing plan misses boxes of a D curve");
    const int len = static_cast<int>(s.d_paths[i].size());
    for (int t = 0; t < len; ++t) {
      int b = s.d_paths[i][t];
      int b2 = s.d_paths[i][(t + 1) % len];
      s.glue[CombinatorialSurface::slot(b, kBottom)] = CombinatorialSurface::slot(b2, kTop);
      s.glue[CombinatorialSurface::slot(b2, kTop)] = CombinatorialSurface::slot(b, kBottom);
    }
  }
  for (int sl = 0; sl < 4 * total; ++sl) {
    if (s.glue[sl] < 0 || s.glue[s.glue[sl]] != sl || s.glue[sl] == sl)
      throw internal_error("gluing is not a fixed-point-free involution");
  }
  return s;
}

inline SurfaceReport analyze(const CombinatorialSurface& s) {
  const int total = static_cast<int>(s.boxes.size());
  if (total == 0) throw precondition_error("empty surface");
  if (static_cast<int>(s.glue.size()) != 4 * total)
    throw precondition_error("slot table size mismatch");
  for (int sl = 0; sl < 4 * total; ++sl) {
    int t = s.glue[sl];
    if (t < 0 || t >= 4 * total || s.glue[t] != sl || t == sl)
      throw precondition_error("gluing is not a fixed-point-free involution");
    Side a = CombinatorialSurface::side_of(sl), b = CombinatorialSurface::side_of(t);
    bool vertical = (a == kLeft && b == kRight) || (a == kRight && b == kLeft);
    bool horizontal = (a == kTop && b == kBottom) || (a == kBottom && b == kTop);
    if (!vertical && !horizontal)
      throw precondition_error("unsupported gluing pattern: sides must pair T-B or L-R");
  }

  SurfaceReport rep;
  rep.vertices = total;
  rep.edges = 2LL * total;

  // faces: corner walks around quotient vertices
  auto corner_sides = [](Corner c) -> std::pair<Side, Side> {
    switch (c) {
      case kNW: return {kTop, kLeft};
      case kNE: return {kTop, kRight};
      case kSE: return {kBottom, kRight};
      default: return {kBottom, kLeft};
    }
  };
  auto cross = [&](int box, Corner c, Side through) -> std::pair<int, Corner> {
    int target = s.glue[CombinatorialSurface::slot(box, through)];
    int nbox = CombinatorialSurface::box_of(target);
    // vertical crossings swap east/west, horizontal swap north/south
    Corner nc;
    if (through == kLeft || through == kRight)
      nc = (c == kNW) ? kNE : (c == kNE) ? kNW : (c == kSE) ? kSW : kSE;
    else
      nc = (c == kNW) ? kSW : (c == kSW) ? kNW : (c == kNE) ? kSE : kNE;
    return {nbox, nc};
  };
  std::vector<char> corner_seen(4 * total, 0);
  long long faces = 0;
  for (int start = 0; start < 4 * total; ++start) {
    if (corner_seen[start]) continue;
    ++faces;
    int box = start / 4;
    Corner c = static_cast<Corner>(start % 4);
    Side through = corner_sides(c).first;  // deterministic walk direction
    int guard = 0;
    while (true) {
      if (!corner_seen[4 * box + c]) corner_seen[4 * box + c] = 1;
      auto [nbox, nc] = cross(box, c, through);
      Side entered = CombinatorialSurface::side_of(s.glue[CombinatorialSurface::slot(box, through)]);
      auto [s1, s2] = corner_sides(nc);
      Side nthrough = (entered == s1) ? s2 : s1;
      box = nbox;
      c = nc;
      through = nthrough;
      if (4 * box + c == start && through == corner_sides(static_cast<Corner>(start % 4)).first)
        break;
      if (++guard > 16 * total) throw internal_error("face traversal did not close");
    }
  }
  rep.faces = faces;
  rep.euler = rep.vertices - rep.edges + rep.faces;

  // connectivity over boxes through glued sides
  std::vector<int> comp(total, -1);
  int ncomp = 0;
  for (int b = 0; b < total; ++b) {
    if (comp[b] >= 0) continue;
    std::vector<int> stack{b};
    comp[b] = ncomp;
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int side = 0; side < 4; ++side) {
        int nb = CombinatorialSurface::box_of(s.glue[4 * cur + side]);
        if (comp[nb] < 0) {
          comp[nb] = ncomp;
          stack.push_back(nb);
        }
      }
    }
    ++ncomp;
  }
  rep.components = ncomp;
  rep.connected = (ncomp == 1);

  // orientability: all identifications are translations between opposite
  // sides, so a consistent orientation propagates with equal signs
  std::vector<int> orient(total, 0);
  bool orientable = true;
  for (int b = 0; b < total && orientable; ++b) {
    if (orient[b] != 0) continue;
    orient[b] = 1;
    std::vector<int> stack{b};
    while (!stack.empty() && orientable) {
      int cur = stack.back();
      stack.pop_back();
      for (int side = 0; side < 4; ++side) {
        int nb = CombinatorialSurface::box_of(s.glue[4 * cur + side]);
        int want = orient[cur];  // translation gluings preserve orientation
        if (orient[nb] == 0) {
          orient[nb] = want;
          stack.push_back(nb);
        } else if (orient[nb] != want) {
          orientable = false;
          break;
        }
      }
    }
  }
  rep.orientable = orientable;

  // tightness: every crossing of D_i with C_j carries the same sign; in
  // this slot model every D step enters a top edge and leaves a bottom edge
  rep.tight = true;
  for (const auto& path : s.d_paths)
    for (size_t t = 0; t < path.size() && rep.tight; ++t) {
      int target = s.glue[CombinatorialSurface::slot(path[t], kBottom)];
      if (CombinatorialSurface::side_of(target) != kTop ||
          CombinatorialSurface::box_of(target) != path[(t + 1) % path.size()])
        rep.tight = false;
    }
  // complement components are disks exactly when the corner walks close,
  // which the traversal above verified
  rep.filling = true;

  if (rep.connected && rep.orientable) {
    if (rep.euler % 2 != 0) throw internal_error("odd euler characteristic on a closed surface");
    rep.genus = (2 - rep.euler) / 2;
  } else {
    rep.genus = -1;
  }

  // recovered intersection matrix
  int n = s.n;
  rep.intersection = RatMatrix(n, n);
  for (const SurfaceBox& b : s.boxes) rep.intersection.at(b.dlabel, b.strip) += 1;
  return rep;
}

// Prop-style genus check for the canonical routing: all entries >= 2.
inline bool genus_formula_check(const RatMatrix& q) {
  detail::validate_positive_integer_matrix(q);
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j)
      if (q.at(i, j) < 2) throw precondition_error("formula out of scope: entries >= 2 required");
  const long long n = q.rows();
  SurfaceReport rep = analyze(build_surface(q));
  return rep.connected && rep.orientable && rep.genus == n * n - n + 1;
}

}  // namespace salempa
