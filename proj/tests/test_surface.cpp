#include <catch2/catch_amalgamated.hpp>

#include "salempa/surface.hpp"

using namespace salempa;

namespace {

RatMatrix IM(std::vector<std::vector<long long>> rows) { return RatMatrix::from_int_rows(rows); }

// Independent face-count oracle: union-find over corner identifications.
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

long long face_count_oracle(const CombinatorialSurface& s) {
  const int total = static_cast<int>(s.boxes.size());
  UnionFind uf(4 * total);
  auto corner = [](int box, Corner c) { return 4 * box + static_cast<int>(c); };
  for (int sl = 0; sl < 4 * total; ++sl) {
    int t = s.glue[sl];
    if (t < sl) continue;
    int b = CombinatorialSurface::box_of(sl), b2 = CombinatorialSurface::box_of(t);
    Side a = CombinatorialSurface::side_of(sl);
    if (a == kRight) {  // R(b) ~ L(b2)
      uf.unite(corner(b, kNE), corner(b2, kNW));
      uf.unite(corner(b, kSE), corner(b2, kSW));
    } else if (a == kLeft) {
      uf.unite(corner(b, kNW), corner(b2, kNE));
      uf.unite(corner(b, kSW), corner(b2, kSE));
    } else if (a == kBottom) {  // B(b) ~ T(b2)
      uf.unite(corner(b, kSW), corner(b2, kNW));
      uf.unite(corner(b, kSE), corner(b2, kNE));
    } else {
      uf.unite(corner(b, kNW), corner(b2, kSW));
      uf.unite(corner(b, kNE), corner(b2, kSE));
    }
  }
  long long count = 0;
  for (int i = 0; i < 4 * total; ++i)
    if (uf.find(i) == i) ++count;
  return count;
}

}  // namespace

TEST_CASE("the one-box torus") {
  auto s = build_surface(IM({{1}}));
  auto rep = analyze(s);
  CHECK(rep.vertices == 1);
  CHECK(rep.edges == 2);
  CHECK(rep.faces == 1);
  CHECK(rep.euler == 0);
  CHECK(rep.genus == 1);
  CHECK(rep.orientable);
  CHECK(rep.connected);
  CHECK(rep.tight);
  CHECK(rep.filling);
  CHECK(rep.intersection == IM({{1}}));
}

TEST_CASE("two crossings on a torus") {
  auto rep = analyze(build_surface(IM({{2}})));
  CHECK(rep.vertices == 2);
  CHECK(rep.edges == 4);
  CHECK(rep.faces == 2);
  CHECK(rep.genus == 1);
  CHECK(genus_formula_check(IM({{2}})));
}

TEST_CASE("genus formula for 2x2 matrices with entries >= 2") {
  CHECK(genus_formula_check(IM({{3, 2}, {2, 3}})));
  CHECK(genus_formula_check(IM({{2, 2}, {2, 3}})));
  auto rep = analyze(build_surface(IM({{3, 2}, {2, 3}})));
  CHECK(rep.genus == 3);
}

TEST_CASE("genus formula for a 3x3 sample") {
  RatMatrix q = IM({{3, 2, 2}, {2, 3, 2}, {2, 2, 3}});
  CHECK(genus_formula_check(q));
  CHECK(analyze(build_surface(q)).genus == 7);
}

TEST_CASE("genus formula guard") {
  CHECK_THROWS_AS(genus_formula_check(IM({{5, 1}, {1, 2}})), precondition_error);
}

TEST_CASE("matrix validation") {
  CHECK_THROWS_WITH(build_surface(IM({{1, 1}, {1, 1}})), "nonsingular required");
  CHECK_THROWS_WITH(build_surface(IM({{1, 0}, {0, 1}})), "positive entries required");
  RatMatrix half(1, 1);
  half.at(0, 0) = Rat(1, 2);
  CHECK_THROWS_AS(build_surface(half), precondition_error);
}

TEST_CASE("analysis recovers the intersection matrix") {
  for (auto rows : {std::vector<std::vector<long long>>{{5, 1}, {1, 2}},
                    std::vector<std::vector<long long>>{{2, 1}, {1, 3}},
                    std::vector<std::vector<long long>>{{1, 2}, {2, 1}}}) {
    RatMatrix q = IM(rows);
    auto rep = analyze(build_surface(q));
    CHECK(rep.intersection == q);
    CHECK(rep.connected);
    CHECK(rep.orientable);
    CHECK(rep.tight);
    CHECK(rep.filling);
    CHECK(rep.euler % 2 == 0);
  }
}

TEST_CASE("face walk agrees with the union-find oracle") {
  for (auto rows : {std::vector<std::vector<long long>>{{1}},
                    std::vector<std::vector<long long>>{{3}},
                    std::vector<std::vector<long long>>{{5, 1}, {1, 2}},
                    std::vector<std::vector<long long>>{{3, 2}, {2, 3}},
                    std::vector<std::vector<long long>>{{2, 2, 2}, {2, 3, 2}, {3, 2, 4}}}) {
    auto s = build_surface(IM(rows));
    CHECK(analyze(s).faces == face_count_oracle(s));
  }
}

TEST_CASE("routing plans: same intersection matrix, possibly different genus") {
  RatMatrix q = IM({{2, 2}, {2, 3}});
  auto canonical = analyze(build_surface(q));

  // reroute D_0: interleave the two strips instead of finishing one first
  RoutingPlan plan = canonical_plan(q);
  plan.connections[0] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  auto rerouted = analyze(build_surface(q, plan));
  CHECK(rerouted.intersection == q);
  CHECK(rerouted.orientable);
  CHECK(rerouted.tight);
  CHECK(canonical.intersection == rerouted.intersection);
}

TEST_CASE("routing plan validation") {
  RatMatrix q = IM({{2, 2}, {2, 3}});
  RoutingPlan bad = canonical_plan(q);
  bad.strip_labels[0][0] = 1;  // breaks multiplicities
  CHECK_THROWS_AS(build_surface(q, bad), precondition_error);

  RoutingPlan dup = canonical_plan(q);
  dup.connections[0] = {{0, 0}, {0, 0}, {0, 1}, {1, 1}};
  CHECK_THROWS_AS(build_surface(q, dup), precondition_error);

  RoutingPlan wrong_box = canonical_plan(q);
  wrong_box.connections[0][0] = {1, 4};  // a D_1 box on strip 1
  CHECK_THROWS_AS(build_surface(q, wrong_box), precondition_error);
}

TEST_CASE("exhaustive small round trip") {
  for (long long a = 1; a <= 3; ++a)
    for (long long b = 1; b <= 3; ++b)
      for (long long c = 1; c <= 3; ++c)
        for (long long d = 1; d <= 3; ++d) {
          if (a * d == b * c) continue;
          RatMatrix q = IM({{a, b}, {c, d}});
          auto rep = analyze(build_surface(q));
          CHECK(rep.intersection == q);
          CHECK(rep.euler % 2 == 0);
          CHECK(rep.orientable);
          CHECK(rep.connected);
        }
}
