#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "k2ms/manin.hpp"

using namespace k2ms;

namespace {

std::size_t kernel_dim(u32 p, u32 n, const Nebentype& chi) {
  return reduce(manin_relation_space(p, n, chi.module(), chi)).kernel_basis.size();
}

bool satisfies_matrix_trick(const ManinTable& e) {
  const PointSet& pts = e.points();
  const i64 level = pts.level();
  const u32 p = pts.p();
  auto prim = [&](i64 a, i64 b) { return mod_floor(a, p) != 0 || mod_floor(b, p) != 0; };
  const Field f(p);
  for (const PointX& pt : pts.points()) {
    const i64 x = pt.x, y = pt.y;
    if (!prim(x + 2 * y, 3 * y) || !prim(3 * x, 2 * x + y) || !prim(2 * x + y, x + 2 * y) || !prim(x - y, 3 * y) ||
        !prim(3 * x, x - y))
      continue;
    Vec lhs(e.dim(), 0), rhs(e.dim(), 0);
    e.add_at(x + 2 * y, 3 * y, lhs);
    e.add_at(3 * x, 2 * x + y, lhs);
    e.add_at(2 * x + y, x + 2 * y, lhs);
    e.add_at(x - y, 3 * y, rhs);
    e.add_at(3 * x, x - y, rhs);
    if (lhs != rhs) return false;
    (void)level;
  }
  return true;
}

// e + e o iota, where (e o iota)(x, y) = e(x, -y).
ManinTable iota_symmetrize(const ManinTable& e, u32 p) {
  const Field f(p);
  Vec flat = e.flat();
  const auto& pts = e.point_set()->points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec v = e.value_at(pts[i].x, -static_cast<i64>(pts[i].y));
    for (std::size_t t = 0; t < v.size(); ++t) flat[i * e.dim() + t] = f.add(flat[i * e.dim() + t], v[t]);
  }
  return ManinTable(e.point_set(), e.module(), flat);
}

}  // namespace

TEST_CASE("enumerate_X") {
  CHECK(enumerate_X(5, 1).size() == 24);
  CHECK(enumerate_X(2, 2).size() == 12);
  CHECK(enumerate_X(5, 2).size() == 600);
  const auto x3 = enumerate_X(3, 1);
  auto has = [&](u32 a, u32 b) { return std::find(x3.begin(), x3.end(), PointX{a, b}) != x3.end(); };
  CHECK(has(0, 1));
  CHECK(has(1, 0));
  CHECK(has(1, 1));
  CHECK_FALSE(has(0, 0));
  CHECK(std::is_sorted(x3.begin(), x3.end()));
  const PointSet ps(5, 2);
  for (std::size_t i = 0; i < ps.size(); ++i) CHECK(ps.index_of(ps[i].x, ps[i].y) == i);
  CHECK(ps.index_of(5, 10) == PointSet::npos);
  CHECK(ps.index_of(-1, 26) == ps.index_of(24, 1));
}

TEST_CASE("section_gamma examples") {
  CHECK(section_gamma(5, 1, {0, 1}) == IntMat2{1, 0, 0, 1});
  CHECK(section_gamma(5, 1, {1, 0}) == IntMat2{0, -1, 1, 0});
  CHECK(section_gamma(5, 1, {2, 1}) == IntMat2{1, 0, 2, 1});
  CHECK_THROWS_AS(section_gamma(5, 2, {5, 10}), std::invalid_argument);
}

TEST_CASE("sections are right inverses of the orbit map") {
  std::mt19937_64 rng(17);
  for (auto [p, n] : std::vector<std::pair<u32, u32>>{{2, 2}, {3, 1}, {5, 1}, {5, 2}, {7, 2}, {37, 1}}) {
    const i64 level = prime_power(p, n);
    for (const PointX& pt : enumerate_X(p, n)) {
      for (const IntMat2& g : {section_gamma(p, n, pt), section_gamma_randomized(p, n, pt, rng)}) {
        CHECK(g.det() == 1);
        CHECK(mod_floor(g.c, level) == pt.x);
        CHECK(mod_floor(g.d, level) == pt.y);
      }
    }
  }
}

TEST_CASE("Manin space at p = 3 matches brute force over all maps X -> F_3") {
  const auto pts = enumerate_X(3, 1);
  REQUIRE(pts.size() == 8);
  auto idx = [&](i64 x, i64 y) {
    const PointX q{static_cast<u32>(mod_floor(x, 3)), static_cast<u32>(mod_floor(y, 3))};
    return static_cast<std::size_t>(std::find(pts.begin(), pts.end(), q) - pts.begin());
  };
  std::size_t count = 0;
  std::vector<int> e(8, 0);
  for (int code = 0; code < 6561; ++code) {
    int c = code;
    for (int i = 0; i < 8; ++i, c /= 3) e[i] = c % 3;
    bool ok = true;
    for (const PointX& pt : pts) {
      const i64 x = pt.x, y = pt.y;
      ok = ok && e[idx(2 * x, 2 * y)] == e[idx(x, y)];
      ok = ok && (e[idx(x, y)] + e[idx(y, -x)]) % 3 == 0;
      ok = ok && (e[idx(x, y)] + e[idx(y, -x - y)] + e[idx(-x - y, x)]) % 3 == 0;
    }
    if (ok) ++count;
  }
  std::size_t dim = 0;
  for (std::size_t c = count; c > 1; c /= 3) ++dim;
  CHECK(static_cast<std::size_t>(std::pow(3, dim)) == count);
  CHECK(kernel_dim(3, 1, Nebentype::trivial(3, 1, 1)) == dim);
  CHECK(manin_basis(std::make_shared<const PointSet>(3, 1), Nebentype::trivial(3, 1, 1)).size() == dim);
}

TEST_CASE("odd characters and the zero module give no symbols") {
  for (u32 p : {5u, 7u, 11u})
    for (i64 j = 1; j < p - 1; j += 2) {
      const Nebentype chi = Nebentype::power_of_omega(p, 1, j);
      CHECK_FALSE(chi.is_even());
      CHECK(kernel_dim(p, 1, chi) == 0);
    }
  CHECK(kernel_dim(5, 2, Nebentype::power_of_omega(5, 2, 1)) == 0);
  CHECK(kernel_dim(7, 1, Nebentype::trivial(7, 1, 0)) == 0);
}

TEST_CASE("relation rows are generated block by block and deduplicated") {
  const PointSet pts(5, 1);
  const Nebentype chi = Nebentype::power_of_omega(5, 1, 2);
  std::vector<SparseRow> rows;
  for_each_manin_relation(pts, chi, [&](const SparseRow& r) { rows.push_back(r); });
  std::set<SparseRow> distinct(rows.begin(), rows.end());
  CHECK(distinct.size() == rows.size());
  for (const auto& r : rows) CHECK_FALSE(r.empty());
  CHECK(manin_relation_space(5, 1, chi.module(), chi).rows() == rows.size());
}

TEST_CASE("validated symbols satisfy e(x) = e(-x) and the matrix trick") {
  for (auto [p, n] : std::vector<std::pair<u32, u32>>{{5, 1}, {7, 1}, {11, 1}, {5, 2}}) {
    const auto pts = std::make_shared<const PointSet>(p, n);
    for (i64 j = 0; j < p - 1; j += 2) {
      const Nebentype chi = Nebentype::power_of_omega(p, n, j);
      CHECK(chi.is_multiplicative());
      for (const ManinTable& e : manin_basis(pts, chi)) {
        CHECK(e.validated());
        CHECK(check_manin_relations(e, chi).ok());
        for (const PointX& pt : pts->points())
          CHECK(e.value_at(-static_cast<i64>(pt.x), -static_cast<i64>(pt.y)) == e.value_at(pt.x, pt.y));
        if (j == 0) {
          ManinTable plus = iota_symmetrize(e, p);
          REQUIRE(validate(plus, chi));
          CHECK(satisfies_matrix_trick(plus));
        }
      }
    }
  }
}

TEST_CASE("matrix trick needs e(x, -y) = e(x, y)") {
  // Holds for every symbol when there are no cusp forms, fails at 11.
  auto all_pass = [](u32 p, u32 n) {
    const auto pts = std::make_shared<const PointSet>(p, n);
    const Nebentype chi = Nebentype::trivial(p, n, 1);
    bool ok = true;
    for (const ManinTable& e : manin_basis(pts, chi)) ok = ok && satisfies_matrix_trick(e);
    return ok;
  };
  CHECK(all_pass(5, 1));
  CHECK(all_pass(7, 1));
  CHECK_FALSE(all_pass(11, 1));
  CHECK_FALSE(all_pass(5, 2));
}

TEST_CASE("validate rejects a broken table") {
  const auto pts = std::make_shared<const PointSet>(5, 1);
  const Nebentype chi = Nebentype::trivial(5, 1, 1);
  ManinTable e(pts, chi.module());
  e.value(pts->index_of(1, 2))[0] = 1;
  CHECK_FALSE(validate(e, chi));
  CHECK_FALSE(e.validated());
  ManinTable zero(pts, chi.module());
  CHECK(validate(zero, chi));
  CHECK(is_supported_at_infty(zero));
  CHECK_FALSE(is_supported_at_infty(e));
}

TEST_CASE("boundary symbols do not depend on the section") {
  std::mt19937_64 rng(99);
  for (auto [p, n] : std::vector<std::pair<u32, u32>>{{5, 1}, {7, 1}, {5, 2}, {3, 2}}) {
    const auto pts = std::make_shared<const PointSet>(p, n);
    for (i64 j = 0; j < p - 1; j += 2) {
      const Nebentype chi = Nebentype::power_of_omega(p, n, j);
      const ManinTable a = boundary_symbol_at_infty(pts, chi, {1}, [&](const PointX& x) { return section_gamma(p, n, x); });
      const ManinTable b =
          boundary_symbol_at_infty(pts, chi, {1}, [&](const PointX& x) { return section_gamma_randomized(p, n, x, rng); });
      CHECK(a == b);
      CHECK(check_manin_relations(a, chi).ok());
      CHECK(is_supported_at_infty(a));
      CHECK(a.value_at(0, 1) == Vec{1});
      CHECK(a.value_at(1, 0) == Vec{p - 1});
      CHECK(supported_at_infty_basis(pts, chi).size() == 1);
    }
  }
}
