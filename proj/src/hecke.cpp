#include "k2ms/hecke.hpp"

#include <algorithm>
#include <optional>

namespace k2ms {

HeckeSet merel_set(u32 m) {
  if (m == 0) throw std::invalid_argument("merel_set: m must be positive");
  HeckeSet out{m, {}};
  const i64 mm = m;
  // ad = m + bc > bc >= 0 with a > b and d > c, so a, d <= m.
  for (i64 a = 1; a <= mm; ++a)
    for (i64 b = 0; b < a; ++b)
      for (i64 c = 0; c < mm; ++c)
        for (i64 d = c + 1; d <= mm; ++d)
          if (a * d - b * c == mm) out.matrices.push_back({a, b, c, d});
  return out;
}

ManinTable hecke_apply(const ManinTable& e, u32 m) {
  if (!e.validated()) throw std::invalid_argument("hecke_apply: symbol is not validated");
  const HeckeSet h = merel_set(m);
  const PointSet& points = e.points();
  ManinTable out(e.point_set(), e.module());
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const i64 x = points[idx].x, y = points[idx].y;
    auto slot = out.value(idx);
    for (const IntMat2& g : h.matrices) e.add_at(x * g.a + y * g.c, x * g.b + y * g.d, slot);
  }
  out.mark_validated();
  return out;
}

ManinTable hecke_closed_form(const ManinTable& e, u32 q) {
  if (q != 2 && q != 3) throw std::invalid_argument("hecke_closed_form: q must be 2 or 3");
  if (!e.validated()) throw std::invalid_argument("hecke_closed_form: symbol is not validated");
  const PointSet& points = e.points();
  ManinTable out(e.point_set(), e.module());
  const i64 qq = q;
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const i64 x = points[idx].x, y = points[idx].y;
    auto slot = out.value(idx);
    e.add_at(x, qq * y, slot);
    e.add_at(qq * x, y, slot);
    e.add_at(x + y, qq * y, slot);
    e.add_at(qq * x, x + y, slot);
    if (q == 3) {
      e.add_at(x - y, 3 * y, slot);
      e.add_at(3 * x, x - y, slot);
    }
  }
  out.mark_validated();
  return out;
}

std::optional<FpMatrix> hecke_matrix_on(const std::vector<ManinTable>& basis, u32 m) {
  if (basis.empty()) return FpMatrix(0, 0, 2);
  const std::size_t len = basis.front().flat().size();
  const std::size_t b = basis.size();
  const u32 p = basis.front().module().p;
  // Reduce [basis | images]: with independent basis columns the images lie in
  // the span iff no pivot falls in the image block, and then the top rows of
  // the image block are the coordinates.
  FpMatrix aug(len, 2 * b, p);
  for (std::size_t j = 0; j < b; ++j) {
    const ManinTable img = hecke_apply(basis[j], m);
    for (std::size_t r = 0; r < len; ++r) {
      aug(r, j) = basis[j].flat()[r];
      aug(r, b + j) = img.flat()[r];
    }
  }
  const Reduction red = reduce(aug);
  if (red.rank != b || red.pivots.back() != b - 1) return std::nullopt;
  FpMatrix result(b, b, p);
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) result(i, j) = red.rref(i, b + j);
  return result;
}

CheckReport verify_boundary_eigenvalues(const std::shared_ptr<const PointSet>& points, const Nebentype& chi,
                                        const std::vector<u32>& ells) {
  CheckReport rep;
  rep.command = "boundary-eigenvalues";
  rep.params = {{"p", points->p()}, {"n", points->n()}, {"dim", chi.dim()}};
  const std::vector<ManinTable> basis = supported_at_infty_basis(points, chi);
  rep.data["boundary_dim"] = basis.size();
  const u32 p = points->p();
  const Field f(p);
  for (u32 ell : ells) {
    std::size_t bad = 0;
    for (const ManinTable& e : basis) {
      const ManinTable img = hecke_apply(e, ell);
      ManinTable expected = e.scaled(ell % p);
      if (ell % p != 0) {
        const FpMatrix& act = chi(ell);
        for (std::size_t idx = 0; idx < points->size(); ++idx) {
          const Vec v = act.apply(e.value(idx));
          auto slot = expected.value(idx);
          for (std::size_t i = 0; i < v.size(); ++i) slot[i] = f.add(slot[i], v[i]);
        }
      }
      if (!(img == expected)) ++bad;
    }
    const std::string what = ell % p == 0 ? "T" + std::to_string(ell) + " = p = 0"
                                          : "T" + std::to_string(ell) + " = l + chi(l)";
    rep.add(what + " on symbols supported at infinity", bad == 0,
            std::to_string(basis.size() - bad) + "/" + std::to_string(basis.size()) + " basis symbols");
  }
  return rep;
}

}  // namespace k2ms
