#include "k2ms/manin.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

namespace k2ms {

namespace {

i64 inverse_mod(i64 a, i64 m) {
  i64 g = m, x = 0, r = mod_floor(a, m), s = 1;
  while (r != 0) {
    const i64 q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, s) = std::make_pair(s, x - q * s);
  }
  if (g != 1) throw std::domain_error("inverse_mod: " + std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return mod_floor(x, m);
}

SparseRow to_sparse(const std::map<u32, u32>& acc) {
  SparseRow row;
  for (const auto& [col, val] : acc)
    if (val != 0) row.emplace_back(col, val);
  return row;
}

// Lift (x, y) to a coprime integer pair congruent mod N.
std::pair<i64, i64> coprime_lift(i64 x, i64 y, i64 level) {
  if (std::gcd(x, y) == 1) return {x, y};
  if (x == 0) return {level, y};
  while (std::gcd(x, y) != 1) y += level;
  return {x, y};
}

IntMat2 complete(i64 x, i64 y) {
  if (x == 0) return {};  // y == 1 here
  const i64 a = x == 1 ? 0 : inverse_mod(y, x);
  const i64 b = (a * y - 1) / x;
  return {a, b, x, y};
}

}  // namespace

std::vector<PointX> enumerate_X(u32 p, u32 n) {
  const u32 level = prime_power(p, n);
  std::vector<PointX> out;
  out.reserve(static_cast<std::size_t>(level) * level);
  for (u32 x = 0; x < level; ++x)
    for (u32 y = 0; y < level; ++y)
      if (x % p != 0 || y % p != 0) out.push_back({x, y});
  return out;
}

PointSet::PointSet(u32 p, u32 n) : p_(p), n_(n), level_(prime_power(p, n)), points_(enumerate_X(p, n)) {
  if (!is_prime(p)) throw std::invalid_argument("PointSet: p must be prime");
  if (n == 0) throw std::invalid_argument("PointSet: n must be positive");
  lookup_.assign(static_cast<std::size_t>(level_) * level_, npos);
  for (std::size_t i = 0; i < points_.size(); ++i)
    lookup_[static_cast<std::size_t>(points_[i].x) * level_ + points_[i].y] = i;
}

std::size_t PointSet::index_of(i64 x, i64 y) const {
  const auto xr = static_cast<std::size_t>(mod_floor(x, level_));
  const auto yr = static_cast<std::size_t>(mod_floor(y, level_));
  return lookup_[xr * level_ + yr];
}

IntMat2 section_gamma(u32 p, u32 n, const PointX& pt) {
  const i64 level = prime_power(p, n);
  if (pt.x % p == 0 && pt.y % p == 0) throw std::invalid_argument("section_gamma: point is not primitive");
  const auto [x, y] = coprime_lift(mod_floor(pt.x, level), mod_floor(pt.y, level), level);
  return complete(x, y);
}

IntMat2 section_gamma_randomized(u32 p, u32 n, const PointX& pt, std::mt19937_64& rng) {
  const i64 level = prime_power(p, n);
  if (pt.x % p == 0 && pt.y % p == 0) throw std::invalid_argument("section_gamma: point is not primitive");
  std::uniform_int_distribution<i64> shift(0, 4);
  std::uniform_int_distribution<i64> twist(-3, 3);
  const auto [x, y] = coprime_lift(pt.x + shift(rng) * level, pt.y + shift(rng) * level, level);
  IntMat2 g = complete(x, y);
  const i64 u = twist(rng);
  g.a += u * g.c;
  g.b += u * g.d;
  return g;
}

// ---------------------------------------------------------------------------

Nebentype::Nebentype(u32 p, u32 n, CoeffModule module, const ActionFn& action)
    : p_(p), n_(n), level_(prime_power(p, n)), module_(module) {
  if (module_.p != p) throw std::invalid_argument("Nebentype: coefficient field must be F_p");
  actions_.resize(level_, FpMatrix(0, 0, p));
  for (u32 a = 1; a < level_; ++a) {
    if (a % p == 0) continue;
    FpMatrix m = action(a);
    if (m.rows() != module_.dim || m.cols() != module_.dim) throw std::invalid_argument("Nebentype: action has wrong shape");
    actions_[a] = std::move(m);
  }
}

Nebentype Nebentype::power_of_omega(u32 p, u32 n, i64 j) {
  return Nebentype(p, n, CoeffModule{p, 1}, [p, j](u32 a) {
    FpMatrix m(1, 1, p);
    m(0, 0) = omega_pow(static_cast<i64>(a), j, p).value;
    return m;
  });
}

Nebentype Nebentype::trivial(u32 p, u32 n, std::size_t dim) {
  return Nebentype(p, n, CoeffModule{p, dim}, [p, dim](u32) { return FpMatrix::identity(dim, p); });
}

const FpMatrix& Nebentype::operator()(i64 unit) const {
  const auto r = static_cast<std::size_t>(mod_floor(unit, level_));
  if (r % p_ == 0) throw std::domain_error("Nebentype: argument is not a unit");
  return actions_[r];
}

bool Nebentype::is_even() const { return (*this)(-1) == FpMatrix::identity(dim(), p_); }

bool Nebentype::is_multiplicative() const {
  if (level_ > 1 && !((*this)(1) == FpMatrix::identity(dim(), p_))) return false;
  for (u32 a = 1; a < level_; ++a) {
    if (a % p_ == 0) continue;
    for (u32 b = 1; b < level_; ++b) {
      if (b % p_ == 0) continue;
      const i64 ab = static_cast<i64>(a) * b;
      if (!((*this)(ab) == (*this)(a) * (*this)(b))) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

ManinTable::ManinTable(std::shared_ptr<const PointSet> points, CoeffModule module)
    : points_(std::move(points)), module_(module), flat_(points_->size() * module_.dim, 0) {}

ManinTable::ManinTable(std::shared_ptr<const PointSet> points, CoeffModule module, Vec flat)
    : points_(std::move(points)), module_(module), flat_(std::move(flat)) {
  if (flat_.size() != points_->size() * module_.dim) throw std::invalid_argument("ManinTable: wrong table length");
}

Vec ManinTable::value_at(i64 x, i64 y) const {
  Vec out(dim(), 0);
  const std::size_t idx = points_->index_of(x, y);
  if (idx != PointSet::npos) std::copy(value(idx).begin(), value(idx).end(), out.begin());
  return out;
}

void ManinTable::add_at(i64 x, i64 y, std::span<u32> out) const {
  const std::size_t idx = points_->index_of(x, y);
  if (idx == PointSet::npos) return;
  const Field f = field();
  auto v = value(idx);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = f.add(out[i], v[i]);
}

bool ManinTable::is_zero() const {
  return std::all_of(flat_.begin(), flat_.end(), [](u32 v) { return v == 0; });
}

ManinTable ManinTable::operator-(const ManinTable& o) const {
  if (flat_.size() != o.flat_.size()) throw std::invalid_argument("ManinTable: shape mismatch");
  const Field f = field();
  Vec out(flat_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub(flat_[i], o.flat_[i]);
  ManinTable t(points_, module_, std::move(out));
  if (validated_ && o.validated_) t.mark_validated();
  return t;
}

ManinTable ManinTable::scaled(u32 c) const {
  const Field f = field();
  Vec out(flat_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.mul(c, flat_[i]);
  ManinTable t(points_, module_, std::move(out));
  if (validated_) t.mark_validated();
  return t;
}

// ---------------------------------------------------------------------------

void for_each_manin_relation(const PointSet& points, const Nebentype& chi,
                             const std::function<void(const SparseRow&)>& emit) {
  const Field f(points.p());
  const std::size_t dim = chi.dim();
  const u32 level = points.level();
  std::set<SparseRow> seen;
  auto push = [&](const std::map<u32, u32>& acc) {
    SparseRow row = to_sparse(acc);
    if (row.empty()) return;
    if (seen.insert(row).second) emit(row);
  };
  auto col = [dim](std::size_t idx, std::size_t i) { return static_cast<u32>(idx * dim + i); };

  // (1) e(l x) - chi(l) e(x)
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const PointX& pt = points[idx];
    for (u32 l = 1; l < level; ++l) {
      if (l % points.p() == 0) continue;
      const std::size_t target = points.index_of(static_cast<i64>(l) * pt.x, static_cast<i64>(l) * pt.y);
      const FpMatrix& act = chi(l);
      for (std::size_t i = 0; i < dim; ++i) {
        std::map<u32, u32> acc;
        acc[col(target, i)] = 1;
        for (std::size_t j = 0; j < dim; ++j) {
          u32& slot = acc[col(idx, j)];
          slot = f.sub(slot, act(i, j));
        }
        push(acc);
      }
    }
  }
  // (2) e(x,y) + e(y,-x)
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const PointX& pt = points[idx];
    const std::size_t other = points.index_of(pt.y, -static_cast<i64>(pt.x));
    for (std::size_t i = 0; i < dim; ++i) {
      std::map<u32, u32> acc;
      acc[col(idx, i)] = f.add(acc[col(idx, i)], 1);
      acc[col(other, i)] = f.add(acc[col(other, i)], 1);
      push(acc);
    }
  }
  // (3) e(x,y) + e(y,-x-y) + e(-x-y,x)
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const PointX& pt = points[idx];
    const i64 x = pt.x, y = pt.y;
    const std::size_t second = points.index_of(y, -x - y);
    const std::size_t third = points.index_of(-x - y, x);
    for (std::size_t i = 0; i < dim; ++i) {
      std::map<u32, u32> acc;
      for (std::size_t t : {idx, second, third}) acc[col(t, i)] = f.add(acc[col(t, i)], 1);
      push(acc);
    }
  }
}

FpMatrix manin_relation_space(u32 p, u32 n, const CoeffModule& module, const Nebentype& chi) {
  if (chi.p() != p || chi.n() != n || chi.dim() != module.dim) throw std::invalid_argument("manin_relation_space: nebentype does not match");
  const PointSet points(p, n);
  const std::size_t cols = points.size() * module.dim;
  std::vector<Vec> rows;
  for_each_manin_relation(points, chi, [&](const SparseRow& r) {
    Vec dense(cols, 0);
    for (const auto& [c, v] : r) dense[c] = v;
    rows.push_back(std::move(dense));
  });
  return FpMatrix::from_rows(rows, cols, p);
}

ManinCheck check_manin_relations(const ManinTable& e, const Nebentype& chi) {
  const PointSet& points = e.points();
  if (chi.dim() != e.dim()) throw std::invalid_argument("check_manin_relations: dimension mismatch");
  const std::size_t dim = e.dim();
  ManinCheck out;
  Vec acc(dim);
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    const PointX& pt = points[idx];
    const i64 x = pt.x, y = pt.y;
    const auto v = e.value(idx);
    for (u32 l = 1; l < points.level(); ++l) {
      if (l % points.p() == 0) continue;
      const Vec rhs = chi(l).apply(v);
      const auto lhs = e.value(points.index_of(l * x, l * y));
      ++out.checked_unit;
      if (!std::equal(lhs.begin(), lhs.end(), rhs.begin())) ++out.failed_unit;
    }
    std::copy(v.begin(), v.end(), acc.begin());
    e.add_at(y, -x, acc);
    ++out.checked_antisym;
    if (std::any_of(acc.begin(), acc.end(), [](u32 c) { return c != 0; })) ++out.failed_antisym;

    std::copy(v.begin(), v.end(), acc.begin());
    e.add_at(y, -x - y, acc);
    e.add_at(-x - y, x, acc);
    ++out.checked_three_term;
    if (std::any_of(acc.begin(), acc.end(), [](u32 c) { return c != 0; })) ++out.failed_three_term;
  }
  return out;
}

bool validate(ManinTable& e, const Nebentype& chi) {
  if (!check_manin_relations(e, chi).ok()) return false;
  e.mark_validated();
  return true;
}

namespace {

std::vector<ManinTable> kernel_tables(const std::shared_ptr<const PointSet>& points, const Nebentype& chi,
                                      bool supported_at_infty) {
  const std::size_t dim = chi.dim();
  RowReducer reducer(points->size() * dim, points->p());
  for_each_manin_relation(*points, chi, [&](const SparseRow& r) { reducer.add(r); });
  if (supported_at_infty) {
    for (std::size_t idx = 0; idx < points->size(); ++idx) {
      const PointX& pt = (*points)[idx];
      if (pt.x == 0 || pt.y == 0) continue;
      for (std::size_t i = 0; i < dim; ++i) reducer.add({{static_cast<u32>(idx * dim + i), 1}});
    }
  }
  std::vector<ManinTable> out;
  for (auto& k : reducer.finish().kernel_basis) {
    ManinTable t(points, chi.module(), std::move(k));
    t.mark_validated();
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

std::vector<ManinTable> manin_basis(const std::shared_ptr<const PointSet>& points, const Nebentype& chi) {
  return kernel_tables(points, chi, false);
}

std::vector<ManinTable> supported_at_infty_basis(const std::shared_ptr<const PointSet>& points,
                                                 const Nebentype& chi) {
  return kernel_tables(points, chi, true);
}

bool is_supported_at_infty(const ManinTable& e) {
  const PointSet& points = e.points();
  for (std::size_t idx = 0; idx < points.size(); ++idx) {
    if (points[idx].x == 0 || points[idx].y == 0) continue;
    const auto v = e.value(idx);
    if (std::any_of(v.begin(), v.end(), [](u32 c) { return c != 0; })) return false;
  }
  return true;
}

ManinTable boundary_symbol_at_infty(const std::shared_ptr<const PointSet>& points, const Nebentype& chi,
                                    const Vec& m, const std::function<IntMat2(const PointX&)>& section) {
  if (m.size() != chi.dim()) throw std::invalid_argument("boundary_symbol_at_infty: wrong vector length");
  if (chi(-1).apply(m) != m) throw std::invalid_argument("boundary_symbol_at_infty: m is not fixed by Gamma_infty");
  const i64 level = points->level();
  const Field f(points->p());
  ManinTable e(points, chi.module());
  for (std::size_t idx = 0; idx < points->size(); ++idx) {
    const IntMat2 g = section((*points)[idx]);
    auto out = e.value(idx);
    // gamma_x(infty) = a/c and gamma_x(0) = b/d; a cusp u/v is a Gamma_0
    // translate of infty iff level | v, with value chi(u^{-1}) m there.
    if (mod_floor(g.c, level) == 0) {
      const Vec t = chi(inverse_mod(g.a, level)).apply(m);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], t[i]);
    }
    if (mod_floor(g.d, level) == 0) {
      const Vec t = chi(inverse_mod(g.b, level)).apply(m);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub(out[i], t[i]);
    }
  }
  return e;
}

}  // namespace k2ms
