#include "k2ms/lvalues.hpp"

#include <algorithm>

namespace k2ms {

namespace {

void check_same(u32 p, int r, u32 q, int s, const char* what) {
  if (p != q || r != s) throw std::invalid_argument(std::string(what) + ": degree or modulus mismatch");
}

// Column `in` holds the X-indexed coefficients of (aX + bY)^in (cX + dY)^(r - in).
FpMatrix substitution_matrix(int r, u32 p, i64 a, i64 b, i64 c, i64 d) {
  const Field f(p);
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  auto powers = [&](u32 x_coef, u32 y_coef) {
    std::vector<Vec> out(n);
    out[0] = Vec{1};
    for (std::size_t e = 1; e < n; ++e) {
      Vec next(e + 1, 0);
      for (std::size_t t = 0; t < e; ++t) {
        next[t + 1] = f.add(next[t + 1], f.mul(out[e - 1][t], x_coef));
        next[t] = f.add(next[t], f.mul(out[e - 1][t], y_coef));
      }
      out[e] = std::move(next);
    }
    return out;
  };
  const auto left = powers(f.from_int(a), f.from_int(b));
  const auto right = powers(f.from_int(c), f.from_int(d));
  FpMatrix m(n, n, p);
  for (std::size_t in = 0; in < n; ++in) {
    const Vec& u = left[in];
    const Vec& v = right[n - 1 - in];
    for (std::size_t s = 0; s < u.size(); ++s) {
      if (u[s] == 0) continue;
      for (std::size_t t = 0; t < v.size(); ++t) m(s + t, in) = f.add(m(s + t, in), f.mul(u[s], v[t]));
    }
  }
  return m;
}

u32 sign_mod(std::size_t i, u32 p) { return i % 2 == 0 ? 1 : p - 1; }

}  // namespace

PolyVec PolyVec::monomial(int r, int i, u32 p) {
  if (i < 0 || i > r) throw std::out_of_range("PolyVec::monomial");
  PolyVec out = zero(r, p);
  out.c[static_cast<std::size_t>(i)] = 1 % p;
  return out;
}

DualVec DualVec::lambda(int r, int i, u32 p) {
  if (i < 0 || i > r) throw std::out_of_range("DualVec::lambda");
  DualVec out = zero(r, p);
  out.c[static_cast<std::size_t>(i)] = 1 % p;
  return out;
}

bool DualVec::is_zero() const {
  return std::all_of(c.begin(), c.end(), [](u32 v) { return v == 0; });
}

PolyVec poly_act(const PolyVec& f, const IntMat2& s) {
  const FpMatrix m = substitution_matrix(f.r, f.p, s.d, -s.c, -s.b, s.a);
  return {f.p, f.r, m.apply(f.c)};
}

FpMatrix dual_action_matrix(int r, u32 p, const IntMat2& s) {
  const FpMatrix sub = substitution_matrix(r, p, s.a, s.c, s.b, s.d);
  const Field f(p);
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  FpMatrix a(n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const u32 v = sub(n - 1 - j, n - 1 - i);
      a(i, j) = (i + j) % 2 == 0 ? v : f.neg(v);
    }
  return a;
}

DualVec dual_act(const DualVec& lambda, const IntMat2& s) {
  return {lambda.p, lambda.r, dual_action_matrix(lambda.r, lambda.p, s).apply(lambda.c)};
}

u32 pairing(const DualVec& lambda, const PolyVec& f) {
  check_same(lambda.p, lambda.r, f.p, f.r, "pairing");
  const Field fld(f.p);
  const std::size_t r = static_cast<std::size_t>(f.r);
  u32 acc = 0;
  for (std::size_t i = 0; i <= r; ++i)
    acc = fld.add(acc, fld.mul(fld.mul(lambda.c[i], sign_mod(i, f.p)), f.c[r - i]));
  return acc;
}

u32 perfect_pairing(const PolyVec& f, const PolyVec& g) {
  check_same(f.p, f.r, g.p, g.r, "perfect_pairing");
  if (static_cast<u32>(f.r) >= f.p) throw std::domain_error("perfect_pairing: needs r < p");
  const Field fld(f.p);
  const std::size_t r = static_cast<std::size_t>(f.r);
  u32 binom = 1, acc = 0;
  for (std::size_t i = 0; i <= r; ++i) {
    const u32 term = fld.mul(fld.mul(f.c[i], fld.inv(binom)), fld.mul(g.c[r - i], sign_mod(i, f.p)));
    acc = fld.add(acc, term);
    if (i == r) break;
    binom = fld.mul(binom, fld.mul(fld.from_int(static_cast<i64>(r - i)), fld.inv(fld.from_int(static_cast<i64>(i + 1)))));
  }
  return acc;
}

std::vector<DualVec> gamma_infty_invariants(int r, u32 p) {
  if (r < 0 || r % 2 != 0) throw std::invalid_argument("gamma_infty_invariants: r must be even and non-negative");
  if (static_cast<u32>(r) >= 2 * p) throw std::invalid_argument("gamma_infty_invariants: needs r < 2p");
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  const FpMatrix a = dual_action_matrix(r, p, {1, 1, 0, 1}) - FpMatrix::identity(n, p);
  std::vector<DualVec> out;
  for (Vec& v : reduce(a).kernel_basis) out.push_back({p, r, std::move(v)});
  return out;
}

DualVec boundary_lambda(const DualVec& lambda) {
  if (dual_act(lambda, {1, 1, 0, 1}) != lambda)
    throw std::invalid_argument("boundary_lambda: lambda is not fixed by (1 1; 0 1)");
  const DualVec s = dual_act(lambda, {0, -1, 1, 0});
  const Field f(lambda.p);
  DualVec out = lambda;
  for (std::size_t i = 0; i < out.c.size(); ++i) out.c[i] = f.sub(out.c[i], s.c[i]);
  return out;
}

FpMatrix tp_boundary_matrix(int r, u32 p) {
  FpMatrix t = dual_action_matrix(r, p, {static_cast<i64>(p), 0, 0, 1});
  for (u32 k = 0; k < p; ++k) t = t + dual_action_matrix(r, p, {1, static_cast<i64>(k), 0, static_cast<i64>(p)});
  return t;
}

bool LValueVector::excluded(int i, int k, u32 p) {
  const i64 m = static_cast<i64>(p) - 1;
  const i64 s = mod_floor(i - 1, m);
  return s == 0 || s == mod_floor(k - 2, m);
}

LValueVector l_values_of(const DualVec& universal, int k) {
  if (universal.r != k - 2) throw std::invalid_argument("l_values_of: degree must be k - 2");
  LValueVector out{k, universal.p, universal.c, {}};
  for (int i = 1; i <= k - 1; ++i) {
    if (LValueVector::excluded(i, k, universal.p))
      out.values.emplace_back(std::nullopt);
    else
      out.values.emplace_back(universal.c[static_cast<std::size_t>(i - 1)]);
  }
  return out;
}

DualVec universal_l_value(const CycloModule& m, const DualFunctional& rho, int k) {
  if (m.n() != 1) throw std::invalid_argument("universal_l_value: needs n = 1");
  const u32 p = m.p();
  if (k < 2 || k % 2 != 0 || static_cast<u32>(k) >= 2 * p)
    throw std::invalid_argument("universal_l_value: needs k even with 2 <= k < 2p");
  const Field f(p);
  const int r = k - 2;
  std::vector<Vec> values(p, Vec(p, 0));
  for (u32 x = 1; x < p; ++x)
    for (u32 y = 1; y < p; ++y) values[x][y] = rho(m.symbol_class(x, y).coords);
  std::vector<Vec> pw(p, Vec(static_cast<std::size_t>(r) + 1, 1));
  for (u32 x = 1; x < p; ++x)
    for (int e = 1; e <= r; ++e) pw[x][e] = f.mul(pw[x][e - 1], x);
  DualVec out = DualVec::zero(r, p);
  for (int i = 0; i <= r; ++i) {
    u32 acc = 0;
    for (u32 x = 1; x < p; ++x)
      for (u32 y = 1; y < p; ++y) acc = f.add(acc, f.mul(f.mul(pw[y][i], pw[x][r - i]), values[x][y]));
    out.c[static_cast<std::size_t>(i)] = i % 2 == 0 ? acc : f.neg(acc);
  }
  return out;
}

LValueVector l_values_from_rho(const CycloModule& m, const DualFunctional& rho, int k) {
  return l_values_of(universal_l_value(m, rho, k), k);
}

}  // namespace k2ms
