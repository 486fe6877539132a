#include "k2ms/eisspace.hpp"

#include <algorithm>

#include "k2ms/hecke.hpp"

namespace k2ms {

namespace {

void check_weight(int k, u32 p, const char* what) {
  if (!is_prime(p) || p < 3) throw std::invalid_argument(std::string(what) + ": p must be an odd prime");
  if (k < 2 || k % 2 != 0 || static_cast<u32>(k) >= 2 * p)
    throw std::invalid_argument(std::string(what) + ": needs k even with 2 <= k < 2p");
}

FpMatrix columns(const std::vector<Vec>& vs, std::size_t n, u32 p) {
  FpMatrix m(n, vs.size(), p);
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
  return m;
}

Vec column(const FpMatrix& m, std::size_t j) {
  Vec v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

// Reduced rows spanning the column space of m.
std::vector<Vec> column_span(const FpMatrix& m) {
  const Reduction red = reduce(m.transposed());
  std::vector<Vec> out;
  for (std::size_t r = 0; r < red.rank; ++r) {
    const auto row = red.rref.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

RowReducer span_reducer(const FpMatrix& cols) {
  RowReducer rr(cols.rows(), cols.modulus());
  for (std::size_t j = 0; j < cols.cols(); ++j) rr.add_dense(column(cols, j));
  return rr;
}

// Dimension of {v in span(basis) : op v in span(mod) for every op}.
std::vector<Vec> joint_kernel(const FpMatrix& basis, const std::vector<FpMatrix>& ops, const RowReducer& mod) {
  const std::size_t n = basis.rows(), t = basis.cols();
  FpMatrix stacked(ops.size() * n, t, basis.modulus());
  for (std::size_t j = 0; j < t; ++j) {
    const Vec b = column(basis, j);
    for (std::size_t o = 0; o < ops.size(); ++o) {
      Vec u = ops[o].apply(b);
      mod.reduce_vector(u);
      for (std::size_t i = 0; i < n; ++i) stacked(o * n + i, j) = u[i];
    }
  }
  return reduce(stacked).kernel_basis;
}

}  // namespace

FpMatrix level1_space(int k, u32 p) {
  check_weight(k, p, "level1_space");
  const int r = k - 2;
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  const FpMatrix id = FpMatrix::identity(n, p);
  const FpMatrix s = dual_action_matrix(r, p, {0, -1, 1, 0});
  const FpMatrix u = dual_action_matrix(r, p, {0, -1, 1, -1});
  const FpMatrix two = id + s;
  const FpMatrix three = id + u + u * u;
  FpMatrix stacked(2 * n, n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      stacked(i, j) = two(i, j);
      stacked(n + i, j) = three(i, j);
    }
  return columns(reduce(stacked).kernel_basis, n, p);
}

FpMatrix boundary_space(int k, u32 p) {
  check_weight(k, p, "boundary_space");
  const int r = k - 2;
  const std::size_t n = static_cast<std::size_t>(r) + 1;
  std::vector<Vec> images;
  for (const DualVec& lam : gamma_infty_invariants(r, p)) images.push_back(boundary_lambda(lam).c);
  const FpMatrix b = columns(images, n, p);
  const FpMatrix l = level1_space(k, p);
  // Solve b x = l y; the vectors b x form the intersection.
  FpMatrix joint(n, b.cols() + l.cols(), p);
  const Field f(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) joint(i, j) = b(i, j);
    for (std::size_t j = 0; j < l.cols(); ++j) joint(i, b.cols() + j) = f.neg(l(i, j));
  }
  std::vector<Vec> meet;
  for (const Vec& sol : reduce(joint).kernel_basis) {
    Vec v(n, 0);
    for (std::size_t j = 0; j < b.cols(); ++j) f.axpy(v, sol[j], column(b, j));
    meet.push_back(std::move(v));
  }
  return columns(column_span(columns(meet, n, p)), n, p);
}

FpMatrix conj_involution(int k, u32 p) { return dual_action_matrix(k - 2, p, {-1, 0, 0, 1}); }

DualVec conj_involution(const DualVec& v) { return dual_act(v, {-1, 0, 0, 1}); }

FpMatrix hecke_level1(int k, u32 p, u32 m) {
  const std::size_t n = static_cast<std::size_t>(k - 1);
  FpMatrix t(n, n, p);
  for (const IntMat2& d : merel_set(m).matrices) t = t + dual_action_matrix(k - 2, p, d.adjugate());
  return t;
}

EisReport eis_eigenspace(u32 p, int k, const std::vector<u32>& primes) {
  check_weight(k, p, "eis_eigenspace");
  for (u32 q : primes)
    if (q < 2 || q % p == 0) throw std::invalid_argument("eis_eigenspace: primes must be prime to p");
  const Field f(p);
  const std::size_t n = static_cast<std::size_t>(k - 1);
  const FpMatrix id = FpMatrix::identity(n, p);
  const FpMatrix l = level1_space(k, p);
  const FpMatrix w = boundary_space(k, p);
  const RowReducer mod = span_reducer(w);
  const FpMatrix iota = conj_involution(k, p);

  EisReport rep;
  rep.p = p;
  rep.k = k;
  rep.primes = primes;
  rep.dim_total = l.cols();
  rep.dim_boundary = w.cols();
  rep.dim_parabolic = rep.dim_total - rep.dim_boundary;
  rep.dim_plus = joint_kernel(l, {iota - id}, mod).size() - rep.dim_boundary;
  rep.dim_minus = joint_kernel(l, {iota + id}, mod).size() - rep.dim_boundary;

  auto eigen_target = [&](u32 q) { return f.add(1, f.pow(q % p, k - 1)); };
  std::vector<FpMatrix> ops{iota - id};
  for (u32 q : primes) ops.push_back(hecke_level1(k, p, q) - id.scaled(eigen_target(q)));
  const std::vector<Vec> ker = joint_kernel(l, ops, mod);
  rep.dim_plus_eisenstein = ker.size() - rep.dim_boundary;

  std::optional<Vec> eigvec;
  if (rep.dim_plus_eisenstein == 1) {
    for (const Vec& coeffs : ker) {
      Vec v(n, 0);
      for (std::size_t j = 0; j < coeffs.size(); ++j) f.axpy(v, coeffs[j], column(l, j));
      Vec red = v;
      mod.reduce_vector(red);
      if (std::any_of(red.begin(), red.end(), [](u32 c) { return c != 0; })) {
        eigvec = std::move(v);
        break;
      }
    }
  }
  for (u32 q : {2u, 3u, 5u, 7u}) {
    if (q == p) continue;
    std::optional<u32> value;
    if (eigvec) {
      Vec v = *eigvec;
      Vec img = hecke_level1(k, p, q).apply(v);
      mod.reduce_vector(v);
      mod.reduce_vector(img);
      const auto lead = std::find_if(v.begin(), v.end(), [](u32 c) { return c != 0; }) - v.begin();
      const u32 c = f.mul(img[lead], f.inv(v[lead]));
      bool ok = true;
      for (std::size_t i = 0; i < n; ++i) ok = ok && img[i] == f.mul(c, v[i]);
      if (ok) value = c;
    }
    rep.eigenvalues[q] = value;
  }
  return rep;
}

QExpansions eisenstein_q_coeffs(int k, u32 p, std::size_t nmax) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("eisenstein_q_coeffs: k must be even and >= 2");
  const Field f(p);
  const BernoulliValue b = bernoulli_mod(k, p);
  if (b.is_pole()) throw std::domain_error("eisenstein_q_coeffs: B_k/2k is not p-integral");
  QExpansions out{Vec(nmax + 1, 0), Vec(nmax + 1, 0)};
  if (k % static_cast<int>(p) == 0) throw std::domain_error("eisenstein_q_coeffs: p divides k");
  out.g_k[0] = f.neg(f.mul(b.residue->value, f.inv(f.from_int(2 * k))));
  for (std::size_t m = 1; m <= nmax; ++m) {
    u32 s = 0, sigma = 0;
    for (std::size_t d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const u32 dm = f.from_int(static_cast<i64>(d));
      const std::size_t e = m / d;
      if (e % p != 0) s = f.add(s, f.mul(omega_pow(static_cast<i64>(e), 2 - k, p).value, dm));
      sigma = f.add(sigma, f.pow(dm, k - 1));
    }
    out.s_twisted[m] = s;
    out.g_k[m] = sigma;
  }
  return out;
}

}  // namespace k2ms
