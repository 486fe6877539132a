#include <algorithm>
#include <map>

#include "k2ms/eisspace.hpp"
#include "k2ms/lvalues.hpp"

namespace k2ms {

namespace {

bool in_span(const RowReducer& rr, Vec v) {
  rr.reduce_vector(v);
  return std::all_of(v.begin(), v.end(), [](u32 c) { return c == 0; });
}

}  // namespace

CheckReport theorem12_report(u32 p, int k) {
  if (!is_prime(p) || p <= 3) throw std::invalid_argument("theorem12: p must be a prime > 3");
  if (k < 2 || k % 2 != 0 || static_cast<u32>(k) >= 2 * p)
    throw std::invalid_argument("theorem12: needs k even with 2 <= k < 2p");
  const Field f(p);

  CheckReport rep;
  rep.command = "theorem12";
  rep.params = {{"p", p}, {"k", k}};

  const CycloModule m(p, 1, RelationFlags::defaults(1));
  const std::vector<DualFunctional> rhos = rho_basis(m, k);
  rep.data["module_dim"] = m.quotient_dim();
  rep.data["rho_count"] = rhos.size();

  for (u32 q : {2u, 3u}) {
    const u32 lhs = f.mul(f.pow(q, k - 2), f.add(q, f.pow(q, 2 - k)));
    const u32 rhs = f.add(1, f.pow(q, k - 1));
    rep.add("twist identity q=" + std::to_string(q), lhs == rhs,
            std::to_string(lhs) + " vs " + std::to_string(rhs));
  }

  std::map<int, Vec> xi;
  for (int i = 1; i <= k - 1; ++i) xi[i] = xi_class(m, i, k).coords;

  if (rhos.empty()) rep.add("omega^(2-k) component is zero, identity holds vacuously", true);

  // Level one side: Lambda(psi~) must be a symbol and an Eisenstein eigenvector
  // modulo boundary symbols.
  const FpMatrix level1 = level1_space(k, p);
  RowReducer level1_span(static_cast<std::size_t>(k - 1), p), boundary_span(static_cast<std::size_t>(k - 1), p);
  for (std::size_t j = 0; j < level1.cols(); ++j) {
    Vec v(level1.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = level1(i, j);
    level1_span.add_dense(v);
  }
  const FpMatrix bd = boundary_space(k, p);
  for (std::size_t j = 0; j < bd.cols(); ++j) {
    Vec v(bd.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = bd(i, j);
    boundary_span.add_dense(v);
  }

  nlohmann::json tables = nlohmann::json::array();
  for (std::size_t t = 0; t < rhos.size(); ++t) {
    const DualFunctional& rho = rhos[t];
    const std::string tag = "rho" + std::to_string(t);

    bool equivariant = true;
    for (u32 q : {2u, 3u}) {
      const FpMatrix sigma = m.galois_action(q);
      const u32 scale = f.pow(q, 2 - k);
      for (std::size_t j = 0; j < m.quotient_dim() && equivariant; ++j) {
        Vec ej(m.quotient_dim(), 0);
        ej[j] = 1;
        equivariant = rho(sigma.apply(ej)) == f.mul(scale, rho(ej));
      }
    }
    rep.add(tag + " equivariant with character omega^(2-k)", equivariant);

    const DualVec lambda = universal_l_value(m, rho, k);
    const LValueVector lv = l_values_of(lambda, k);
    std::size_t checked = 0, failed = 0;
    nlohmann::json odd = nlohmann::json::array(), even = nlohmann::json::array(),
                   excluded = nlohmann::json::array();
    for (int i = 1; i <= k - 1; ++i) {
      if (!lv.at(i)) {
        excluded.push_back(i);
        continue;
      }
      const u32 value = *lv.at(i);
      const u32 expected = rho(xi[i]);
      if (i % 2 == 1) {
        odd.push_back({{"i", i}, {"L", value}, {"rho_xi", expected}});
        if (i >= 3 && i <= k - 3) {
          ++checked;
          if (value != expected) ++failed;
        }
      } else {
        even.push_back({{"i", i}, {"L", value}, {"rho_xi", expected}});
      }
    }
    rep.add(tag + " L(psi,i) = rho(xi_i) for odd 3 <= i <= k-3", failed == 0,
            std::to_string(checked - failed) + "/" + std::to_string(checked) + " indices agree");

    const bool symbol = in_span(level1_span, lambda.c);
    rep.add(tag + " Lambda(psi~) satisfies the level one relations", symbol);
    if (symbol) {
      for (u32 q : {2u, 3u}) {
        Vec d = hecke_level1(k, p, q).apply(lambda.c);
        f.axpy(d, f.neg(f.add(1, f.pow(q, k - 1))), lambda.c);
        rep.add(tag + " T" + std::to_string(q) + " eigenvalue 1+q^(k-1) modulo boundary", in_span(boundary_span, d));
      }
    }
    tables.push_back({{"rho", rho.weights}, {"odd", odd}, {"even", even}, {"excluded", excluded},
                      {"universal", lambda.c}});
  }
  rep.data["l_values"] = tables;
  return rep;
}

}  // namespace k2ms
