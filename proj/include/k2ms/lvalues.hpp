#pragma once

// Homogeneous polynomials W_r, their duals V_r, universal L-values and the
// special-value computation for the cyclotomic symbol.

#include <optional>
#include <vector>

#include "k2ms/cyclok2.hpp"
#include "k2ms/manin.hpp"
#include "k2ms/report.hpp"

namespace k2ms {

/// Coefficients of X^i Y^{r-i}, i = 0..r.
struct PolyVec {
  u32 p = 2;
  int r = 0;
  Vec c;

  static PolyVec zero(int r, u32 p) { return {p, r, Vec(static_cast<std::size_t>(r) + 1, 0)}; }
  /// The monomial X^i Y^{r-i}.
  static PolyVec monomial(int r, int i, u32 p);
  bool operator==(const PolyVec&) const = default;
};

/// Coordinates on lambda_0..lambda_r, the basis dual to w_i = (-1)^i X^{r-i} Y^i.
struct DualVec {
  u32 p = 2;
  int r = 0;
  Vec c;

  static DualVec zero(int r, u32 p) { return {p, r, Vec(static_cast<std::size_t>(r) + 1, 0)}; }
  static DualVec lambda(int r, int i, u32 p);
  bool is_zero() const;
  bool operator==(const DualVec&) const = default;
};

/// F|sigma = F((X,Y) sigma'), where sigma' is the adjugate.
PolyVec poly_act(const PolyVec& f, const IntMat2& sigma);

/// (lambda|sigma)(F) = lambda(F|sigma').
DualVec dual_act(const DualVec& lambda, const IntMat2& sigma);

/// Column j holds lambda_j|sigma, so dual_act(v, sigma) = A v.
FpMatrix dual_action_matrix(int r, u32 p, const IntMat2& sigma);

u32 pairing(const DualVec& lambda, const PolyVec& f);

/// <C(r,i) X^i Y^{r-i}, (-1)^j X^{r-j} Y^j> = delta_ij. Needs r < p.
u32 perfect_pairing(const PolyVec& f, const PolyVec& g);

/// Basis of the fixed space of (1 1; 0 1) acting on V_r. Needs r < 2p.
std::vector<DualVec> gamma_infty_invariants(int r, u32 p);

/// lambda - lambda|S, the universal L-value of the boundary symbol of lambda.
DualVec boundary_lambda(const DualVec& lambda);

/// Matrix of lambda -> lambda|((p 0; 0 1) + sum_k (1 k; 0 p)) on V_r.
FpMatrix tp_boundary_matrix(int r, u32 p);

/// L-values at arguments 1..k-1. values[i-1] is nullopt where i-1 is 0 or
/// k-2 mod p-1; lifted keeps every value of the chosen lift.
struct LValueVector {
  int k = 0;
  u32 p = 2;
  Vec lifted;
  std::vector<std::optional<u32>> values;

  static bool excluded(int i, int k, u32 p);
  std::optional<u32> at(int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
};

LValueVector l_values_of(const DualVec& universal, int k);

/// Lambda(psi~) = sum_i (-1)^i lambda_i sum_{x,y} y^i x^{k-2-i} rho(class(x,y)).
DualVec universal_l_value(const CycloModule& m, const DualFunctional& rho, int k);

LValueVector l_values_from_rho(const CycloModule& m, const DualFunctional& rho, int k);

CheckReport theorem12_report(u32 p, int k);

}  // namespace k2ms
