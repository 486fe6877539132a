#pragma once

// Level one symbols with V_{k-2} coefficients: boundary and parabolic
// parts, conjugation, Hecke operators and the Eisenstein eigenspace.

#include <map>
#include <optional>
#include <vector>

#include "k2ms/lvalues.hpp"

namespace k2ms {

/// Basis of {v in V_{k-2} : v + v|S = 0, v + v|U + v|U^2 = 0}, as columns.
FpMatrix level1_space(int k, u32 p);

/// Span of lambda - lambda|S over Gamma_infty invariants, inside level1_space.
FpMatrix boundary_space(int k, u32 p);

/// Action of iota = (-1 0; 0 1) on V_{k-2}.
FpMatrix conj_involution(int k, u32 p);
DualVec conj_involution(const DualVec& v);

/// v|T_m = sum over H_m of v|adj(delta).
FpMatrix hecke_level1(int k, u32 p, u32 m);

struct EisReport {
  u32 p = 0;
  int k = 0;
  std::vector<u32> primes;
  std::size_t dim_total = 0;
  std::size_t dim_boundary = 0;
  std::size_t dim_parabolic = 0;
  std::size_t dim_plus = 0;
  std::size_t dim_minus = 0;
  std::size_t dim_plus_eisenstein = 0;
  /// T_q eigenvalue on the Eisenstein class, when that space is a line.
  std::map<u32, std::optional<u32>> eigenvalues;
};

/// H+_{k,eis,S}: conjugation-fixed parabolic classes with T_q = 1 + q^{k-1},
/// q in S. Eigenvalues are reported for q in {2,3,5,7} \ {p}.
EisReport eis_eigenspace(u32 p, int k, const std::vector<u32>& primes);

struct QExpansions {
  Vec s_twisted;  // s_{2, omega^{2-k}}, index n
  Vec g_k;        // G_k, index n
};

QExpansions eisenstein_q_coeffs(int k, u32 p, std::size_t nmax);

}  // namespace k2ms
