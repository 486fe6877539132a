#pragma once

// Hecke operators on Manin symbols through Merel's sets H_m.

#include <vector>

#include "k2ms/manin.hpp"
#include "k2ms/report.hpp"

namespace k2ms {

/// H_m = {(a b; c d) : a > b >= 0, d > c >= 0, ad - bc = m}.
struct HeckeSet {
  u32 m = 1;
  std::vector<IntMat2> matrices;  // lexicographic in (a, b, c, d)
};

HeckeSet merel_set(u32 m);

/// (e|T_m)(x) = sum over H_m of e(x * delta).
///
/// Terms whose argument is not primitive mod p^n contribute zero; this only
/// happens when p divides m. Units act on the values through the nebentype,
/// which never enters the sum itself.
ManinTable hecke_apply(const ManinTable& e, u32 m);

/// The four-term T_2 and six-term T_3 expressions; q must be 2 or 3.
ManinTable hecke_closed_form(const ManinTable& e, u32 q);

/// Matrix of T_m on the span of `basis`, or nullopt if T_m leaves the span.
/// Column j holds the coordinates of basis[j]|T_m.
std::optional<FpMatrix> hecke_matrix_on(const std::vector<ManinTable>& basis, u32 m);

/// On every symbol supported at infinity: T_l = l + chi(l) for l prime to p,
/// and T_p = p (zero over F_p). Each entry of `ells` gets one check.
CheckReport verify_boundary_eigenvalues(const std::shared_ptr<const PointSet>& points, const Nebentype& chi,
                                        const std::vector<u32>& ells);

}  // namespace k2ms
