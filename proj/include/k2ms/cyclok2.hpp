#pragma once

// Finitely presented module of cyclotomic Steinberg symbols
// {1 - z^x, 1 - z^y}, z a primitive p^n-th root of unity, over F_p.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "k2ms/manin.hpp"
#include "k2ms/report.hpp"

namespace k2ms {

/// Relation families.
///   F1  g(x,y) + g(y,x) = 0
///   F2  g(x,y) = g(-x,y) = g(x,-y)
///   F3  g(y,y) = 0
///   F4  g(x,y) - g(x+y,y) - g(x,x+y) = 0                 (x, y, x+y != 0)
///   F5  cyclotomic identity behind T_2                   (x, y, x+y != 0)
///   F6  cyclotomic identity behind T_3                   (x, y, x+y, x-y != 0)
///   F7  g(p^k u, y) = sum over a = 1 (p^{n-k}) of g(u a, y)   (n > 1)
class RelationFlags {
 public:
  RelationFlags() { enabled_.fill(false); }

  /// F1-F6, plus F7 when n > 1.
  static RelationFlags defaults(u32 n);
  /// Parses "F1-F4", "F1,F2,F3,F4,F6", "F1-F4,F7".
  static RelationFlags parse(const std::string& text);

  bool has(int family) const { return enabled_.at(static_cast<std::size_t>(family - 1)); }
  RelationFlags& set(int family, bool on = true) {
    enabled_.at(static_cast<std::size_t>(family - 1)) = on;
    return *this;
  }
  /// Canonical text, e.g. "F1-F6" or "F1-F4,F6".
  std::string to_string() const;

  bool operator==(const RelationFlags&) const = default;

 private:
  std::array<bool, 7> enabled_;
};

/// Class of a generator in the quotient; zero when either slot is 0.
struct SymbolClass {
  u32 p = 2;
  Vec coords;

  bool is_zero() const;
  bool operator==(const SymbolClass&) const = default;
};

class CycloModule {
 public:
  CycloModule(u32 p, u32 n, RelationFlags flags);

  u32 p() const noexcept { return p_; }
  u32 n() const noexcept { return n_; }
  u32 level() const noexcept { return level_; }
  const RelationFlags& flags() const noexcept { return flags_; }
  Field field() const { return Field(p_); }

  std::size_t generator_count() const noexcept { return static_cast<std::size_t>(level_ - 1) * (level_ - 1); }
  std::size_t generator_index(i64 x, i64 y) const;
  std::pair<u32, u32> generator(std::size_t idx) const;

  const std::vector<SparseRow>& relations() const noexcept { return relations_; }
  FpMatrix relation_matrix() const;
  std::size_t relation_rank() const noexcept { return generator_count() - quotient_dim_; }

  std::size_t quotient_dim() const noexcept { return quotient_dim_; }
  /// Generators whose classes form the quotient basis (the free columns).
  const std::vector<std::size_t>& basis_generators() const noexcept { return basis_generators_; }

  SymbolClass symbol_class(i64 x, i64 y) const;
  /// Quotient class of an arbitrary combination of generators.
  Vec reduce_combination(const Vec& generator_coeffs) const;

  /// sigma_l on the quotient: class(x,y) -> class(lx, ly).
  FpMatrix galois_action(i64 unit) const;
  Vec galois_apply(i64 unit, const Vec& v) const;

  /// The Galois group ring acting on the quotient as a nebentype.
  Nebentype artin_nebentype() const;

 private:
  u32 p_;
  u32 n_;
  u32 level_;
  RelationFlags flags_;
  std::vector<SparseRow> relations_;
  std::size_t quotient_dim_ = 0;
  std::vector<std::size_t> basis_generators_;
  FpMatrix reducer_;  // generator_count x quotient_dim
};

CycloModule build_cyclo_module(u32 p, u32 n, RelationFlags flags);

SymbolClass symbol_class(const CycloModule& m, i64 x, i64 y);

/// (x, y) -> class of {1 - z^x, 1 - z^y} over X_n, not yet validated.
ManinTable symbol_table(const CycloModule& m);

/// symbol_table, checked against the Manin
/// relations for the Galois nebentype. Throws std::logic_error otherwise.
ManinTable e_manin(const CycloModule& m);

/// (e|T_q)(x) = (q + sigma_q) e(x) at every xy != 0, for q in {2,3} \ {p}.
CheckReport verify_theorem51(const CycloModule& m, std::vector<u32> qs = {});

struct EigenProjector {
  i64 j = 0;
  FpMatrix matrix;
};

/// (1/(p-1)) sum_a a^{j-1} sigma_a, projecting onto the omega^{1-j} part.
EigenProjector eigen_projector(const CycloModule& m, i64 j);

/// xi_i = sum over units a, b of a^{k-i-1} b^{i-1} class(a, b).
SymbolClass xi_class(const CycloModule& m, int i, int k);

/// Linear functional on the quotient.
struct DualFunctional {
  u32 p = 2;
  Vec weights;

  u32 operator()(const Vec& v) const;
};

/// Basis of functionals on the omega^{2-k} component, zero on the others.
std::vector<DualFunctional> rho_basis(const CycloModule& m, int k);

}  // namespace k2ms
