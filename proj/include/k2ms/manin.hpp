#pragma once

// Manin symbols over Gamma_0(p^n) with values in a finite-dimensional F_p
// module on which units act through a nebentype character.

#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "k2ms/exactlin.hpp"

namespace k2ms {

/// Integer 2x2 matrix (a b; c d). Row vectors act on the left: (x,y)*m.
struct IntMat2 {
  i64 a = 1, b = 0, c = 0, d = 1;

  i64 det() const { return a * d - b * c; }
  /// (d -b; -c a)
  IntMat2 adjugate() const { return {d, -b, -c, a}; }
  IntMat2 operator*(const IntMat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const IntMat2&) const = default;
  auto operator<=>(const IntMat2&) const = default;
};

/// Primitive row vector (x, y) mod p^n, stored as reduced residues.
struct PointX {
  u32 x = 0;
  u32 y = 1;

  bool operator==(const PointX&) const = default;
  auto operator<=>(const PointX&) const = default;
};

/// All primitive pairs mod p^n in lexicographic order.
std::vector<PointX> enumerate_X(u32 p, u32 n);

/// X_n with constant-time index lookup.
class PointSet {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  PointSet(u32 p, u32 n);

  u32 p() const noexcept { return p_; }
  u32 n() const noexcept { return n_; }
  u32 level() const noexcept { return level_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<PointX>& points() const noexcept { return points_; }
  const PointX& operator[](std::size_t i) const { return points_[i]; }

  /// Index of (x mod p^n, y mod p^n), or npos when the pair is not primitive.
  std::size_t index_of(i64 x, i64 y) const;

 private:
  u32 p_;
  u32 n_;
  u32 level_;
  std::vector<PointX> points_;
  std::vector<std::size_t> lookup_;
};

/// Section X_n -> SL_2(Z) with (0,1)*gamma = (x,y) mod p^n.
///
/// Lifts to [0, p^n)^2, bumps the second coordinate by multiples of p^n (or
/// replaces a zero first coordinate by p^n) until the lift is coprime, then
/// completes with the least non-negative upper-left entry.
IntMat2 section_gamma(u32 p, u32 n, const PointX& pt);

/// Another valid section: random lift shifts and a random Bezout solution.
IntMat2 section_gamma_randomized(u32 p, u32 n, const PointX& pt, std::mt19937_64& rng);

struct CoeffModule {
  u32 p = 2;
  std::size_t dim = 0;
};

/// Units of Z/p^n acting on a CoeffModule by matrices.
///
/// Vectors are columns; action(l) * v is chi(l).v.
class Nebentype {
 public:
  using ActionFn = std::function<FpMatrix(u32 unit)>;

  Nebentype(u32 p, u32 n, CoeffModule module, const ActionFn& action);

  /// chi(a) = omega^j(a mod p) on F_p.
  static Nebentype power_of_omega(u32 p, u32 n, i64 j);
  static Nebentype trivial(u32 p, u32 n, std::size_t dim);

  u32 p() const noexcept { return p_; }
  u32 n() const noexcept { return n_; }
  const CoeffModule& module() const noexcept { return module_; }
  std::size_t dim() const noexcept { return module_.dim; }

  /// Action matrix of a unit (given as any integer representative).
  const FpMatrix& operator()(i64 unit) const;

  bool is_even() const;
  bool is_multiplicative() const;

 private:
  u32 p_;
  u32 n_;
  u32 level_;
  CoeffModule module_;
  std::vector<FpMatrix> actions_;  // indexed by residue; empty slots for non-units
};

/// A function X_n -> M stored as |X_n| consecutive coefficient vectors.
class ManinTable {
 public:
  ManinTable(std::shared_ptr<const PointSet> points, CoeffModule module);
  ManinTable(std::shared_ptr<const PointSet> points, CoeffModule module, Vec flat);

  const PointSet& points() const noexcept { return *points_; }
  std::shared_ptr<const PointSet> point_set() const noexcept { return points_; }
  const CoeffModule& module() const noexcept { return module_; }
  std::size_t dim() const noexcept { return module_.dim; }
  Field field() const { return Field(module_.p); }

  std::span<const u32> value(std::size_t idx) const { return {flat_.data() + idx * dim(), dim()}; }
  std::span<u32> value(std::size_t idx) { return {flat_.data() + idx * dim(), dim()}; }
  /// Value at (x, y); the zero vector when (x, y) is not primitive.
  Vec value_at(i64 x, i64 y) const;
  void add_at(i64 x, i64 y, std::span<u32> out) const;

  const Vec& flat() const noexcept { return flat_; }

  bool validated() const noexcept { return validated_; }
  void mark_validated() noexcept { validated_ = true; }

  bool is_zero() const;
  ManinTable operator-(const ManinTable& o) const;
  ManinTable scaled(u32 c) const;
  bool operator==(const ManinTable& o) const { return flat_ == o.flat_; }

 private:
  std::shared_ptr<const PointSet> points_;
  CoeffModule module_;
  Vec flat_;
  bool validated_ = false;
};

/// Rows of the Manin relation matrix, in the order (1), (2), (3) over X_n.
///
/// Unknown index = point_index * dim + coordinate. Exact duplicates and empty
/// rows are dropped.
void for_each_manin_relation(const PointSet& points, const Nebentype& chi,
                             const std::function<void(const SparseRow&)>& emit);

FpMatrix manin_relation_space(u32 p, u32 n, const CoeffModule& module, const Nebentype& chi);

/// Violation counts for the Manin relations (1)-(3).
struct ManinCheck {
  std::size_t checked_unit = 0, failed_unit = 0;
  std::size_t checked_antisym = 0, failed_antisym = 0;
  std::size_t checked_three_term = 0, failed_three_term = 0;

  bool ok() const { return failed_unit == 0 && failed_antisym == 0 && failed_three_term == 0; }
};

ManinCheck check_manin_relations(const ManinTable& e, const Nebentype& chi);

/// Checks the relations and, when they hold, flags the table validated.
bool validate(ManinTable& e, const Nebentype& chi);

/// Basis of all M-valued Manin symbols (already validated tables).
std::vector<ManinTable> manin_basis(const std::shared_ptr<const PointSet>& points, const Nebentype& chi);

/// Basis of the Manin symbols vanishing at every (x, y) with xy != 0.
std::vector<ManinTable> supported_at_infty_basis(const std::shared_ptr<const PointSet>& points,
                                                 const Nebentype& chi);

bool is_supported_at_infty(const ManinTable& e);

/// The boundary symbol phi_{infty,m} read off through a section: e(x) is the
/// value on gamma_x((infty) - (0)) of the cusp function that is m|gamma^{-1}
/// on Gamma_0-translates gamma(infty) and 0 elsewhere. Requires chi(-1)m = m.
ManinTable boundary_symbol_at_infty(const std::shared_ptr<const PointSet>& points, const Nebentype& chi,
                                    const Vec& m, const std::function<IntMat2(const PointX&)>& section);

}  // namespace k2ms
