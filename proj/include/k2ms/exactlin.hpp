#pragma once

// Exact arithmetic over F_p and Z/p^n Z, row reduction over F_p,
// Bernoulli numbers mod p and powers of the Teichmuller-type character.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace k2ms {

using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Dense coefficient vector over F_p. The modulus travels with the owner.
using Vec = std::vector<u32>;

/// Sparse row: (column, nonzero value) pairs sorted by column.
using SparseRow = std::vector<std::pair<u32, u32>>;

bool is_prime(u64 n);

/// Returns p^n, throwing std::overflow_error past 2^32.
u32 prime_power(u32 p, u32 n);

i64 mod_floor(i64 a, i64 m);

/// Arithmetic context for the prime field F_p.
class Field {
 public:
  explicit Field(u32 p);

  u32 p() const noexcept { return p_; }

  u32 from_int(i64 a) const noexcept {
    return static_cast<u32>(mod_floor(a, static_cast<i64>(p_)));
  }
  u32 add(u32 a, u32 b) const noexcept {
    u32 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u32 sub(u32 a, u32 b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  u32 neg(u32 a) const noexcept { return a == 0 ? 0 : p_ - a; }
  u32 mul(u32 a, u32 b) const noexcept {
    return static_cast<u32>(static_cast<u64>(a) * b % p_);
  }
  /// a^e; negative exponents require a != 0.
  u32 pow(u32 a, i64 e) const;
  u32 inv(u32 a) const;

  /// y += c * x, elementwise.
  void axpy(Vec& y, u32 c, std::span<const u32> x) const;

  bool operator==(const Field&) const = default;

 private:
  u32 p_;
};

struct FpScalar {
  u32 value = 0;
  u32 modulus = 2;

  bool operator==(const FpScalar&) const = default;
};

/// Residue modulo p^n.
struct ZmodScalar {
  u32 value = 0;
  u32 prime = 2;
  u32 exponent = 1;

  ZmodScalar(i64 v, u32 p, u32 n);

  u32 modulus() const { return prime_power(prime, exponent); }
  bool is_unit() const { return value % prime != 0; }
};

/// Row-major dense matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, u32 p);

  static FpMatrix identity(std::size_t n, u32 p);
  static FpMatrix from_rows(const std::vector<Vec>& rows, std::size_t cols, u32 p);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  u32 modulus() const noexcept { return p_; }
  Field field() const { return Field(p_); }

  u32& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  u32 operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const u32> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<u32> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  Vec apply(std::span<const u32> v) const;
  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix operator+(const FpMatrix& rhs) const;
  FpMatrix operator-(const FpMatrix& rhs) const;
  FpMatrix scaled(u32 c) const;
  FpMatrix transposed() const;
  bool is_zero() const;

  bool operator==(const FpMatrix&) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  u32 p_;
  std::vector<u32> data_;
};

struct Reduction {
  FpMatrix rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_columns;
  std::vector<Vec> kernel_basis;
};

/// Reduced row-echelon form, rank and a null-space basis.
///
/// The kernel basis has one vector per free column f: 1 at f and minus the
/// f-entry of each pivot row at that row's pivot column.
Reduction reduce(const FpMatrix& m);

/// Incremental Gauss-Jordan elimination on sparse rows.
///
/// Rows held by the reducer are kept fully reduced: each one is zero at
/// every pivot column except its own, where it is 1. Feeding rows one at a
/// time therefore never needs the full relation matrix in memory.
class RowReducer {
 public:
  RowReducer(std::size_t cols, u32 p);

  /// Returns true when the row was independent of the rows seen so far.
  bool add(const SparseRow& row);
  bool add_dense(std::span<const u32> row);

  std::size_t cols() const noexcept { return cols_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const Field& field() const noexcept { return field_; }

  /// Reduces v in place modulo the current row space.
  void reduce_vector(Vec& v) const;

  /// Stored row whose pivot is `col`, or nullptr for a free column.
  const SparseRow* pivot_row(std::size_t col) const;
  std::vector<std::size_t> free_columns() const;

  Reduction finish() const;

 private:
  void eliminate(Vec& dense, std::vector<u32>& touched) const;

  std::size_t cols_;
  Field field_;
  // pivot column -> index into basis_, or npos
  std::vector<std::size_t> pivot_row_;
  std::vector<SparseRow> basis_;
  std::vector<u32> basis_pivot_;
};

/// Residue of B_k mod p, or nullopt when k = 0 mod (p-1) (the pole case).
struct BernoulliValue {
  int k = 0;
  u32 p = 2;
  std::optional<FpScalar> residue;

  bool is_pole() const { return !residue.has_value(); }
};

BernoulliValue bernoulli_mod(int k, u32 p);

/// True iff p divides the numerator of B_k/k.
///
/// Requires p > 3 prime and k >= 2 even; false when k = 0 mod (p-1). Other k
/// go through the Kummer congruence, so any size of k is accepted.
bool is_irregular_pair(u32 p, int k);

/// a^j mod p for a unit a. Depends on j only modulo p-1.
FpScalar omega_pow(const ZmodScalar& a, i64 j);
FpScalar omega_pow(i64 a, i64 j, u32 p);

}  // namespace k2ms
