#include "k2ms/exactlin.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace k2ms {

namespace {
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u32 prime_power(u32 p, u32 n) {
  u64 r = 1;
  for (u32 i = 0; i < n; ++i) {
    r *= p;
    if (r > std::numeric_limits<u32>::max()) throw std::overflow_error("prime power exceeds 32 bits");
  }
  return static_cast<u32>(r);
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

Field::Field(u32 p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
}

u32 Field::pow(u32 a, i64 e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  u64 result = 1 % p_;
  u64 base = a % p_;
  while (e > 0) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<u32>(result);
}

u32 Field::inv(u32 a) const {
  if (a % p_ == 0) throw std::domain_error("zero has no inverse in F_" + std::to_string(p_));
  return pow(a, static_cast<i64>(p_) - 2);
}

void Field::axpy(Vec& y, u32 c, std::span<const u32> x) const {
  if (c == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) y[i] = add(y[i], mul(c, x[i]));
}

ZmodScalar::ZmodScalar(i64 v, u32 p, u32 n) : prime(p), exponent(n) {
  if (!is_prime(p)) throw std::invalid_argument("ZmodScalar: modulus base is not prime");
  if (n == 0) throw std::invalid_argument("ZmodScalar: exponent must be positive");
  value = static_cast<u32>(mod_floor(v, prime_power(p, n)));
}

// ---------------------------------------------------------------------------

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, u32 p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

FpMatrix FpMatrix::identity(std::size_t n, u32 p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
  return m;
}

FpMatrix FpMatrix::from_rows(const std::vector<Vec>& rows, std::size_t cols, u32 p) {
  FpMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged input");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Vec FpMatrix::apply(std::span<const u32> v) const {
  if (v.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    u64 acc = 0;
    const u32* row_ptr = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) {
      acc += static_cast<u64>(row_ptr[c]) * v[c];
      if ((c & 0xff) == 0xff) acc %= p_;
    }
    out[r] = static_cast<u32>(acc % p_);
  }
  return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw std::invalid_argument("matrix product: shape mismatch");
  Field f(p_);
  FpMatrix out(rows_, rhs.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Vec acc(rhs.cols_, 0);
    for (std::size_t k = 0; k < cols_; ++k) f.axpy(acc, (*this)(i, k), rhs.row(k));
    std::copy(acc.begin(), acc.end(), out.row(i).begin());
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_) throw std::invalid_argument("matrix sum: shape mismatch");
  Field f(p_);
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = f.add(data_[i], rhs.data_[i]);
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || p_ != rhs.p_) throw std::invalid_argument("matrix difference: shape mismatch");
  Field f(p_);
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = f.sub(data_[i], rhs.data_[i]);
  return out;
}

FpMatrix FpMatrix::scaled(u32 c) const {
  Field f(p_);
  FpMatrix out = *this;
  for (auto& x : out.data_) x = f.mul(x, c);
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix out(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

bool FpMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](u32 x) { return x == 0; });
}

// ---------------------------------------------------------------------------

RowReducer::RowReducer(std::size_t cols, u32 p) : cols_(cols), field_(p), pivot_row_(cols, kNone) {}

void RowReducer::eliminate(Vec& dense, std::vector<u32>& touched) const {
  const std::size_t initial = touched.size();
  for (std::size_t t = 0; t < initial; ++t) {
    const u32 c = touched[t];
    const std::size_t r = pivot_row_[c];
    if (r == kNone || dense[c] == 0) continue;
    const u32 coef = field_.neg(dense[c]);
    for (const auto& [col, val] : basis_[r]) {
      if (dense[col] == 0) touched.push_back(col);
      dense[col] = field_.add(dense[col], field_.mul(coef, val));
    }
  }
}

bool RowReducer::add(const SparseRow& row) {
  Vec dense(cols_, 0);
  std::vector<u32> touched;
  touched.reserve(row.size() * 4);
  for (const auto& [col, val] : row) {
    if (col >= cols_) throw std::out_of_range("RowReducer::add: column out of range");
    if (dense[col] == 0) touched.push_back(col);
    dense[col] = field_.add(dense[col], val % field_.p());
  }
  eliminate(dense, touched);

  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  SparseRow reduced;
  for (u32 c : touched)
    if (dense[c] != 0) reduced.emplace_back(c, dense[c]);
  if (reduced.empty()) return false;

  const u32 pivot = reduced.front().first;
  const u32 scale = field_.inv(reduced.front().second);
  for (auto& entry : reduced) entry.second = field_.mul(entry.second, scale);

  // Clear the new pivot column from every stored row.
  for (auto& existing : basis_) {
    auto it = std::lower_bound(existing.begin(), existing.end(), std::make_pair(pivot, u32{0}));
    if (it == existing.end() || it->first != pivot) continue;
    const u32 coef = field_.neg(it->second);
    SparseRow merged;
    merged.reserve(existing.size() + reduced.size());
    auto a = existing.begin();
    auto b = reduced.begin();
    while (a != existing.end() || b != reduced.end()) {
      if (b == reduced.end() || (a != existing.end() && a->first < b->first)) {
        merged.push_back(*a++);
      } else if (a == existing.end() || b->first < a->first) {
        merged.emplace_back(b->first, field_.mul(coef, b->second));
        ++b;
      } else {
        const u32 v = field_.add(a->second, field_.mul(coef, b->second));
        if (v != 0) merged.emplace_back(a->first, v);
        ++a;
        ++b;
      }
    }
    existing = std::move(merged);
  }

  pivot_row_[pivot] = basis_.size();
  basis_.push_back(std::move(reduced));
  basis_pivot_.push_back(pivot);
  return true;
}

bool RowReducer::add_dense(std::span<const u32> row) {
  if (row.size() != cols_) throw std::invalid_argument("RowReducer::add_dense: length mismatch");
  SparseRow sparse;
  for (std::size_t c = 0; c < row.size(); ++c)
    if (row[c] % field_.p() != 0) sparse.emplace_back(static_cast<u32>(c), row[c] % field_.p());
  return add(sparse);
}

void RowReducer::reduce_vector(Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("reduce_vector: length mismatch");
  for (std::size_t c = 0; c < cols_; ++c) {
    const std::size_t r = pivot_row_[c];
    if (r == kNone || v[c] == 0) continue;
    const u32 coef = field_.neg(v[c]);
    for (const auto& [col, val] : basis_[r]) v[col] = field_.add(v[col], field_.mul(coef, val));
  }
}

const SparseRow* RowReducer::pivot_row(std::size_t col) const {
  const std::size_t r = pivot_row_.at(col);
  return r == kNone ? nullptr : &basis_[r];
}

std::vector<std::size_t> RowReducer::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_[c] == kNone) out.push_back(c);
  return out;
}

Reduction RowReducer::finish() const {
  std::vector<std::size_t> order(basis_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return basis_pivot_[a] < basis_pivot_[b]; });

  Reduction out{FpMatrix(basis_.size(), cols_, field_.p()), basis_.size(), {}, {}, {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& [col, val] : basis_[order[i]]) out.rref(i, col) = val;
    out.pivots.push_back(basis_pivot_[order[i]]);
  }
  for (std::size_t c = 0; c < cols_; ++c)
    if (pivot_row_[c] == kNone) out.free_columns.push_back(c);

  for (std::size_t f : out.free_columns) {
    Vec k(cols_, 0);
    k[f] = 1;
    for (std::size_t i = 0; i < out.pivots.size(); ++i) k[out.pivots[i]] = field_.neg(out.rref(i, f));
    out.kernel_basis.push_back(std::move(k));
  }
  return out;
}

Reduction reduce(const FpMatrix& m) {
  RowReducer reducer(m.cols(), m.modulus());
  for (std::size_t r = 0; r < m.rows(); ++r) reducer.add_dense(m.row(r));
  return reducer.finish();
}

// ---------------------------------------------------------------------------

namespace {

// B_0..B_m mod p by sum_{j=0}^{m} C(m+1, j) B_j = 0; needs m + 1 < p.
std::vector<u32> bernoulli_table(int m, const Field& f) {
  std::vector<u32> b(static_cast<std::size_t>(m) + 1, 0);
  b[0] = 1;
  Vec binom{1, 1};  // row n of Pascal's triangle
  for (int n = 1; n <= m; ++n) {
    // binom holds row n; extend to row n + 1.
    Vec next(binom.size() + 1, 1);
    for (std::size_t j = 1; j < binom.size(); ++j) next[j] = f.add(binom[j - 1], binom[j]);
    binom = std::move(next);
    u32 acc = 0;
    for (int j = 0; j < n; ++j) acc = f.add(acc, f.mul(binom[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(j)]));
    b[static_cast<std::size_t>(n)] = f.neg(f.mul(acc, f.inv(static_cast<u32>(n + 1))));
  }
  return b;
}

}  // namespace

BernoulliValue bernoulli_mod(int k, u32 p) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("bernoulli_mod: k must be even and >= 2");
  Field f(p);
  BernoulliValue out{k, p, std::nullopt};
  const int period = static_cast<int>(p) - 1;
  if (k % period == 0) return out;

  // Kummer: B_k/k = B_k0/k0 (mod p) for k = k0 (mod p-1).
  const int k0 = k % period;
  const u32 b0 = bernoulli_table(k0, f)[static_cast<std::size_t>(k0)];
  u32 r = b0;
  if (k != k0) r = f.mul(f.mul(f.from_int(k), b0), f.inv(static_cast<u32>(k0)));
  out.residue = FpScalar{r, p};
  return out;
}

bool is_irregular_pair(u32 p, int k) {
  if (!is_prime(p) || p <= 3) throw std::invalid_argument("is_irregular_pair: p must be a prime > 3");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("is_irregular_pair: k must be even and >= 2");
  // p sits in the denominator of B_k there.
  if (k % static_cast<int>(p - 1) == 0) return false;
  const int k0 = k % static_cast<int>(p - 1);
  return bernoulli_mod(k0, p).residue->value == 0;
}

FpScalar omega_pow(i64 a, i64 j, u32 p) {
  Field f(p);
  const u32 r = f.from_int(a);
  if (r == 0) throw std::domain_error("omega_pow: argument is not a unit mod p");
  return {f.pow(r, mod_floor(j, static_cast<i64>(p) - 1)), p};
}

FpScalar omega_pow(const ZmodScalar& a, i64 j) {
  return omega_pow(static_cast<i64>(a.value), j, a.prime);
}

}  // namespace k2ms
