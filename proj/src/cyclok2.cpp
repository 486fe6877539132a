#include "k2ms/cyclok2.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "k2ms/hecke.hpp"

namespace k2ms {

// ---------------------------------------------------------------------------
// RelationFlags

RelationFlags RelationFlags::defaults(u32 n) {
  RelationFlags f;
  for (int i = 1; i <= 6; ++i) f.set(i);
  if (n > 1) f.set(7);
  return f;
}

RelationFlags RelationFlags::parse(const std::string& text) {
  RelationFlags f;
  std::stringstream ss(text);
  std::string item;
  auto family = [&](const std::string& tok) {
    if (tok.size() != 2 || (tok[0] != 'F' && tok[0] != 'f') || tok[1] < '1' || tok[1] > '7')
      throw std::invalid_argument("unknown relation family '" + tok + "'");
    return tok[1] - '0';
  };
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      f.set(family(item));
    } else {
      const int lo = family(item.substr(0, dash));
      const int hi = family(item.substr(dash + 1));
      if (lo > hi) throw std::invalid_argument("bad relation range '" + item + "'");
      for (int i = lo; i <= hi; ++i) f.set(i);
    }
  }
  return f;
}

std::string RelationFlags::to_string() const {
  std::string out;
  int i = 1;
  while (i <= 7) {
    if (!has(i)) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 <= 7 && has(j + 1)) ++j;
    if (!out.empty()) out += ",";
    out += "F" + std::to_string(i);
    if (j > i) out += "-F" + std::to_string(j);
    i = j + 1;
  }
  return out;
}

bool SymbolClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](u32 c) { return c == 0; });
}

u32 DualFunctional::operator()(const Vec& v) const {
  if (v.size() != weights.size()) throw std::invalid_argument("DualFunctional: dimension mismatch");
  const Field f(p);
  u32 acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) acc = f.add(acc, f.mul(weights[i], v[i]));
  return acc;
}

// ---------------------------------------------------------------------------
// CycloModule

namespace {

class RelationBuilder {
 public:
  RelationBuilder(const CycloModule& m) : m_(m), f_(m.p()) {}

  RelationBuilder& term(i64 x, i64 y, i64 coef) {
    const i64 level = m_.level();
    if (mod_floor(x, level) == 0 || mod_floor(y, level) == 0) return *this;
    u32& slot = acc_[static_cast<u32>(m_.generator_index(x, y))];
    slot = f_.add(slot, f_.from_int(coef));
    return *this;
  }

  SparseRow take() {
    SparseRow row;
    for (const auto& [c, v] : acc_)
      if (v != 0) row.emplace_back(c, v);
    acc_.clear();
    return row;
  }

 private:
  const CycloModule& m_;
  Field f_;
  std::map<u32, u32> acc_;
};

}  // namespace

CycloModule::CycloModule(u32 p, u32 n, RelationFlags flags)
    : p_(p), n_(n), level_(prime_power(p, n)), flags_(flags), reducer_(0, 0, p) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("CycloModule: p must be an odd prime");
  if (n == 0) throw std::invalid_argument("CycloModule: n must be positive");
  for (int fam = 1; fam <= 4; ++fam)
    if (!flags.has(fam)) throw std::invalid_argument("CycloModule: families F1-F4 are mandatory");
  if (flags.has(7) && n == 1) flags_.set(7, false);
  if (p == 3) flags_.set(6, false);

  const i64 level = level_;
  auto nz = [level](i64 v) { return mod_floor(v, level) != 0; };
  RelationBuilder b(*this);
  auto push = [&](SparseRow row) {
    if (!row.empty()) relations_.push_back(std::move(row));
  };

  for (i64 x = 1; x < level; ++x)
    for (i64 y = 1; y < level; ++y) push(b.term(x, y, 1).term(y, x, 1).take());
  for (i64 x = 1; x < level; ++x)
    for (i64 y = 1; y < level; ++y) {
      push(b.term(x, y, 1).term(-x, y, -1).take());
      push(b.term(x, y, 1).term(x, -y, -1).take());
    }
  for (i64 y = 1; y < level; ++y) push(b.term(y, y, 1).take());
  for (i64 x = 1; x < level; ++x)
    for (i64 y = 1; y < level; ++y) {
      if (!nz(x + y)) continue;
      push(b.term(x, y, 1).term(x + y, y, -1).term(x, x + y, -1).take());
    }
  if (flags_.has(5)) {
    for (i64 x = 1; x < level; ++x)
      for (i64 y = 1; y < level; ++y) {
        if (!nz(x + y)) continue;
        b.term(x, 2 * y, 1).term(2 * x, y, 1).term(x + y, 2 * y, 1).term(x + y, 2 * x, -1);
        b.term(x, y, -1).term(2 * x, 2 * y, -1).term(x + y, y, -1).term(x + y, x, 1);
        b.term(x, 2 * x, -1).term(2 * x, x, -1);
        push(b.take());
      }
  }
  if (flags_.has(6)) {
    for (i64 x = 1; x < level; ++x)
      for (i64 y = 1; y < level; ++y) {
        if (!nz(x + y) || !nz(x - y)) continue;
        b.term(x, 3 * y, 1).term(3 * x, y, 1).term(3 * y, x + y, -1).term(3 * y, y - x, -1);
        b.term(3 * x, x + y, 1).term(3 * x, y - x, 1);
        b.term(3 * x, 3 * y, -1).term(y, y - x, 1).term(y, x + y, 1).term(x, y - x, -1);
        b.term(x, y, -1).term(x, x + y, -1);
        push(b.take());
      }
  }
  if (flags_.has(7)) {
    for (i64 x = 1; x < level; ++x) {
      if (x % p != 0) continue;
      i64 u = x, pk = 1;
      while (u % p == 0) {
        u /= p;
        pk *= p;
      }
      const i64 step = level / pk;  // p^{n-k}
      for (i64 y = 1; y < level; ++y) {
        b.term(x, y, 1);
        for (i64 alpha = 1; alpha < level; alpha += step) b.term(u * alpha, y, -1);
        push(b.take());
      }
    }
  }

  RowReducer reducer(generator_count(), p);
  for (const SparseRow& r : relations_) reducer.add(r);
  basis_generators_ = reducer.free_columns();
  quotient_dim_ = basis_generators_.size();

  std::vector<std::size_t> position(generator_count(), quotient_dim_);
  for (std::size_t i = 0; i < basis_generators_.size(); ++i) position[basis_generators_[i]] = i;
  const Field f(p);
  reducer_ = FpMatrix(generator_count(), quotient_dim_, p);
  for (std::size_t g = 0; g < generator_count(); ++g) {
    if (const SparseRow* row = reducer.pivot_row(g)) {
      for (const auto& [c, v] : *row)
        if (c != g) reducer_(g, position[c]) = f.neg(v);
    } else {
      reducer_(g, position[g]) = 1;
    }
  }
}

std::size_t CycloModule::generator_index(i64 x, i64 y) const {
  const i64 xr = mod_floor(x, level_), yr = mod_floor(y, level_);
  if (xr == 0 || yr == 0) throw std::out_of_range("generator_index: zero slot");
  return static_cast<std::size_t>((xr - 1) * (level_ - 1) + (yr - 1));
}

std::pair<u32, u32> CycloModule::generator(std::size_t idx) const {
  return {static_cast<u32>(idx / (level_ - 1) + 1), static_cast<u32>(idx % (level_ - 1) + 1)};
}

FpMatrix CycloModule::relation_matrix() const {
  FpMatrix m(relations_.size(), generator_count(), p_);
  for (std::size_t r = 0; r < relations_.size(); ++r)
    for (const auto& [c, v] : relations_[r]) m(r, c) = v;
  return m;
}

SymbolClass CycloModule::symbol_class(i64 x, i64 y) const {
  SymbolClass out{p_, Vec(quotient_dim_, 0)};
  if (mod_floor(x, level_) == 0 || mod_floor(y, level_) == 0) return out;
  const auto row = reducer_.row(generator_index(x, y));
  std::copy(row.begin(), row.end(), out.coords.begin());
  return out;
}

Vec CycloModule::reduce_combination(const Vec& generator_coeffs) const {
  if (generator_coeffs.size() != generator_count()) throw std::invalid_argument("reduce_combination: length mismatch");
  const Field f(p_);
  Vec out(quotient_dim_, 0);
  for (std::size_t g = 0; g < generator_coeffs.size(); ++g) f.axpy(out, generator_coeffs[g], reducer_.row(g));
  return out;
}

FpMatrix CycloModule::galois_action(i64 unit) const {
  if (mod_floor(unit, p_) == 0) throw std::domain_error("galois_action: not a unit");
  FpMatrix a(quotient_dim_, quotient_dim_, p_);
  for (std::size_t j = 0; j < quotient_dim_; ++j) {
    const auto [x, y] = generator(basis_generators_[j]);
    const auto row = reducer_.row(generator_index(unit * x, unit * y));
    for (std::size_t i = 0; i < quotient_dim_; ++i) a(i, j) = row[i];
  }
  return a;
}

Vec CycloModule::galois_apply(i64 unit, const Vec& v) const { return galois_action(unit).apply(v); }

Nebentype CycloModule::artin_nebentype() const {
  return Nebentype(p_, n_, CoeffModule{p_, quotient_dim_}, [this](u32 a) { return galois_action(a); });
}

CycloModule build_cyclo_module(u32 p, u32 n, RelationFlags flags) { return CycloModule(p, n, flags); }

SymbolClass symbol_class(const CycloModule& m, i64 x, i64 y) { return m.symbol_class(x, y); }

// ---------------------------------------------------------------------------

ManinTable symbol_table(const CycloModule& m) {
  auto points = std::make_shared<const PointSet>(m.p(), m.n());
  ManinTable e(points, CoeffModule{m.p(), m.quotient_dim()});
  for (std::size_t idx = 0; idx < points->size(); ++idx) {
    const SymbolClass c = m.symbol_class((*points)[idx].x, (*points)[idx].y);
    std::copy(c.coords.begin(), c.coords.end(), e.value(idx).begin());
  }
  return e;
}


ManinTable e_manin(const CycloModule& m) {
  ManinTable e = symbol_table(m);
  const ManinCheck check = check_manin_relations(e, m.artin_nebentype());
  if (!check.ok()) {
    throw std::logic_error("e_manin: Manin relations fail (" + std::to_string(check.failed_unit) + " unit, " +
                           std::to_string(check.failed_antisym) + " antisymmetry, " +
                           std::to_string(check.failed_three_term) + " three-term)");
  }
  e.mark_validated();
  return e;
}

CheckReport verify_theorem51(const CycloModule& m, std::vector<u32> qs) {
  if (qs.empty()) {
    for (u32 q : {2u, 3u})
      if (q != m.p()) qs.push_back(q);
  }
  CheckReport report;
  report.command = "verify-hecke";
  report.params = {{"p", m.p()}, {"n", m.n()}, {"flags", m.flags().to_string()}, {"dim", m.quotient_dim()}};

  const ManinTable e = e_manin(m);
  const Nebentype chi = m.artin_nebentype();
  const Field f = m.field();
  const PointSet& points = e.points();
  for (u32 q : qs) {
    if (q % m.p() == 0) throw std::invalid_argument("verify_theorem51: q must be prime to p");
    const ManinTable tq = hecke_apply(e, q);
    const FpMatrix& sigma_q = chi(q);
    ManinTable diff(e.point_set(), e.module());
    std::size_t checked = 0, failed = 0;
    std::string first_failure;
    for (std::size_t idx = 0; idx < points.size(); ++idx) {
      const auto v = e.value(idx);
      Vec expected = sigma_q.apply(v);
      f.axpy(expected, q % m.p(), v);
      const auto got = tq.value(idx);
      auto d = diff.value(idx);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = f.sub(got[i], expected[i]);
      if (points[idx].x == 0 || points[idx].y == 0) continue;
      ++checked;
      if (!std::equal(got.begin(), got.end(), expected.begin())) {
        if (failed++ == 0)
          first_failure = "first failure at (" + std::to_string(points[idx].x) + "," + std::to_string(points[idx].y) + ")";
      }
    }
    const std::string tag = "T" + std::to_string(q);
    report.add(tag + " eigenvalue q+sigma_q off the axes", failed == 0,
               std::to_string(checked - failed) + "/" + std::to_string(checked) + " points agree" +
                   (failed ? "; " + first_failure : ""));
    const bool is_symbol = check_manin_relations(diff, chi).ok();
    report.add(tag + " difference is a Manin symbol", is_symbol);
    report.add(tag + " difference supported at infinity", is_supported_at_infty(diff));
  }
  return report;
}

EigenProjector eigen_projector(const CycloModule& m, i64 j) {
  if (m.n() != 1) throw std::invalid_argument("eigen_projector: only defined for n = 1");
  const Field f = m.field();
  const u32 p = m.p();
  FpMatrix acc(m.quotient_dim(), m.quotient_dim(), p);
  for (u32 a = 1; a < p; ++a) acc = acc + m.galois_action(a).scaled(f.pow(a, j - 1));
  return {mod_floor(j, p - 1), acc.scaled(f.inv(p - 1))};
}

SymbolClass xi_class(const CycloModule& m, int i, int k) {
  if (m.n() != 1) throw std::invalid_argument("xi_class: only defined for n = 1");
  const Field f = m.field();
  const u32 p = m.p();
  Vec coeffs(m.generator_count(), 0);
  for (u32 a = 1; a < p; ++a)
    for (u32 b = 1; b < p; ++b) {
      const u32 c = f.mul(f.pow(a, k - i - 1), f.pow(b, i - 1));
      u32& slot = coeffs[m.generator_index(a, b)];
      slot = f.add(slot, c);
    }
  return {p, m.reduce_combination(coeffs)};
}

std::vector<DualFunctional> rho_basis(const CycloModule& m, int k) {
  const EigenProjector proj = eigen_projector(m, k - 1);
  const Reduction red = reduce(proj.matrix);
  std::vector<DualFunctional> out;
  for (std::size_t r = 0; r < red.rank; ++r) {
    const auto row = red.rref.row(r);
    out.push_back({m.p(), Vec(row.begin(), row.end())});
  }
  return out;
}

}  // namespace k2ms
