// Acceptance run: one line per criterion. With --expect-red a,b,... the exit
// status is 0 iff exactly those criteria fail.

#include <chrono>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "k2ms/cyclok2.hpp"
#include "k2ms/eisspace.hpp"
#include "k2ms/hecke.hpp"
#include "k2ms/lvalues.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace k2ms;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::pair<u32, u32>> kLevels{{5, 1}, {7, 1}, {11, 1}, {13, 1}, {37, 1}, {5, 2}};

struct Outcome {
  bool pass = true;
  std::string details;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Outcome criterion1() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool ok = true;
  for (auto [p, n] : kLevels) {
    // The default module collapses at most levels, so also run the F1-F4 cover.
    for (const RelationFlags& flags :
         {RelationFlags::defaults(n), RelationFlags::parse(n > 1 ? "F1-F4,F7" : "F1-F4")}) {
      const CycloModule m(p, n, flags);
      try {
        const ManinTable e = e_manin(m);
        ok = ok && check_manin_relations(e, m.artin_nebentype()).ok();
      } catch (const std::logic_error&) {
        ok = false;
      }
      d << "(" << p << "," << n << "," << flags.to_string() << ") dim " << m.quotient_dim() << "; ";
    }
  }
  const double s = seconds_since(t0);
  d << s << "s";
  return {ok && s < 10, d.str()};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool ok = true;
  auto run = [&](u32 p, u32 n, const RelationFlags& flags) {
    const CycloModule m(p, n, flags);
    const bool pass = verify_theorem51(m).all_passed();
    ok = ok && pass;
    d << "(" << p << "," << n << "," << flags.to_string() << ") dim " << m.quotient_dim() << (pass ? " ok" : " FAIL")
      << "; ";
  };
  for (auto [p, n] : kLevels) run(p, n, RelationFlags::defaults(n));
  run(5, 2, RelationFlags::parse("F1-F6"));
  const double s = seconds_since(t0);
  d << s << "s";
  return {ok && s < 30, d.str()};
}

Outcome criterion3() {
  std::mt19937_64 rng(2024);
  std::ostringstream d;
  bool ok = true;
  for (auto [p, n] : std::vector<std::pair<u32, u32>>{{5, 1}, {7, 1}}) {
    const auto pts = std::make_shared<const PointSet>(p, n);
    std::vector<Nebentype> chars;
    std::vector<std::vector<ManinTable>> bases;
    for (i64 j = 0; j < p - 1; j += 2) {
      chars.push_back(Nebentype::power_of_omega(p, n, j));
      bases.push_back(manin_basis(pts, chars.back()));
    }
    std::size_t agree = 0, nonzero = 0;
    for (int t = 0; t < 100; ++t) {
      const std::size_t c = static_cast<std::size_t>(t) % chars.size();
      const ManinTable e = support::random_symbol(bases[c], pts, chars[c], rng);
      if (!e.validated()) {
        ok = false;
        continue;
      }
      nonzero += !e.is_zero();
      const bool same = hecke_closed_form(e, 2) == hecke_apply(e, 2) && hecke_closed_form(e, 3) == hecke_apply(e, 3);
      agree += same;
    }
    ok = ok && agree == 100;
    d << "(" << p << "," << n << ") " << agree << "/100 agree, " << nonzero << " nonzero; ";
  }
  return {ok, d.str()};
}

Outcome criterion4() {
  std::ostringstream d;
  bool ell_ok = true, p_ok = true;
  std::vector<std::string> bad;
  for (auto [p, n] : std::vector<std::pair<u32, u32>>{{5, 1}, {7, 1}, {11, 1}, {13, 1}, {37, 1}, {5, 2}, {7, 2}}) {
    const auto pts = std::make_shared<const PointSet>(p, n);
    const Field f(p);
    for (i64 j = 0; j < p - 1; j += 2) {
      const Nebentype chi = Nebentype::power_of_omega(p, n, j);
      for (const ManinTable& e : supported_at_infty_basis(pts, chi)) {
        for (u32 l : {2u, 3u, 5u, 7u}) {
          if (l == p) continue;
          ell_ok = ell_ok && hecke_apply(e, l) == e.scaled(f.add(l % p, chi(l)(0, 0)));
        }
        const ManinTable tp = hecke_apply(e, p);
        if (!tp.is_zero()) {
          p_ok = false;
          std::ostringstream s;
          s << "(" << p << "," << n << ",omega^" << j << ")" << (tp == e ? " T_p=1" : " T_p=?");
          bad.push_back(s.str());
        }
      }
    }
  }
  d << "T_l = l+chi(l) " << (ell_ok ? "holds" : "FAILS") << " for every even chi; T_p = 0 ";
  if (p_ok) {
    d << "holds";
  } else {
    d << "fails at";
    for (const std::string& b : bad) d << " " << b;
    d << " (trivial character at prime level: the boundary line is the ordinary Eisenstein class)";
  }
  return {ell_ok && p_ok, d.str()};
}

Outcome criterion5() {
  bool ok = true;
  std::size_t cases = 0;
  for (u32 p : {5u, 7u, 11u, 13u})
    for (int r = 0; r < static_cast<int>(2 * p); r += 2) {
      ++cases;
      ok = ok && gamma_infty_invariants(r, p).size() == (r < static_cast<int>(p) ? 1u : 2u);
    }
  return {ok, std::to_string(cases) + " (p,r) cases"};
}

Outcome criterion6() {
  bool ok = true;
  std::ostringstream d;
  for (auto [p, r] : std::vector<std::pair<u32, int>>{{5, 8}, {7, 10}, {37, 30}}) {
    std::size_t checked = 0;
    for (const DualVec& lam : gamma_infty_invariants(r, p)) {
      const DualVec b = boundary_lambda(lam);
      for (int i = 0; i <= r; ++i)
        if (mod_floor(i, p - 1) != 0 && mod_floor(i - r, p - 1) != 0) {
          ++checked;
          ok = ok && b.c[static_cast<std::size_t>(i)] == 0;
        }
    }
    d << "(" << p << "," << r << ") " << checked << " values; ";
  }
  return {ok, d.str()};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool ok = true;
  for (auto [p, k] : std::vector<std::pair<u32, int>>{{37, 32}, {5, 4}}) {
    const CheckReport rep = theorem12_report(p, k);
    ok = ok && rep.all_passed();
    d << "(" << p << "," << k << ") rho count " << rep.data["rho_count"].get<std::size_t>()
      << (rep.all_passed() ? " ok" : " FAIL") << "; ";
  }
  const double s = seconds_since(t0);
  d << s << "s";
  return {ok && s < 60, d.str()};
}

const std::vector<std::pair<u32, int>> kIrregular{{37, 32}, {59, 44}, {67, 58}, {101, 68}, {103, 24}};

Outcome criterion8() {
  const auto t0 = Clock::now();
  std::ostringstream d;
  bool ok = true;
  for (auto [p, k] : kIrregular) {
    const std::size_t a = eis_eigenspace(p, k, {2}).dim_plus_eisenstein;
    const std::size_t b = eis_eigenspace(p, k, {2, 3}).dim_plus_eisenstein;
    ok = ok && a == 1 && b == 1;
    d << "(" << p << "," << k << ") " << a << "/" << b << "; ";
  }
  for (auto [p, k] : std::vector<std::pair<u32, int>>{{7, 4}, {11, 8}, {13, 6}}) {
    const std::size_t a = eis_eigenspace(p, k, {2}).dim_plus_eisenstein;
    ok = ok && a == 0;
    d << "(" << p << "," << k << ") " << a << "; ";
  }
  const double s = seconds_since(t0);
  d << s << "s";
  return {ok && s < 300, d.str()};
}

Outcome criterion9() {
  const auto bern = oracle::bernoulli_exact(40);
  std::size_t cases = 0, irregular = 0;
  bool ok = true;
  for (u32 p : {5u, 7u, 11u, 13u, 37u, 59u, 67u, 101u, 103u})
    for (int k = 2; k <= 40; k += 2) {
      ++cases;
      const bool exact = oracle::p_divides_numerator(bern[static_cast<std::size_t>(k)] / k, p);
      irregular += exact;
      ok = ok && is_irregular_pair(p, k) == exact;
    }
  return {ok, std::to_string(cases) + " cases, " + std::to_string(irregular) + " irregular"};
}

Outcome criterion10() {
  bool ok = true;
  std::size_t checked = 0;
  for (auto [p, k] : kIrregular) {
    const Field f(p);
    const EisReport rep = eis_eigenspace(p, k, {2});
    const QExpansions g = eisenstein_q_coeffs(k, p, 7);
    for (u32 q : {2u, 3u, 5u, 7u}) {
      const auto ev = rep.eigenvalues.at(q);
      ++checked;
      ok = ok && ev && *ev == f.add(1, f.pow(q, k - 1)) && *ev == g.g_k[q];
    }
  }
  return {ok, std::to_string(checked) + " eigenvalues"};
}

std::set<int> parse_set(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.insert(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_red;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--expect-red" && i + 1 < argc) expect_red = parse_set(argv[++i]);
  }
  const std::vector<Outcome (*)()> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                            criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> red;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const int id = static_cast<int>(i) + 1;
    if (!o.pass) red.insert(id);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.details << std::endl;
  }
  std::cout << red.size() << " of " << criteria.size() << " criteria failing" << std::endl;
  return red == expect_red ? 0 : 1;
}
