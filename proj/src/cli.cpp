#include "k2ms/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "k2ms/cyclok2.hpp"
#include "k2ms/eisspace.hpp"
#include "k2ms/hecke.hpp"
#include "k2ms/lvalues.hpp"

namespace k2ms::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::pair<u32, u32>> kCycloLevels{{5, 1}, {7, 1}, {11, 1}, {13, 1}, {37, 1}, {5, 2}};
const std::vector<std::pair<u32, int>> kIrregularPairs{{37, 32}, {59, 44}, {67, 58}, {101, 68}, {103, 24}};
const std::vector<std::pair<u32, int>> kRegularPairs{{7, 4}, {11, 8}, {13, 6}};
// Every irregular pair with p < 160.
const std::set<std::pair<u32, int>> kClassicalIrregular{{37, 32},  {59, 44},  {67, 58},  {101, 68}, {103, 24},
                                                        {131, 22}, {149, 130}, {157, 62}, {157, 110}};

RelationFlags flags_for(const std::string& text, u32 n) {
  if (text.empty()) return RelationFlags::defaults(n);
  try {
    return RelationFlags::parse(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<u32> primes_below(u32 bound) {
  std::vector<u32> out;
  for (u32 q = 5; q < bound; ++q)
    if (is_prime(q)) out.push_back(q);
  return out;
}

std::vector<std::pair<u32, int>> irregular_pairs_below(u32 bound) {
  std::vector<std::pair<u32, int>> out;
  for (u32 p : primes_below(bound))
    for (int k = 2; k <= static_cast<int>(p) - 3; k += 2)
      if (is_irregular_pair(p, k)) out.emplace_back(p, k);
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::string opt_str(const std::optional<u32>& v) { return v ? std::to_string(*v) : ""; }

nlohmann::json opt_json(const std::optional<u32>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

// ---------------------------------------------------------------------------
// subcommands

CheckReport verify_manin(u32 p, u32 n, const std::string& flag_text) {
  const CycloModule m(p, n, flags_for(flag_text, n));
  CheckReport rep;
  rep.command = "verify-manin";
  rep.params = {{"p", p}, {"n", n}, {"flags", m.flags().to_string()}};
  rep.data["dim"] = m.quotient_dim();
  rep.data["generators"] = m.generator_count();
  rep.data["relation_rank"] = m.relation_rank();

  ManinTable e = symbol_table(m);
  const ManinCheck c = check_manin_relations(e, m.artin_nebentype());
  auto counts = [](std::size_t checked, std::size_t failed) {
    return std::to_string(checked - failed) + "/" + std::to_string(checked) + " hold";
  };
  rep.add("relation (1) e(l x) = sigma_l e(x)", c.failed_unit == 0, counts(c.checked_unit, c.failed_unit));
  rep.add("relation (2) e(x,y) + e(y,-x) = 0", c.failed_antisym == 0, counts(c.checked_antisym, c.failed_antisym));
  rep.add("relation (3) three-term", c.failed_three_term == 0, counts(c.checked_three_term, c.failed_three_term));

  bool even = true;
  const PointSet& pts = e.points();
  for (std::size_t idx = 0; idx < pts.size() && even; ++idx) {
    const auto v = e.value(idx);
    even = std::equal(v.begin(), v.end(), e.value_at(-static_cast<i64>(pts[idx].x), -static_cast<i64>(pts[idx].y)).begin());
  }
  rep.add("e(x) = e(-x)", even);
  return rep;
}

CheckReport verify_hecke(u32 p, u32 n, std::vector<u32> qs, const std::string& flag_text) {
  for (u32 q : qs)
    if (q % p == 0) throw UsageError("--q must be prime to p");
  const CycloModule m(p, n, flags_for(flag_text, n));
  CheckReport rep = verify_theorem51(m, qs);
  if (qs.empty()) qs = {2, 3};
  const ManinTable e = e_manin(m);
  for (u32 q : qs) {
    if (q != 2 && q != 3) continue;
    rep.add("T" + std::to_string(q) + " closed form agrees with the coset sum", hecke_closed_form(e, q) == hecke_apply(e, q));
  }
  rep.params["q"] = qs;
  return rep;
}

CheckReport eis_single(u32 p, int k, const std::vector<u32>& primes, nlohmann::json& row) {
  const EisReport r = eis_eigenspace(p, k, primes);
  CheckReport rep;
  rep.command = "eis-dim";
  rep.params = {{"p", p}, {"k", k}, {"primes", primes}};
  row = {{"p", p},
         {"k", k},
         {"primes", primes},
         {"dim_total", r.dim_total},
         {"dim_boundary", r.dim_boundary},
         {"dim_parabolic", r.dim_parabolic},
         {"dim_plus", r.dim_plus},
         {"dim_minus", r.dim_minus},
         {"dim_plus_eisenstein", r.dim_plus_eisenstein}};
  nlohmann::json eig = nlohmann::json::array();
  const Field f(p);
  for (const auto& [q, v] : r.eigenvalues) {
    eig.push_back({{"q", q}, {"value", opt_json(v)}, {"expected", f.add(1, f.pow(q, k - 1))}});
    if (r.dim_plus_eisenstein == 1)
      rep.add("T" + std::to_string(q) + " eigenvalue = 1 + q^(k-1)", v && *v == f.add(1, f.pow(q, k - 1)),
              "got " + opt_str(v));
  }
  row["eigenvalues"] = eig;
  rep.add("plus and minus parts fill the parabolic quotient", r.dim_plus + r.dim_minus == r.dim_parabolic);
  if (k >= 4 && k <= static_cast<int>(p) - 3) {
    const bool irregular = is_irregular_pair(p, k);
    row["irregular"] = irregular;
    const std::size_t want = irregular ? 1 : 0;
    rep.add(std::string(irregular ? "irregular" : "regular") + " pair: dim H+ eis = " + std::to_string(want),
            r.dim_plus_eisenstein == want, "got " + std::to_string(r.dim_plus_eisenstein));
  }
  rep.data = row;
  return rep;
}

CheckReport eis_dim(u32 p, int k, u32 max_p, const std::vector<u32>& primes, const std::string& csv) {
  std::vector<std::pair<u32, int>> pairs;
  if (max_p) {
    pairs = irregular_pairs_below(max_p);
  } else {
    if (!p || !k) throw UsageError("eis-dim needs --p and --k, or --max-p");
    pairs.emplace_back(p, k);
  }
  CheckReport rep;
  rep.command = "eis-dim";
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& [pp, kk] : pairs) {
    nlohmann::json row;
    const CheckReport one = eis_single(pp, kk, primes, row);
    if (pairs.size() == 1) {
      rep = one;
    } else {
      rep.merge(one, "(" + std::to_string(pp) + "," + std::to_string(kk) + ") ");
    }
    rows.push_back(row);
  }
  if (pairs.size() != 1) {
    rep.params = {{"max_p", max_p}, {"primes", primes}};
    rep.data["pairs"] = rows;
  }
  if (!csv.empty()) {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
      table.push_back({std::to_string(r["p"].get<u32>()), std::to_string(r["k"].get<int>()),
                       std::to_string(r["dim_total"].get<std::size_t>()),
                       std::to_string(r["dim_boundary"].get<std::size_t>()),
                       std::to_string(r["dim_parabolic"].get<std::size_t>()),
                       std::to_string(r["dim_plus"].get<std::size_t>()),
                       std::to_string(r["dim_plus_eisenstein"].get<std::size_t>())});
    }
    write_csv(csv, {"p", "k", "dim_total", "dim_boundary", "dim_parabolic", "dim_plus", "dim_plus_eisenstein"}, table);
  }
  return rep;
}

CheckReport irregular_pairs(u32 max_p, const std::string& csv) {
  CheckReport rep;
  rep.command = "irregular-pairs";
  rep.params = {{"max_p", max_p}};
  const auto pairs = irregular_pairs_below(max_p);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& [p, k] : pairs) list.push_back({p, k});
  rep.data["pairs"] = list;
  std::set<std::pair<u32, int>> expected, found(pairs.begin(), pairs.end());
  for (const auto& pk : kClassicalIrregular)
    if (pk.first < max_p) expected.insert(pk);
  if (max_p <= 160) {
    rep.add("agrees with the classical list of irregular pairs", found == expected,
            std::to_string(found.size()) + " pairs found");
  } else {
    const bool contains = std::includes(found.begin(), found.end(), expected.begin(), expected.end());
    rep.add("contains every classical irregular pair below 160", contains, std::to_string(found.size()) + " pairs found");
  }
  if (!csv.empty()) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [p, k] : pairs) rows.push_back({std::to_string(p), std::to_string(k)});
    write_csv(csv, {"p", "k"}, rows);
  }
  return rep;
}

CheckReport lvalues_cmd(u32 p, int k, const std::string& csv) {
  if (!is_prime(p) || p <= 3) throw UsageError("--p must be a prime > 3");
  if (k < 2 || k % 2 != 0 || static_cast<u32>(k) >= 2 * p) throw UsageError("--k must be even with 2 <= k < 2p");
  const int r = k - 2;
  const Field f(p);
  CheckReport rep;
  rep.command = "lvalues";
  rep.params = {{"p", p}, {"k", k}};

  const auto inv = gamma_infty_invariants(r, p);
  const std::size_t want = static_cast<u32>(r) < p ? 1 : 2;
  rep.add("Gamma_infty invariants have dimension " + std::to_string(want), inv.size() == want,
          "got " + std::to_string(inv.size()));
  bool vanish = true;
  for (const DualVec& lam : inv) {
    const DualVec b = boundary_lambda(lam);
    for (int i = 0; i <= r; ++i)
      if (!LValueVector::excluded(i + 1, k, p) && b.c[static_cast<std::size_t>(i)] != 0) vanish = false;
  }
  rep.add("boundary L-values vanish at i != 0, r mod p-1", vanish);

  const FpMatrix tp = tp_boundary_matrix(r, p);
  bool tp_ok = true;
  for (const DualVec& lam : inv) {
    if (tp.apply(lam.c) != lam.c) continue;
    const DualVec b = boundary_lambda(lam);
    for (int i = 1; i < r; ++i) tp_ok = tp_ok && b.c[static_cast<std::size_t>(i)] == 0;
  }
  rep.add("T_p fixed boundary symbols have L(phi,i+1) = 0 for 0 < i < r", tp_ok);

  const CycloModule m(p, 1, RelationFlags::defaults(1));
  const auto rhos = rho_basis(m, k);
  const EigenProjector proj = eigen_projector(m, k - 1);
  bool in_component = true;
  for (int i = 0; i <= r; ++i) {
    Vec coeffs(m.generator_count(), 0);
    for (u32 x = 1; x < p; ++x)
      for (u32 y = 1; y < p; ++y) coeffs[m.generator_index(x, y)] = f.mul(f.pow(y, i), f.pow(x, r - i));
    const Vec cls = m.reduce_combination(coeffs);
    in_component = in_component && proj.matrix.apply(cls) == cls;
  }
  rep.add("L-value sums lie in the omega^(2-k) component", in_component);

  nlohmann::json tables = nlohmann::json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t t = 0; t < rhos.size(); ++t) {
    const LValueVector lv = l_values_from_rho(m, rhos[t], k);
    nlohmann::json vals = nlohmann::json::array();
    for (int i = 1; i <= k - 1; ++i) {
      vals.push_back({{"i", i}, {"L", opt_json(lv.at(i))}});
      rows.push_back({std::to_string(t), std::to_string(i), opt_str(lv.at(i)), lv.at(i) ? "0" : "1"});
    }
    tables.push_back({{"rho", rhos[t].weights}, {"values", vals}});
  }
  rep.data = {{"module_dim", m.quotient_dim()}, {"rho_count", rhos.size()}, {"l_values", tables},
              {"invariants", inv.size()}};
  if (!csv.empty()) write_csv(csv, {"rho", "i", "L", "excluded"}, rows);
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// fixtures

nlohmann::json cyclo_fixture() {
  nlohmann::json modules = nlohmann::json::array();
  for (const auto& [p, n] : kCycloLevels) {
    const CycloModule m(p, n, RelationFlags::defaults(n));
    nlohmann::json entry = {{"p", p},
                            {"n", n},
                            {"flags", m.flags().to_string()},
                            {"dim", m.quotient_dim()},
                            {"generators", m.generator_count()},
                            {"relation_rank", m.relation_rank()},
                            {"class_1_2", m.symbol_class(1, 2).coords}};
    entry["checks"] = {{"manin", check_manin_relations(symbol_table(m), m.artin_nebentype()).ok()},
                       {"theorem51", verify_theorem51(m).all_passed()}};
    std::vector<std::string> variants{"F1-F4", "F1-F5", "F1-F4,F6"};
    if (n > 1) {
      for (auto& v : variants) v += ",F7";
      variants.push_back("F1-F6");
    }
    nlohmann::json ablation = nlohmann::json::array();
    for (const std::string& v : variants) {
      const CycloModule a(p, n, RelationFlags::parse(v));
      nlohmann::json row = {{"flags", a.flags().to_string()}, {"dim", a.quotient_dim()},
                            {"class_1_2", a.symbol_class(1, 2).coords}};
      row["manin"] = check_manin_relations(symbol_table(a), a.artin_nebentype()).ok();
      for (u32 q : {2u, 3u})
        if (q != p) row["theorem51_q" + std::to_string(q)] = verify_theorem51(a, {q}).all_passed();
      ablation.push_back(row);
    }
    entry["ablation"] = ablation;
    modules.push_back(entry);
  }
  return {{"modules", modules}};
}

nlohmann::json lvalues_fixture() {
  nlohmann::json inv = nlohmann::json::array();
  for (u32 p : {5u, 7u, 11u, 13u})
    for (int r = 0; static_cast<u32>(r) < 2 * p; r += 2)
      inv.push_back({{"p", p}, {"r", r}, {"dim", gamma_infty_invariants(r, p).size()}});
  nlohmann::json thm = nlohmann::json::array();
  for (const auto& [p, k] : std::vector<std::pair<u32, int>>{{37, 32}, {5, 4}}) {
    const CycloModule m(p, 1, RelationFlags::defaults(1));
    nlohmann::json xi = nlohmann::json::array();
    for (int i = 1; i <= k - 1; ++i) xi.push_back({{"i", i}, {"class", xi_class(m, i, k).coords}});
    const CheckReport rep = theorem12_report(p, k);
    thm.push_back({{"p", p}, {"k", k}, {"xi", xi}, {"report", rep.data}, {"pass", rep.all_passed()}});
  }
  return {{"gamma_infty", inv}, {"theorem12", thm}};
}

nlohmann::json eis_fixture() {
  nlohmann::json pairs = nlohmann::json::array();
  auto add = [&](u32 p, int k, bool irregular) {
    const EisReport two = eis_eigenspace(p, k, {2});
    const EisReport both = eis_eigenspace(p, k, {2, 3});
    nlohmann::json eig = nlohmann::json::array();
    for (const auto& [q, v] : two.eigenvalues) eig.push_back({{"q", q}, {"value", opt_json(v)}});
    pairs.push_back({{"p", p},
                     {"k", k},
                     {"irregular", irregular},
                     {"dim_total", two.dim_total},
                     {"dim_boundary", two.dim_boundary},
                     {"dim_parabolic", two.dim_parabolic},
                     {"dim_plus", two.dim_plus},
                     {"dim_minus", two.dim_minus},
                     {"dim_plus_eisenstein_2", two.dim_plus_eisenstein},
                     {"dim_plus_eisenstein_23", both.dim_plus_eisenstein},
                     {"eigenvalues", eig}});
  };
  for (const auto& [p, k] : kIrregularPairs) add(p, k, true);
  for (const auto& [p, k] : kRegularPairs) add(p, k, false);
  return {{"pairs", pairs}};
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::vector<std::string> emit_fixtures(const std::string& scope, const std::filesystem::path& dir) {
  static const std::map<std::string, nlohmann::json (*)()> builders{
      {"cyclo", cyclo_fixture}, {"lvalues", lvalues_fixture}, {"eis", eis_fixture}};
  if (scope != "all" && !builders.count(scope)) throw UsageError("unknown fixture scope '" + scope + "'");
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (const auto& [name, build] : builders) {
    if (scope != "all" && scope != name) continue;
    const auto path = dir / (name + ".json");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << canonical_dump(build());
    written.push_back(path.string());
  }
  return written;
}

// ---------------------------------------------------------------------------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mod-p verification of the K2-valued Manin symbol and its L-values", "k2ms"};
  app.require_subcommand(1);

  u32 p = 0, n = 1, max_p = 0;
  int k = 0;
  std::vector<u32> qs, primes{2};
  std::string flags, csv, fixtures_dir = "tests/fixtures", scope = "all";

  auto* manin = app.add_subcommand("verify-manin", "check the Manin relations for e_n");
  manin->add_option("--p", p, "odd prime")->required();
  manin->add_option("--n", n, "level exponent")->capture_default_str();
  manin->add_option("--flags", flags, "relation families, e.g. F1-F4,F7");

  auto* hecke = app.add_subcommand("verify-hecke", "check (e_n|T_q)(x) = (q + sigma_q) e_n(x) off the axes");
  hecke->add_option("--p", p, "odd prime")->required();
  hecke->add_option("--n", n, "level exponent")->capture_default_str();
  hecke->add_option("--q", qs, "Hecke primes (default 2,3)")->delimiter(',');
  hecke->add_option("--flags", flags, "relation families");

  auto* thm = app.add_subcommand("theorem12", "L(psi,i) = rho(xi_i) and the twisted Hecke eigenvalues");
  thm->add_option("--p", p, "prime > 3")->required();
  thm->add_option("--k", k, "even weight, 2 <= k < 2p")->required();

  auto* eis = app.add_subcommand("eis-dim", "dimension of the plus Eisenstein eigenspace");
  eis->add_option("--p", p, "prime");
  eis->add_option("--k", k, "even weight");
  eis->add_option("--primes", primes, "Hecke primes, comma separated")->delimiter(',')->capture_default_str();
  eis->add_option("--max-p", max_p, "sweep every irregular pair with p below this bound");
  eis->add_option("--csv", csv, "also write a CSV table");

  auto* irr = app.add_subcommand("irregular-pairs", "list irregular pairs (p, k) with k <= p-3");
  irr->add_option("--max-p", max_p, "bound on p")->required();
  irr->add_option("--csv", csv, "also write a CSV table");

  auto* lv = app.add_subcommand("lvalues", "special L-values, boundary vanishing and invariants");
  lv->add_option("--p", p, "prime > 3")->required();
  lv->add_option("--k", k, "even weight, 2 <= k < 2p")->required();
  lv->add_option("--csv", csv, "also write a CSV table");

  auto* fix = app.add_subcommand("fixtures", "regenerate the JSON fixtures");
  fix->add_option("--scope", scope, "cyclo, lvalues, eis or all")->capture_default_str();
  fix->add_option("--fixtures", fixtures_dir, "output directory")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    CheckReport rep;
    if (*manin) {
      rep = verify_manin(p, n, flags);
    } else if (*hecke) {
      rep = verify_hecke(p, n, qs, flags);
    } else if (*thm) {
      rep = theorem12_report(p, k);
    } else if (*eis) {
      rep = eis_dim(p, k, max_p, primes, csv);
    } else if (*irr) {
      rep = irregular_pairs(max_p, csv);
    } else if (*lv) {
      rep = lvalues_cmd(p, k, csv);
    } else if (*fix) {
      rep.command = "fixtures";
      rep.params = {{"scope", scope}};
      rep.fixtures_written = emit_fixtures(scope, fixtures_dir);
      rep.add("fixtures written", !rep.fixtures_written.empty());
    }
    out << canonical_dump(rep.to_json());
    return rep.all_passed() ? 0 : 1;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace k2ms::cli
