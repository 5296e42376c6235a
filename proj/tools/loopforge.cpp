// Command-line front end: classify | construct | verify | factorize | hopf | search.
// Exit codes: 0 verified/true, 1 verified-false, 2 usage or format error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loopforge/cayley.hpp"
#include "loopforge/cocycle.hpp"
#include "loopforge/conditions.hpp"
#include "loopforge/factorization.hpp"
#include "loopforge/hopf.hpp"
#include "loopforge/inverse.hpp"
#include "loopforge/io.hpp"
#include "loopforge/presets.hpp"
#include "loopforge/products.hpp"
#include "loopforge/rational.hpp"
#include "loopforge/search.hpp"

namespace lf = loopforge;
using lf::Json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    buf << in.rdbuf();
  }
  return buf.str();
}

lf::ParsedCayley load_cayley(const std::string& path) {
  try {
    return lf::parse_cayley_text(read_input(path));
  } catch (const lf::ParseError& e) {
    throw lf::ParseError(path + ": " + e.what());
  }
}

struct LoadedLoop {
  lf::Loop loop;
  lf::Permutation j;
};

// J from the file's "J:" line when present, else the right-inverse map.
LoadedLoop load_loop(const std::string& path) {
  auto p = load_cayley(path);
  lf::Loop loop(std::move(p.table));
  lf::Permutation j = p.j ? *p.j : lf::right_inverse_permutation(loop);
  return {std::move(loop), std::move(j)};
}

lf::ParsedMatrix load_matrix(const std::string& path) {
  try {
    return lf::parse_matrix_text(read_input(path));
  } catch (const lf::ParseError& e) {
    throw lf::ParseError(path + ": " + e.what());
  }
}

lf::CocycleMap load_cocycle(const std::string& path, const lf::CayleyTable& g,
                            const lf::CayleyTable& v) {
  auto m = load_matrix(path);
  if (m.rows != g.order() || m.cols != g.order())
    throw lf::ParseError(path + ": map must be " + std::to_string(g.order()) + "x" +
                         std::to_string(g.order()));
  for (int x : m.flat)
    if (x >= v.order()) throw lf::ParseError(path + ": entry exceeds value carrier order");
  lf::CocycleMap c;
  c.g_order = g.order();
  c.v_order = v.order();
  c.phi = std::move(m.flat);
  return c;
}

lf::ActionPair load_action_pair(const std::string& phi_path, const std::string& psi_path,
                                int nr, int ns) {
  auto pm = load_matrix(phi_path);
  auto qm = load_matrix(psi_path);
  if (pm.rows != ns || pm.cols != nr)
    throw lf::ParseError(phi_path + ": phi must be |S|x|R| = " + std::to_string(ns) + "x" +
                         std::to_string(nr));
  if (qm.rows != ns || qm.cols != nr)
    throw lf::ParseError(psi_path + ": psi must be |S|x|R| = " + std::to_string(ns) + "x" +
                         std::to_string(nr));
  for (int x : pm.flat)
    if (x >= nr) throw lf::ParseError(phi_path + ": phi entry exceeds |R|");
  for (int x : qm.flat)
    if (x >= ns) throw lf::ParseError(psi_path + ": psi entry exceeds |S|");
  lf::ActionPair a;
  a.r_order = nr;
  a.s_order = ns;
  a.phi = std::move(pm.flat);
  a.psi = std::move(qm.flat);
  return a;
}

std::pair<long long, long long> parse_window(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos)
    throw UsageError("window must look like \"-3..3\", got \"" + spec + "\"");
  try {
    std::size_t used = 0;
    long long lo = std::stoll(spec.substr(0, dots), &used);
    if (used != dots) throw std::invalid_argument(spec);
    long long hi = std::stoll(spec.substr(dots + 2), &used);
    if (used != spec.size() - dots - 2) throw std::invalid_argument(spec);
    if (lo > hi) throw UsageError("window is empty: " + spec);
    return {lo, hi};
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("window must look like \"-3..3\", got \"" + spec + "\"");
  }
}

struct Options {
  std::string format = "text";
  long long budget = 0;  // 0 means unbounded; env LOOPFORGE_BUDGET is the default
  bool strict_paper_conditions = false;
  bool emit = false;
};

void print_conditions(const std::vector<lf::ConditionReport>& reports, std::ostream& out) {
  for (const auto& r : reports) {
    out << r.name << ": " << (r.ok ? "ok" : "FAIL");
    if (!r.witness.empty()) {
      out << " witness=(";
      for (std::size_t i = 0; i < r.witness.size(); ++i) out << (i ? "," : "") << r.witness[i];
      out << ")";
    }
    if (!r.note.empty()) out << " [" << r.note << "]";
    out << "\n";
  }
}

// Every verification report carries the named condition checks plus the verdict.
int report_conditions(const Options& opt, const std::vector<lf::ConditionReport>& reports,
                      bool ok, const Json& extra = Json()) {
  if (opt.format == "json") {
    Json out{{"ok", ok}, {"conditions", lf::reports_json(reports)}};
    if (extra.is_object())
      for (auto& [k, v] : extra.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    print_conditions(reports, std::cout);
    std::cout << "verified: " << (ok ? "true" : "false") << "\n";
  }
  return ok ? 0 : 1;
}

int emit_construction(const Options& opt, const std::string& name, const lf::CayleyTable& table,
                      std::optional<int> identity, const std::optional<lf::Permutation>& j,
                      const Json& manifest_extra = Json()) {
  if (opt.format == "json") {
    Json rows = Json::array();
    for (int r = 0; r < table.order(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < table.order(); ++c) row.push_back(table.at(r, c));
      rows.push_back(std::move(row));
    }
    Json out{{"name", name}, {"order", table.order()}, {"rows", rows}};
    if (identity) out["identity"] = *identity;
    if (j) {
      Json img = Json::array();
      for (int i = 0; i < j->degree(); ++i) img.push_back((*j)(i));
      out["j"] = img;
    }
    if (manifest_extra.is_object())
      for (auto& [k, v] : manifest_extra.items()) out[k] = v;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << lf::emit_cayley(table, identity, j);
  }
  return 0;
}

long long env_budget() {
  const char* raw = std::getenv("LOOPFORGE_BUDGET");
  if (!raw) return 0;
  try {
    long long v = std::stoll(raw);
    return v > 0 ? v : 0;
  } catch (const std::exception&) {
    throw UsageError("LOOPFORGE_BUDGET must be an integer");
  }
}

int dim_cap(const Options& opt) {
  if (opt.budget > 0 && opt.budget < 64) return static_cast<int>(opt.budget);
  return opt.budget > 0 ? static_cast<int>(std::min<long long>(opt.budget, 4096)) : 64;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite loop and Hopf quasigroup toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--budget", opt.budget,
                 "global cap on search nodes / closure sizes / dimensions (0 = library defaults)");
  app.add_flag("--strict-paper-conditions", opt.strict_paper_conditions,
               "use the literal condition displays where a plausible corrected reading exists");

  int exit_code = 0;
  std::vector<std::function<void()>> actions;

  // ---- classify ----
  auto* classify_cmd = app.add_subcommand("classify", "inverse-property classification of a loop");
  std::string classify_path = "-";
  std::string classify_window = "-4..4";
  classify_cmd->add_option("table", classify_path, "Cayley table file, or - for stdin");
  classify_cmd->add_option("--window", classify_window, "m window lo..hi")->capture_default_str();
  classify_cmd->callback([&] {
    auto [lo, hi] = parse_window(classify_window);
    auto l = load_loop(classify_path);
    auto rep = lf::classify(l.loop.table(), l.j, lo, hi);
    if (opt.format == "json") {
      std::cout << lf::classify_json(rep).dump(2) << "\n";
    } else {
      std::cout << "order: " << rep.order << "\nh: " << rep.h << "\nvalid_m:";
      for (long long m : rep.valid_m) std::cout << " " << m;
      std::cout << "\nresidues:";
      for (int r : rep.residues) std::cout << " " << r;
      std::cout << "\nwip: " << (rep.wip ? "true" : "false")
                << "\nci: " << (rep.ci ? "true" : "false") << "\n";
    }
    exit_code = 0;
  });

  // ---- construct ----
  auto* construct_cmd = app.add_subcommand("construct", "build loops and bundles");
  construct_cmd->require_subcommand(1);

  {
    auto* c = construct_cmd->add_subcommand("preset", "emit a catalog loop");
    static std::string name;
    c->add_option("name", name, "preset name")->required();
    c->callback([&] {
      auto p = lf::find_preset(name);
      if (!p) {
        std::string all;
        for (const auto& n : lf::preset_names()) all += (all.empty() ? "" : " ") + n;
        throw UsageError("unknown preset \"" + name + "\"; available: " + all);
      }
      exit_code = emit_construction(opt, p->name, p->loop.table(), p->loop.delta(), p->j,
                                    Json{{"description", p->description}});
    });
  }
  {
    auto* c = construct_cmd->add_subcommand("direct-product", "product of two tables with J1 x J2");
    static std::string a_path, b_path;
    c->add_option("first", a_path, "first factor table")->required();
    c->add_option("second", b_path, "second factor table")->required();
    c->callback([&] {
      auto a = load_loop(a_path);
      auto b = load_loop(b_path);
      auto prod = lf::direct_product(a.loop.table(), a.j, b.loop.table(), b.j);
      Json extra{{"factors", Json::array({a_path, b_path})},
                 {"h", Json::array({prod.h1, prod.h2})}};
      if (prod.valid_m) extra["m"] = *prod.valid_m;
      auto e = prod.table.identity();
      exit_code = emit_construction(opt, "direct-product", prod.table,
                                    e ? std::optional<int>(*e) : std::nullopt, prod.j, extra);
    });
  }
  {
    auto* c = construct_cmd->add_subcommand(
        "cocycle-extension", "extension of a group by an abelian group along a value table");
    static std::string g_path, v_path, phi_path;
    c->add_option("group", g_path)->required();
    c->add_option("values", v_path)->required();
    c->add_option("map", phi_path)->required();
    c->callback([&] {
      auto g = load_cayley(g_path);
      auto v = load_cayley(v_path);
      auto phi = load_cocycle(phi_path, g.table, v.table);
      auto ext = lf::cocycle_extension(g.table, v.table, phi);
      auto e = ext.identity();
      exit_code = emit_construction(opt, "cocycle-extension", ext,
                                    e ? std::optional<int>(*e) : std::nullopt, std::nullopt,
                                    Json{{"factors", Json::array({g_path, v_path})}});
    });
  }
  {
    auto* c = construct_cmd->add_subcommand(
        "odd-loop", "odd-m-invertible extension with J(x,v) = (x^-1, -v)");
    static std::string g_path, v_path, phi_path;
    c->add_option("group", g_path)->required();
    c->add_option("values", v_path)->required();
    c->add_option("map", phi_path)->required();
    c->callback([&] {
      auto g = load_cayley(g_path);
      auto v = load_cayley(v_path);
      auto phi = load_cocycle(phi_path, g.table, v.table);
      auto built = lf::odd_invertible_loop(g.table, v.table, phi);
      exit_code = emit_construction(opt, "odd-loop", built.loop.table(), built.loop.delta(),
                                    built.j, Json{{"factors", Json::array({g_path, v_path})}});
    });
  }
  {
    auto* c = construct_cmd->add_subcommand("matched-pair",
                                            "two-action twisted product of two loops");
    static std::string r_path, s_path, phi_path, psi_path;
    static long long m = 1;
    c->add_option("r", r_path)->required();
    c->add_option("s", s_path)->required();
    c->add_option("phi", phi_path)->required();
    c->add_option("psi", psi_path)->required();
    c->add_option("--m", m, "inverse-property index")->capture_default_str();
    c->callback([&] {
      auto r = load_loop(r_path);
      auto s = load_loop(s_path);
      auto a = load_action_pair(phi_path, psi_path, r.loop.order(), s.loop.order());
      auto built = lf::matched_pair_loop(r.loop, r.j, s.loop, s.j, a, m);
      exit_code = emit_construction(
          opt, "matched-pair", built.loop.table(), built.loop.delta(), built.j,
          Json{{"factors", Json::array({r_path, s_path})},
               {"m", m},
               {"h", Json::array({built.h1, built.h2})},
               {"actions", lf::action_pair_json(a)}});
    });
  }
  {
    auto* c = construct_cmd->add_subcommand("lambda-example",
                                            "double cocycle extension over a matched pair");
    static std::string preset = "s3-z2z2";
    c->add_option("--preset", preset, "input bundle")->check(CLI::IsMember({"s3-z2z2"}));
    c->callback([&] {
      auto bundle = lf::lambda_s3_bundle(opt.strict_paper_conditions);
      exit_code = emit_construction(
          opt, "lambda-example", bundle.rs.table(), bundle.rs.delta(), bundle.j_rs,
          Json{{"m", 1},
               {"h", Json::array({2, 2})},
               {"actions", lf::action_pair_json(bundle.actions)}});
    });
  }
  {
    auto* c = construct_cmd->add_subcommand(
        "sabinin", "transassociant-indexed product of a quasigroup");
    static std::string q_path;
    c->add_option("table", q_path)->required();
    c->callback([&] {
      auto q = load_cayley(q_path);
      std::size_t cap = opt.budget > 0 ? static_cast<std::size_t>(opt.budget) : 10000;
      auto built = lf::sabinin_product(q.table, cap);
      auto e = built.table.identity();
      exit_code = emit_construction(opt, "sabinin", built.table,
                                    e ? std::optional<int>(*e) : std::nullopt, std::nullopt,
                                    Json{{"transassociant_order", static_cast<int>(built.h.elements.size())}});
    });
  }

  // ---- verify ----
  auto* verify_cmd = app.add_subcommand("verify", "check a named property, exit 0/1");
  verify_cmd->require_subcommand(1);
  {
    auto* c = verify_cmd->add_subcommand("m-inverse", "defining identity at one m");
    static std::string path = "-";
    static long long m = 1;
    c->add_option("table", path);
    c->add_option("--m", m)->capture_default_str();
    c->callback([&] {
      auto l = load_loop(path);
      auto w = lf::rst_witness(l.loop.table(), l.j, lf::RstTriple{m, m + 1, m});
      std::vector<lf::ConditionReport> reps;
      if (w)
        reps.push_back(lf::cond_fail("m-inv", {w->first, w->second},
                                     "J^m(xy) J^(m+1)(x) != J^m(y) at (x,y)"));
      else
        reps.push_back(lf::cond_ok("m-inv"));
      exit_code = report_conditions(opt, reps, !w, Json{{"m", m}});
    });
  }
  {
    auto* c = verify_cmd->add_subcommand("rst-inverse", "general (r,s,t) identity");
    static std::string path = "-";
    static long long r = 0, s = 1, t = 0;
    c->add_option("table", path);
    c->add_option("--r", r)->required();
    c->add_option("--s", s)->required();
    c->add_option("--t", t)->required();
    c->callback([&] {
      auto l = load_loop(path);
      auto w = lf::rst_witness(l.loop.table(), l.j, lf::RstTriple{r, s, t});
      std::vector<lf::ConditionReport> reps;
      if (w)
        reps.push_back(lf::cond_fail("rst-inv", {w->first, w->second}));
      else
        reps.push_back(lf::cond_ok("rst-inv"));
      exit_code = report_conditions(opt, reps, !w,
                                    Json{{"r", r}, {"s", s}, {"t", t}});
    });
  }
  {
    auto* c = verify_cmd->add_subcommand("cocycle", "2-cocycle condition");
    static std::string g_path, v_path, phi_path;
    c->add_option("group", g_path)->required();
    c->add_option("values", v_path)->required();
    c->add_option("map", phi_path)->required();
    c->callback([&] {
      auto g = load_cayley(g_path);
      auto v = load_cayley(v_path);
      auto phi = load_cocycle(phi_path, g.table, v.table);
      bool ok = lf::is_2cocycle(g.table, v.table, phi);
      std::vector<lf::ConditionReport> reps = {ok ? lf::cond_ok("cocycle-cond")
                                                  : lf::cond_fail("cocycle-cond", {})};
      exit_code = report_conditions(opt, reps, ok);
    });
  }
  {
    auto* c = verify_cmd->add_subcommand("odd-loop", "quasi-0/I/II admissibility");
    static std::string g_path, v_path, phi_path;
    c->add_option("group", g_path)->required();
    c->add_option("values", v_path)->required();
    c->add_option("map", phi_path)->required();
    c->callback([&] {
      auto g = load_cayley(g_path);
      auto v = load_cayley(v_path);
      auto phi = load_cocycle(phi_path, g.table, v.table);
      auto reps = lf::check_odd_invertible(g.table, v.table, phi);
      exit_code = report_conditions(opt, reps, lf::all_ok(reps));
    });
  }
  {
    auto* c = verify_cmd->add_subcommand("matched-pair", "mutual-action compatibility at m");
    static std::string r_path, s_path, phi_path, psi_path;
    static long long m = 1;
    c->add_option("r", r_path)->required();
    c->add_option("s", s_path)->required();
    c->add_option("phi", phi_path)->required();
    c->add_option("psi", psi_path)->required();
    c->add_option("--m", m)->capture_default_str();
    c->callback([&] {
      auto r = load_loop(r_path);
      auto s = load_loop(s_path);
      auto a = load_action_pair(phi_path, psi_path, r.loop.order(), s.loop.order());
      auto check = lf::check_matched_pair(r.loop, r.j, s.loop, s.j, a, m);
      bool ok = check.loop.has_value() && check.j.has_value();
      exit_code = report_conditions(opt, check.reports, ok,
                                    Json{{"m", m}, {"h", Json::array({check.h1, check.h2})}});
    });
  }
  {
    auto* c = verify_cmd->add_subcommand("central-pique", "abelian cloop + translation condition");
    static std::string path = "-";
    static int delta = 0;
    c->add_option("table", path);
    c->add_option("--delta", delta, "idempotent element")->capture_default_str();
    c->callback([&] {
      auto p = load_cayley(path);
      lf::Pique pique(p.table, delta);
      bool ok = lf::is_central_pique(pique);
      std::vector<lf::ConditionReport> reps = {ok ? lf::cond_ok("central-pique")
                                                  : lf::cond_fail("central-pique", {delta})};
      exit_code = report_conditions(opt, reps, ok);
    });
  }

  // ---- factorize ----
  {
    static std::string q_path;
    static std::vector<int> r_set, s_set;
    static long long m = 1;
    auto* c = app.add_subcommand("factorize",
                                 "recover matched-pair structure from two subloop element sets");
    c->add_option("table", q_path)->required();
    c->add_option("--r-set", r_set, "ambient elements of the first factor")
        ->required()
        ->delimiter(',');
    c->add_option("--s-set", s_set, "ambient elements of the second factor")
        ->required()
        ->delimiter(',');
    c->add_option("--m", m)->capture_default_str();
    c->callback([&] {
      auto l = load_loop(q_path);
      auto w = lf::exact_factorization(l.loop, l.j, r_set, s_set, m);
      if (opt.format == "json") {
        std::cout << lf::factorization_json(w).dump(2) << "\n";
      } else {
        print_conditions(w.laws, std::cout);
        std::cout << "bijective: " << (w.bijective ? "true" : "false") << "\n"
                  << "verified: " << (w.ok ? "true" : "false") << "\n";
      }
      exit_code = w.ok ? 0 : 1;
    });
  }

  // ---- hopf ----
  auto* hopf_cmd = app.add_subcommand("hopf", "linear-level structures over exact rationals");
  hopf_cmd->require_subcommand(1);
  {
    auto* c = hopf_cmd->add_subcommand("lift", "group algebra of a loop, verified at m");
    static std::string path = "-";
    static long long m = 1;
    c->add_option("table", path, "Cayley table with optional J line, or - for stdin");
    c->add_option("--m", m)->capture_default_str();
    c->callback([&] {
      auto l = load_loop(path);
      auto h = lf::group_algebra(l.loop, l.j);
      auto reps = lf::verify_hopf_quasigroup(h, m);
      Json extra{{"m", m}, {"dim", h.dim}};
      if (opt.emit) extra["hopf"] = lf::hopf_json(h);
      exit_code = report_conditions(opt, reps, lf::all_ok(reps), extra);
    });
  }
  {
    auto* c = hopf_cmd->add_subcommand("verify", "axioms + power identity on structure constants");
    static std::string path = "-";
    static long long m = 1;
    c->add_option("json", path, "structure-constant JSON, or - for stdin");
    c->add_option("--m", m)->capture_default_str();
    c->callback([&] {
      auto h = lf::hopf_from_json(Json::parse(read_input(path), nullptr, true, true));
      auto reps = lf::verify_hopf_quasigroup(h, m);
      exit_code = report_conditions(opt, reps, lf::all_ok(reps), Json{{"m", m}, {"dim", h.dim}});
    });
  }
  {
    auto* c = hopf_cmd->add_subcommand("tensor", "tensor product of two structures");
    static std::string a_path, b_path;
    c->add_option("first", a_path)->required();
    c->add_option("second", b_path)->required();
    c->callback([&] {
      auto a = lf::hopf_from_json(Json::parse(read_input(a_path), nullptr, true, true));
      auto b = lf::hopf_from_json(Json::parse(read_input(b_path), nullptr, true, true));
      auto t = lf::tensor_product(a, b, dim_cap(opt));
      std::cout << lf::hopf_json(t).dump(2) << "\n";
      exit_code = 0;
    });
  }
  {
    auto* c = hopf_cmd->add_subcommand(
        "matched-pair", "linearize set-level factors and actions, then build and verify");
    static std::string r_path, s_path, phi_path, psi_path;
    static long long m = 1;
    c->add_option("r", r_path)->required();
    c->add_option("s", s_path)->required();
    c->add_option("phi", phi_path)->required();
    c->add_option("psi", psi_path)->required();
    c->add_option("--m", m)->capture_default_str();
    c->callback([&] {
      auto r = load_loop(r_path);
      auto s = load_loop(s_path);
      auto a = load_action_pair(phi_path, psi_path, r.loop.order(), s.loop.order());
      auto check = lf::check_hopf_matched_pair(lf::group_algebra(r.loop, r.j),
                                               lf::group_algebra(s.loop, s.j),
                                               lf::linearize_actions(a), m, dim_cap(opt));
      Json extra{{"m", m}, {"h", Json::array({check.h1_order, check.h2_order})}};
      if (check.data && opt.emit) extra["hopf"] = lf::hopf_json(*check.data);
      exit_code = report_conditions(opt, check.reports, check.data.has_value(), extra);
    });
  }

  // ---- search ----
  auto* search_cmd = app.add_subcommand("search", "exhaustive desk-scale searches");
  search_cmd->require_subcommand(1);
  {
    auto* c = search_cmd->add_subcommand("loops", "normalized loops of one order");
    static int n = 4;
    static bool emit_tables = false;
    c->add_option("-n,--order", n, "loop order")->required();
    c->add_flag("--emit", emit_tables, "stream the tables instead of counting only");
    c->callback([&] {
      if (emit_tables) {
        auto loops = lf::enumerate_loops(n);
        for (const auto& q : loops) std::cout << lf::emit_cayley(q.table(), q.delta()) << "\n";
        std::cout << "loops: " << loops.size() << "\n";
      } else {
        const long long count = lf::count_loops(n);
        std::cout << "loops: " << count << "\n";
      }
      exit_code = 0;
    });
  }
  {
    auto* c = search_cmd->add_subcommand("cocycles", "value tables under named constraints");
    static std::string g_path, v_path;
    static std::vector<std::string> constraints;
    static bool emit_maps = false;
    c->add_option("group", g_path)->required();
    c->add_option("values", v_path)->required();
    c->add_option("--constraints", constraints, "subset of quasi-0, quasi-I, quasi-II")
        ->delimiter(',');
    c->add_flag("--emit", emit_maps);
    c->callback([&] {
      auto g = load_cayley(g_path);
      auto v = load_cayley(v_path);
      lf::SearchCaps caps;
      caps.budget = opt.budget;
      auto found = lf::search_cocycles(g.table, v.table, constraints, caps);
      if (emit_maps)
        for (const auto& map : found.results) {
          std::cout << map.g_order << " " << map.g_order << "\n";
          for (int x = 0; x < map.g_order; ++x) {
            for (int y = 0; y < map.g_order; ++y)
              std::cout << (y ? " " : "") << map.value(x, y);
            std::cout << "\n";
          }
          std::cout << "\n";
        }
      std::cout << "cocycles: " << found.matched << "\n";
      if (!found.complete) std::cout << "complete: false\n";
      exit_code = 0;
    });
  }
  {
    auto* c = search_cmd->add_subcommand("matched-actions",
                                         "admissible mutual action pairs at m");
    static std::string r_path, s_path;
    static long long m = 1;
    static bool emit_pairs = false;
    c->add_option("r", r_path)->required();
    c->add_option("s", s_path)->required();
    c->add_option("--m", m)->capture_default_str();
    c->add_flag("--emit", emit_pairs);
    c->callback([&] {
      auto r = load_loop(r_path);
      auto s = load_loop(s_path);
      lf::SearchCaps caps;
      caps.budget = opt.budget;
      auto found = lf::search_matched_actions(r.loop, r.j, s.loop, s.j, m, caps);
      if (emit_pairs) {
        Json arr = Json::array();
        for (const auto& a : found.results) arr.push_back(lf::action_pair_json(a));
        std::cout << arr.dump(2) << "\n";
      }
      std::cout << "matched-actions: " << found.matched << "\n";
      if (!found.complete) std::cout << "complete: false\n";
      exit_code = 0;
    });
  }

  for (auto* leaf : hopf_cmd->get_subcommands([](const CLI::App*) { return true; }))
    leaf->add_flag("--emit", opt.emit, "include full structure constants in the report");

  try {
    if (opt.budget == 0) opt.budget = env_budget();
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const lf::ParseError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const lf::ConditionViolation& e) {
    std::cerr << e.what() << "\n";
    print_conditions(e.reports(), std::cerr);
    return 1;
  } catch (const lf::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const lf::TableError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
