#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "voa/error.hpp"
#include "voa/presentations.hpp"
#include "voa/realisation.hpp"
#include "voa/repr.hpp"
#include "voa/transform.hpp"

namespace voa {

namespace {

using json = nlohmann::ordered_json;

struct Usage : Error {
  using Error::Error;
};

struct LevelSpec {
  enum class Kind { symbolic, rational, critical } kind = Kind::symbolic;
  Rational value;

  RatFunc k() const {
    switch (kind) {
      case Kind::symbolic:
        return RatFunc::var(Var::k);
      case Kind::critical:
        return RatFunc(-3);
      default:
        return RatFunc(value);
    }
  }
  std::string name() const {
    switch (kind) {
      case Kind::symbolic:
        return "k";
      case Kind::critical:
        return "critical";
      default:
        return to_string(value);
    }
  }
};

Rational rational_arg(const std::string& text, const std::string& what) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw Usage("malformed rational for " + what + ": '" + text + "'");
  }
}

LevelSpec parse_level(const std::string& text) {
  LevelSpec s;
  if (text == "k" || text == "symbolic") return s;
  if (text == "critical") {
    s.kind = LevelSpec::Kind::critical;
    return s;
  }
  s.value = rational_arg(text, "--level");
  s.kind = s.value == -3 ? LevelSpec::Kind::critical : LevelSpec::Kind::rational;
  return s;
}

std::vector<Rational> rational_list(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(rational_arg(item, what));
  if (out.empty()) throw Usage("empty list for " + what);
  return out;
}

json with_header(const std::string& command) {
  json j;
  j["schema_version"] = kJsonSchemaVersion;
  j["command"] = command;
  return j;
}

std::string str(const RatFunc& f) { return f.to_string(); }

// Shared options.
struct Common {
  bool json_out = false;
  int threads = 0;
  int workers() const { return threads > 0 ? threads : default_threads(); }
};

json homomorphism_json(const std::vector<ProductCheck>& checks, int depth, bool& ok) {
  json arr = json::array();
  for (const auto& c : checks) {
    if (c.order + 1 > depth) continue;
    ok = ok && c.pass;
    arr.push_back({{"pair", {c.left, c.right}},
                   {"pole_order", c.order + 1},
                   {"j", c.order},
                   {"expected", c.expected},
                   {"computed", c.computed},
                   {"pass", c.pass}});
  }
  return arr;
}

void print_checks(std::ostream& out, const json& arr) {
  for (const auto& c : arr) {
    out << (c["pass"].get<bool>() ? "ok   " : "FAIL ") << c["pair"][0].get<std::string>() << "_("
        << c["j"].get<int>() << ") " << c["pair"][1].get<std::string>() << " = " << c["computed"].get<std::string>();
    if (!c["pass"].get<bool>()) out << "   expected " << c["expected"].get<std::string>();
    out << "\n";
  }
}

int cmd_verify(const Common& common, const LevelSpec& level, std::ostream& out) {
  const bool crit = level.kind == LevelSpec::Kind::critical;
  const RatFunc k = level.k();
  json report = with_header("verify");
  report["level"] = level.name();
  bool all = true;

  const Realisation r(k);
  bool hom_ok = true;
  report["homomorphism"] = homomorphism_json(verify_homomorphism(r, common.workers()), 4, hom_ok);
  all = all && hom_ok;

  json summary;
  summary["homomorphism"] = hom_ok;
  if (!crit) {
    bool cc = bp_central_charge(k) == zam_central_charge(k) + lattice_central_charge(k);
    summary["central_charge"] = cc;
    all = all && cc;

    bool flow_ok = true;
    for (int ell = -2; ell <= 2; ++ell)
      for (const auto& c : spectral_flow_compat(r, ell)) flow_ok = flow_ok && c.pass;
    summary["spectral_flow_compat"] = flow_ok;
    all = all && flow_ok;

    const Engine bp(bp_table(k));
    const std::vector<State> tests{State::vacuum(), State::monomial({{bp::Gp, -1}}), State::monomial({{bp::J, -1}}),
                                   State::monomial({{bp::Gm, -1}})};
    bool ope_ok = check_transform(bp, bp_conjugation(k), tests, -2, 2).ok();
    for (int ell = -2; ell <= 2; ++ell) ope_ok = ope_ok && check_transform(bp, bp_spectral_flow(k, ell), tests, -2, 2).ok();
    summary["flow_and_conjugation_opes"] = ope_ok;
    all = all && ope_ok;

    bool sv_ok = true;
    json sv = json::array();
    for (int n = 1; n <= 6; ++n) {
      SingularVectorResult res = singular_vector_check(bp, n);
      // singular exactly when the coefficient vanishes
      bool pass = res.proportional && res.other_modes_annihilate &&
                  res.coefficient == singular_vector_closed_form(n, k) && res.annihilated == res.coefficient.is_zero();
      sv.push_back({{"n", n},
                    {"coefficient", str(res.coefficient)},
                    {"singular", res.annihilated},
                    {"other_modes_annihilate", res.other_modes_annihilate},
                    {"pass", pass}});
      sv_ok = sv_ok && pass;
    }
    report["singular_vectors"] = sv;
    summary["singular_vectors"] = sv_ok;
    all = all && sv_ok;

    if (level.kind == LevelSpec::Kind::symbolic) {
      CommutatorReport cr = verify_commutators(-2, 2);
      summary["commutators"] = cr.ok();
      all = all && cr.ok();
    }
  }
  report["summary"] = summary;
  report["pass"] = all;

  if (common.json_out) {
    out << report.dump(2) << "\n";
  } else {
    out << "level " << level.name() << (crit ? " (critical realisation)" : "") << "\n";
    print_checks(out, report["homomorphism"]);
    for (const auto& [name, pass] : summary.items()) out << (pass.get<bool>() ? "ok   " : "FAIL ") << name << "\n";
    out << (all ? "PASS" : "FAIL") << "\n";
  }
  return all ? 0 : 1;
}

int cmd_verify_realisation(const Common& common, const LevelSpec& level, int depth, std::ostream& out) {
  const Realisation r(level.k());
  bool ok = true;
  json report = with_header("verify-realisation");
  report["level"] = level.name();
  report["depth"] = depth;
  report["checks"] = homomorphism_json(verify_homomorphism(r, common.workers()), depth, ok);
  report["pass"] = ok;
  if (common.json_out) {
    out << report.dump(2) << "\n";
  } else {
    print_checks(out, report["checks"]);
    out << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

json complex_json(const ComplexRational& z) { return z.to_string(); }

json classification_json(const Classification& c) {
  json j;
  j["status"] = to_string(c.status);
  json roots = json::array();
  for (const auto& z : c.roots_in_coset) roots.push_back(complex_json(z));
  j["roots_in_coset"] = roots;
  j["maximal_mu"] = c.maximal_mu ? complex_json(*c.maximal_mu) : json(nullptr);
  if (c.top_weights)
    j["top_weights"] = {{"J0", complex_json(c.top_weights->first)}, {"L0", complex_json(c.top_weights->second)}};
  else
    j["top_weights"] = nullptr;
  json rr = json::array();
  for (const auto& x : c.rational_roots) rr.push_back(to_string(x));
  j["rational_roots"] = rr;
  j["cauchy_bound"] = to_string(c.cauchy_bound);
  j["window"] = {c.n_min, c.n_max};
  j["highest_weight_vectors"] = c.has_highest_weight_vectors;
  return j;
}

void print_classification(std::ostream& out, const json& j) {
  out << "status: " << j["status"].get<std::string>() << "\n";
  out << "roots in coset:";
  for (const auto& z : j["roots_in_coset"]) out << " " << z.get<std::string>();
  out << "\nrational roots of the cubic:";
  for (const auto& z : j["rational_roots"]) out << " " << z.get<std::string>();
  out << "\n";
  if (!j["maximal_mu"].is_null()) {
    out << "maximal mu: " << j["maximal_mu"].get<std::string>() << "\n";
  }
  if (j.contains("top_weights") && !j["top_weights"].is_null()) {
    out << "top weights: J0 = " << j["top_weights"]["J0"].get<std::string>()
        << ", L0 = " << j["top_weights"]["L0"].get<std::string>() << "\n";
  }
  out << "search window: n in [" << j["window"][0] << ", " << j["window"][1] << "], Cauchy bound "
      << j["cauchy_bound"].get<std::string>() << "\n";
  if (j.contains("simple_embedding_exists"))
    out << "simple embedding exists: " << (j["simple_embedding_exists"].get<bool>() ? "yes" : "no") << "\n";
  if (j.contains("notes"))
    for (const auto& n : j["notes"]) out << "note: " << n.get<std::string>() << "\n";
}

struct ClassifyArgs {
  std::string level, delta = "0", w = "0", lambda = "0", lambda_im = "0", watts;
};

int cmd_classify(const Common& common, const ClassifyArgs& a, std::ostream& out) {
  Rational k, delta, w;
  json notes = json::array();
  if (!a.watts.empty()) {
    auto p = rational_list(a.watts, "--watts");
    if (p.size() != 5) throw Usage("--watts expects r,r',s,s',t");
    WattsParams wp{p[0], p[1], p[2], p[3], p[4]};
    if (p[4] == 0) throw Usage("--watts: t must be non-zero");
    HwData hw = wp.hw();
    k = p[4] - 3;
    delta = *hw.delta.constant_value();
    w = *hw.w.constant_value();
    if (!a.level.empty() && rational_arg(a.level, "--level") != k) throw Usage("--level disagrees with t - 3");
    notes.push_back("unverified annotation: for integral s = s' = 1 the spectrally flowed conjugate highest-weight "
                    "submodules are expected to have top spaces of dimensions r', r and 3t-r-r'");
  } else {
    if (a.level.empty()) throw Usage("classify needs --level or --watts");
    k = rational_arg(a.level, "--level");
    delta = rational_arg(a.delta, "--delta");
    w = rational_arg(a.w, "--w");
  }
  if (k == -3) throw Usage("level -3 is critical; use classify-critical");
  ComplexRational lambda{rational_arg(a.lambda, "--lambda"), rational_arg(a.lambda_im, "--lambda-im")};
  Classification c = classify(k, delta, w, lambda);
  json report = with_header("classify");
  report["level"] = to_string(k);
  report["delta"] = to_string(delta);
  report["w"] = to_string(w);
  report["lambda"] = complex_json(lambda);
  report.update(classification_json(c));
  const bool simple = simple_embedding_exists(k);
  report["simple_embedding_exists"] = simple;
  if (!simple)
    notes.push_back("2k+3 is a non-negative integer: the statement about modules of the simple quotient does not apply");
  report["notes"] = notes;
  if (common.json_out)
    out << report.dump(2) << "\n";
  else
    print_classification(out, report);
  return 0;
}

int cmd_classify_critical(const Common& common, const ClassifyArgs& a, std::ostream& out) {
  Rational delta = rational_arg(a.delta, "--delta"), w = rational_arg(a.w, "--w");
  ComplexRational lambda{rational_arg(a.lambda, "--lambda"), rational_arg(a.lambda_im, "--lambda-im")};
  Classification c = classify_critical(delta, w, lambda);
  json report = with_header("classify-critical");
  report["delta"] = to_string(delta);
  report["w"] = to_string(w);
  report["lambda"] = complex_json(lambda);
  report.update(classification_json(c));
  report.erase("top_weights");
  if (c.status == RelaxedStatus::undetermined)
    report["notes"] = {"g has a root in the coset; the criterion does not decide irreducibility"};
  if (common.json_out)
    out << report.dump(2) << "\n";
  else
    print_classification(out, report);
  return 0;
}

OpeTable table_for(const std::string& algebra, const LevelSpec& level) {
  if (algebra == "bp") return bp_table(level.k());
  if (algebra == "bp-critical") return bp_critical_table();
  if (algebra == "zam") {
    if (level.kind == LevelSpec::Kind::critical) throw Usage("the Zamolodchikov table is singular at k = -3");
    return zam_table(level.k());
  }
  if (algebra == "center") return center_table();
  throw Usage("unknown algebra '" + algebra + "' (bp, zam, bp-critical, center)");
}

int cmd_ope(const Common& common, const std::string& algebra, const LevelSpec& level, const std::string& a_name,
            const std::string& b_name, std::ostream& out) {
  const Engine e(table_for(algebra, level));
  const OpeTable& t = e.table();
  const int a = t.find(a_name), b = t.find(b_name);
  if (a < 0) throw Usage("unknown generator " + a_name);
  if (b < 0) throw Usage("unknown generator " + b_name);
  json report = with_header("ope");
  report["algebra"] = t.name();
  report["pair"] = {a_name, b_name};
  json terms = json::array();
  for (int j = e.pole_bound(a, b); j >= 0; --j) {
    State s = e.product(a, j, b);
    if (s.is_zero()) continue;
    terms.push_back({{"j", j},
                     {"pole_order", j + 1},
                     {"shifted_mode", shifted_index(t.generator(a), j)},
                     {"state", t.render(s)}});
  }
  report["terms"] = terms;
  report["regular"] = terms.empty();
  if (common.json_out) {
    out << report.dump(2) << "\n";
  } else if (terms.empty()) {
    out << a_name << "(z) " << b_name << "(w) ~ 0\n";
  } else {
    for (const auto& x : terms)
      out << a_name << "_(" << x["j"] << ")" << b_name << " = " << a_name << "_{" << x["shifted_mode"] << "}" << b_name
          << " = " << x["state"].get<std::string>() << "    (pole order " << x["pole_order"] << ")\n";
  }
  return 0;
}

int cmd_character(const Common& common, const LevelSpec& level, const std::string& lambda_text, int order,
                  const std::string& chm, const std::string& chm_offset, std::ostream& out) {
  if (level.kind == LevelSpec::Kind::critical) throw Usage("character needs a non-critical level");
  if (order < 0) throw Usage("--order must be non-negative");
  RatFunc lambda = lambda_text == "lambda" ? RatFunc::var(Var::lambda) : RatFunc(rational_arg(lambda_text, "--lambda"));
  QSeries m = QSeries::one(order);
  if (!chm.empty()) {
    auto c = rational_list(chm, "--chm");
    m.coeffs.assign(order + 1, Rational(0));
    for (std::size_t i = 0; i < c.size() && static_cast<int>(i) <= order; ++i) m.coeffs[i] = c[i];
  }
  m.offset = rational_arg(chm_offset, "--chm-offset");
  RelaxedCharacter ch = character_relaxed(level.k(), lambda, m, order);
  json report = with_header("character");
  report["level"] = level.name();
  report["z_exp"] = str(ch.z_exp);
  report["q_offset"] = to_string(ch.series.offset);
  json coeffs = json::array();
  for (const auto& c : ch.series.coeffs) coeffs.push_back(to_string(c));
  report["coeffs"] = coeffs;
  report["delta"] = ch.delta;
  if (common.json_out) {
    out << report.dump(2) << "\n";
  } else {
    out << "z^(" << str(ch.z_exp) << ") q^(" << to_string(ch.series.offset) << ") (";
    for (std::size_t i = 0; i < ch.series.coeffs.size(); ++i)
      out << (i ? " + " : "") << to_string(ch.series.coeffs[i]) << (i ? " q^" + std::to_string(i) : "");
    out << " + ...) delta(z)\n";
  }
  return 0;
}

int cmd_injectivity(const Common& common, int max_weight, const std::string& levels, std::ostream& out) {
  if (max_weight < 0) throw Usage("--max-weight must be non-negative");
  auto ks = rational_list(levels, "--levels");
  for (const auto& k : ks)
    if (k == -3) throw Usage("injectivity runs at non-critical levels");
  auto rows = verify_injectivity(max_weight, ks, common.workers());
  bool ok = true;
  json report = with_header("injectivity");
  json arr = json::array();
  for (const auto& r : rows) {
    ok = ok && r.pass();
    arr.push_back({{"level", to_string(r.level)},
                   {"weight", r.weight},
                   {"monomials", r.monomials},
                   {"rank", r.rank},
                   {"expected", r.expected},
                   {"pass", r.pass()}});
  }
  report["rows"] = arr;
  report["pass"] = ok;
  if (common.json_out) {
    out << report.dump(2) << "\n";
  } else {
    for (const auto& r : rows)
      out << (r.pass() ? "ok   " : "FAIL ") << "k = " << to_string(r.level) << ", weight " << r.weight << ": rank "
          << r.rank << " of " << r.monomials << " (expected " << r.expected << ")\n";
    out << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks for the Bershadsky-Polyakov realisation and its relaxed modules", "voa"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json_out, "machine-readable output");
  app.add_option("--threads", common.threads, "worker threads (default: VOA_THREADS or all cores)");

  std::string level_text = "k";
  int depth = 4;

  auto* verify = app.add_subcommand("verify", "homomorphism, central charge, flow and singular-vector checks");
  verify->add_option("--level", level_text, "k | <rational> | critical");

  auto* vr = app.add_subcommand("verify-realisation", "products of generator images against the BP table");
  vr->add_option("--level", level_text, "k | <rational> | critical");
  vr->add_option("--depth", depth, "largest pole order reported");

  ClassifyArgs ca;
  auto* cl = app.add_subcommand("classify", "irreducibility of M (x) Pi_{-1}(lambda) from the top space");
  cl->add_option("--level", ca.level, "rational level");
  cl->add_option("--delta", ca.delta, "T_0 eigenvalue");
  cl->add_option("--w", ca.w, "W_0 eigenvalue");
  cl->add_option("--lambda", ca.lambda, "real part of lambda");
  cl->add_option("--lambda-im", ca.lambda_im, "imaginary part of lambda");
  cl->add_option("--watts", ca.watts, "r,r',s,s',t");

  auto* cc = app.add_subcommand("classify-critical", "the same at k = -3");
  cc->add_option("--delta", ca.delta, "S2 eigenvalue");
  cc->add_option("--w", ca.w, "S3 eigenvalue");
  cc->add_option("--lambda", ca.lambda, "real part of lambda");
  cc->add_option("--lambda-im", ca.lambda_im, "imaginary part of lambda");

  std::string algebra = "bp", a_name, b_name;
  auto* ope = app.add_subcommand("ope", "singular part of A(z)B(w)");
  ope->add_option("--algebra", algebra, "bp | zam | bp-critical | center");
  ope->add_option("--level", level_text, "k | <rational>");
  ope->add_option("A", a_name)->required();
  ope->add_option("B", b_name)->required();

  auto* table = app.add_subcommand("table", "OPE tables");
  table->require_subcommand(1);
  auto* dump = table->add_subcommand("dump", "print a table in the bundled text format");
  dump->add_option("--algebra", algebra, "bp | zam | bp-critical | center")->required();
  dump->add_option("--level", level_text, "k | <rational>");

  std::string lambda_text = "lambda", chm, chm_offset = "0";
  int order = 20;
  auto* ch = app.add_subcommand("character", "character of M (x) Pi_{-1}(lambda)");
  ch->add_option("--level", level_text, "k | <rational>");
  ch->add_option("--lambda", lambda_text, "rational, or 'lambda'");
  ch->add_option("--order", order, "q-order");
  ch->add_option("--chm", chm, "q-coefficients of ch[M], comma separated (default 1)");
  ch->add_option("--chm-offset", chm_offset, "leading q-power of ch[M]");

  int max_weight = 4;
  std::string levels = "-9/4,-5/3,1/7";
  auto* inj = app.add_subcommand("injectivity", "rank of the images of the PBW monomials");
  inj->add_option("--max-weight", max_weight, "largest weight");
  inj->add_option("--levels", levels, "comma separated rational levels");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(common, parse_level(level_text), out);
    if (vr->parsed()) return cmd_verify_realisation(common, parse_level(level_text), depth, out);
    if (cl->parsed()) return cmd_classify(common, ca, out);
    if (cc->parsed()) return cmd_classify_critical(common, ca, out);
    if (ope->parsed()) return cmd_ope(common, algebra, parse_level(level_text), a_name, b_name, out);
    if (dump->parsed()) {
      out << table_for(algebra, parse_level(level_text)).dump();
      return 0;
    }
    if (ch->parsed()) return cmd_character(common, parse_level(level_text), lambda_text, order, chm, chm_offset, out);
    if (inj->parsed()) return cmd_injectivity(common, max_weight, levels, out);
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownGenerator& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CriticalLevel& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CriticalSpecialization& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace voa
