#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "abelcs/errors.hpp"
#include "abelcs/gauss.hpp"
#include "abelcs/linalg.hpp"
#include "abelcs/reciprocity.hpp"
#include "abelcs/surgery.hpp"

namespace abelcs::cli {
namespace {

using Json = nlohmann::ordered_json;

Integer parse_integer(const std::string& token, std::string_view what) {
  static const std::regex pattern(R"([+-]?[0-9]+)");
  if (!std::regex_match(token, pattern)) throw ParseError(std::string(what) + ": not an integer: '" + token + "'");
  return Integer(token[0] == '+' ? token.substr(1) : token);
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  return read_all(f);
}

Json integer_json(const Integer& x) { return x.get_str(); }

Json integers_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(integer_json(x));
  return out;
}

std::string rational_string(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_num().get_str() + "/" + r.get_den().get_str();
}

Json rational_matrix_json(const RatMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

std::string scientific(const Real& x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.6Re", x.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string bound_string(double b) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", b);
  return buf;
}

Json complex_json(const ComplexValue& z, int decimals) {
  return Json{{"re", z.re.to_fixed(decimals)},
              {"im", z.im.to_fixed(decimals)},
              {"abs", abs(z).to_fixed(decimals)},
              {"error_bound", bound_string(z.error_bound)}};
}

Json sum_json(const CyclotomicSum& s) {
  Json phases = Json::array();
  for (const auto& [phase, mult] : s.terms()) phases.push_back(Json{{"phase", phase.to_string()}, {"multiplicity", mult}});
  return Json{{"term_count", s.term_count()}, {"distinct_phases", s.terms().size()}, {"phases", std::move(phases)}};
}

Json homology_json(const HomologySummary& h) {
  return Json{{"b1", h.b1},
              {"invariant_factors", integers_json(h.torsion.factors)},
              {"torsion_order", integer_json(h.torsion.order())},
              {"H0", h.h0.to_string()},
              {"H1", h.h1.to_string()},
              {"H2", h.h2.to_string()},
              {"H3", h.h3.to_string()}};
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool is_flat_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!is_scalar(e) && !is_flat_array(e)) return false;
  return true;
}

std::string flat_text(const Json& j) {
  if (is_scalar(j)) return scalar_text(j);
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + flat_text(j[i]);
  return s + "]";
}

void render_text(const Json& j, std::ostream& out, int indent) {
  const std::string pad(indent, ' ');
  for (const auto& [key, value] : j.items()) {
    if (is_scalar(value) || is_flat_array(value)) {
      out << pad << key << ": " << flat_text(value) << '\n';
    } else if (value.is_object()) {
      out << pad << key << ":\n";
      render_text(value, out, indent + 2);
    } else {
      out << pad << key << ":\n";
      for (const auto& e : value) {
        out << pad << "  -";
        for (const auto& [k, v] : e.items()) out << ' ' << k << '=' << flat_text(v);
        out << '\n';
      }
    }
  }
}

void emit(const Json& doc, bool json, std::ostream& out) {
  if (json)
    out << doc.dump(2) << '\n';
  else
    render_text(doc, out, 0);
}

std::uint64_t default_budget() {
  const char* env = std::getenv(kBudgetEnv);
  if (!env || !*env) return kDefaultTermBudget;
  const Integer b = parse_integer(env, kBudgetEnv);
  if (b < 1 || !b.fits_ulong_p()) throw ParseError(std::string(kBudgetEnv) + ": out of range");
  return b.get_ui();
}

struct Globals {
  int precision = 128;
  std::uint64_t budget = kDefaultTermBudget;
  bool json = false;
};

std::string move_line(const KirbyMove& m) {
  std::ostringstream s;
  s << "kirby --move ";
  switch (m.kind) {
    case KirbyMove::Kind::add: s << "1 --args " << m.sign; break;
    case KirbyMove::Kind::remove: s << "1inv --args " << m.index + 1; break;
    case KirbyMove::Kind::slide: s << "2 --args " << m.i0 + 1 << ' ' << m.j0 + 1 << ' ' << m.sign; break;
  }
  return s.str();
}

std::size_t component_index(const std::string& token) {
  const Integer i = parse_integer(token, "component index");
  if (i < 1 || !i.fits_ulong_p()) throw PreconditionError("component index must be ≥ 1, got " + token);
  return i.get_ui() - 1;
}

int parse_sign(const std::string& token) {
  const Integer s = parse_integer(token, "sign");
  if (s != 1 && s != -1) throw PreconditionError("sign must be ±1, got " + token);
  return static_cast<int>(s.get_si());
}

KirbyMove parse_move(const std::string& kind, const std::vector<std::string>& args) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw ParseError("--move " + kind + " takes " + std::to_string(n) + " argument(s), got " +
                       std::to_string(args.size()));
  };
  if (kind == "1") {
    need(1);
    return KirbyMove::add(parse_sign(args[0]));
  }
  if (kind == "1inv") {
    need(1);
    return KirbyMove::remove(component_index(args[0]));
  }
  if (kind == "2") {
    need(3);
    return KirbyMove::slide(component_index(args[0]), component_index(args[1]), parse_sign(args[2]));
  }
  throw ParseError("--move must be 1, 1inv or 2, got '" + kind + "'");
}

}  // namespace

IntMatrix parse_matrix_file(std::string_view text) {
  std::vector<std::string> tokens;
  for (const auto& line : split(text, '\n')) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    for (std::string tok; ls >> tok;) tokens.push_back(tok);
  }
  if (tokens.size() < 2) throw ParseError("matrix file: missing 'n m' header");
  const Integer n = parse_integer(tokens[0], "matrix file header");
  const Integer m = parse_integer(tokens[1], "matrix file header");
  if (n < 0 || m < 0 || n > 4096 || m > 4096) throw ParseError("matrix file: bad dimensions");
  const std::size_t rows = n.get_ui(), cols = m.get_ui();
  if (tokens.size() != 2 + rows * cols)
    throw ParseError("matrix file: expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(tokens.size() - 2));
  IntMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = parse_integer(tokens[2 + i * cols + j], "matrix entry");
  return out;
}

std::string format_matrix_file(const IntMatrix& m) {
  std::ostringstream s;
  s << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s << (j ? " " : "") << m(i, j);
    s << '\n';
  }
  return s.str();
}

IntMatrix parse_inline_matrix(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("inline matrix: malformed '" + std::string(text) + "'");
  }
  if (!j.is_array()) throw ParseError("inline matrix: expected [[..],..]");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  IntMatrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("inline matrix: ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      const Json& e = j[i][k];
      if (!e.is_number_integer()) throw ParseError("inline matrix: non-integer entry " + e.dump());
      out(i, k) = e.is_number_unsigned() ? Integer(std::to_string(e.get<std::uint64_t>()))
                                         : Integer(std::to_string(e.get<std::int64_t>()));
    }
  }
  return out;
}

ManifoldPresentation parse_preset(std::string_view text) {
  const auto colon = text.find(':');
  const std::string name(text.substr(0, colon));
  std::vector<Integer> params;
  if (colon != std::string_view::npos)
    for (const auto& tok : split(text.substr(colon + 1), ',')) params.push_back(parse_integer(tok, "preset parameter"));
  const std::size_t arity = name == "unknot" ? 1 : name == "hopf" ? 2 : name == "lens" ? 2 : name == "borromean" ? 0 : 99;
  if (arity == 99) throw ParseError("unknown preset '" + name + "' (unknot:f, hopf:f1,f2, borromean, lens:p,q)");
  if (params.size() != arity)
    throw ParseError("preset '" + name + "' takes " + std::to_string(arity) + " parameter(s)");
  if (name == "lens") return ManifoldPresentation::lens(params[0], params[1]);
  return ManifoldPresentation(preset(name, params));
}

IntMatrix load_matrix(const std::string& arg, std::istream& in) {
  if (!arg.empty() && arg[0] == '[') return parse_inline_matrix(arg);
  if (arg == "-") return parse_matrix_file(read_all(in));
  return parse_matrix_file(read_file(arg));
}

ManifoldPresentation load_manifold(const std::string& arg, std::istream& in) {
  if ((!arg.empty() && arg[0] == '[') || arg == "-" || std::filesystem::exists(arg))
    return ManifoldPresentation(LinkingMatrix(load_matrix(arg, in)));
  return parse_preset(arg);
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariants of 3-manifolds from integer surgery linking matrices", "abelcs"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--precision", g.precision, "Working precision in bits")
      ->capture_default_str()
      ->check(CLI::Range(32, 1 << 16));
  auto* budget_opt = app.add_option("--budget", g.budget, "Maximum number of enumerated Gauss-sum terms")
                         ->check(CLI::PositiveNumber);
  app.add_flag("--json", g.json, "Emit a JSON ResultDocument");

  // snf
  std::string snf_file;
  auto* snf = app.add_subcommand("snf", "Smith normal form D = U·A·V with invariant factors");
  snf->add_option("file", snf_file, "Matrix file, '-' or inline [[..]]")->required();

  // homology / linking-form share the manifold argument shape.
  std::string hom_file, hom_preset;
  auto* hom = app.add_subcommand("homology", "b1, torsion and the full homology list");
  auto* hom_pos = hom->add_option("file", hom_file, "Linking matrix file, '-' or inline [[..]]");
  auto* hom_pre = hom->add_option("--preset", hom_preset, "unknot:f, hopf:f1,f2, borromean, lens:p,q");
  hom_pos->excludes(hom_pre);
  hom->require_option(1);

  std::string lf_file, lf_preset;
  auto* lf = app.add_subcommand("linking-form", "Torsion linking form on the invariant-factor generators");
  auto* lf_pos = lf->add_option("file", lf_file, "Linking matrix file, '-' or inline [[..]]");
  auto* lf_pre = lf->add_option("--preset", lf_preset, "unknot:f, hopf:f1,f2, borromean, lens:p,q");
  lf_pos->excludes(lf_pre);
  lf->require_option(1);

  std::string part_c, part_m;
  auto* part = app.add_subcommand("partition", "Exact U(1)^n Chern-Simons partition function");
  part->add_option("--coupling", part_c, "Coupling matrix C (K = C + Cᵗ)")->required();
  part->add_option("--manifold", part_m, "Linking matrix file or preset")->required();

  std::string rec_l, rec_k;
  auto* rec = app.add_subcommand("reciprocity", "Both sides of the Gauss-sum reciprocity for (L, K)");
  rec->add_option("--l", rec_l, "Linking matrix L")->required();
  rec->add_option("--k", rec_k, "Even symmetric matrix K")->required();

  std::string kb_file, kb_move;
  std::vector<std::string> kb_args;
  auto* kb = app.add_subcommand("kirby", "Apply one Kirby move (components are 1-based)");
  kb->add_option("file", kb_file, "Linking matrix file, '-' or inline [[..]]")->required();
  kb->add_option("--move", kb_move, "1 (add ±1 component), 1inv (remove component), 2 (slide i over j)")
      ->required();
  kb->add_option("--args", kb_args, "1: sign; 1inv: index; 2: i j sign")->allow_extra_args()->required();

  std::string ev_file;
  auto* ev = app.add_subcommand("evenize", "Kirby-equivalent even presentation with its move transcript");
  ev->add_option("file", ev_file, "Linking matrix file, '-' or inline [[..]]")->required();

  std::string du_l, du_k;
  auto* du = app.add_subcommand("dual", "CS-dual theory: linking matrix K and coupling from -L");
  du->add_option("--l", du_l, "Even linking matrix L")->required();
  du->add_option("--k", du_k, "Even symmetric coupling K")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    if (budget_opt->count() == 0) g.budget = default_budget();
    const mpfr_prec_t prec = g.precision;
    const int decimals = decimal_places(prec);

    if (snf->parsed()) {
      const IntMatrix a = load_matrix(snf_file, in);
      const SnfResult r = smith_normal_form(a);
      std::vector<Integer> factors;
      for (const auto& d : r.diagonal())
        if (d != 0) factors.push_back(d);
      emit(Json{{"command", "snf"},
                {"input", to_string(a)},
                {"U", to_string(r.u)},
                {"D", to_string(r.d)},
                {"V", to_string(r.v)},
                {"rank", r.rank()},
                {"invariant_factors", integers_json(factors)}},
           g.json, out);
    } else if (hom->parsed() || lf->parsed()) {
      const bool is_hom = hom->parsed();
      const std::string& file = is_hom ? hom_file : lf_file;
      const std::string& pre = is_hom ? hom_preset : lf_preset;
      const ManifoldPresentation m = pre.empty() ? load_manifold(file, in) : parse_preset(pre);
      Json doc{{"command", is_hom ? "homology" : "linking-form"},
               {"input", pre.empty() ? file : pre},
               {"linking_matrix", to_string(m.linking_matrix().matrix())}};
      if (is_hom) {
        doc["homology"] = homology_json(m.homology());
      } else {
        const LinkingForm& f = m.form();
        doc["t"] = f.t();
        doc["invariant_factors"] = integers_json(f.group.factors);
        doc["generators"] = to_string(f.generators);
        doc["Q"] = rational_matrix_json(f.q);
        doc["Q_mod_1"] = rational_matrix_json(f.reduced());
      }
      emit(doc, g.json, out);
    } else if (part->parsed()) {
      const CouplingMatrix c(load_matrix(part_c, in));
      const ManifoldPresentation m = load_manifold(part_m, in);
      const EvenSymMatrix k = coupling_to_even(c);
      const CyclotomicSum z = partition_function(c, m, g.budget);
      const ComplexValue value = eval_numeric(z, prec);
      const HomologySummary& h = m.homology();
      const Integer det_k = det_int(k.matrix());
      emit(Json{{"command", "partition"},
                {"input", Json{{"coupling", to_string(c.matrix())},
                               {"manifold", part_m},
                               {"linking_matrix", to_string(m.linking_matrix().matrix())}}},
                {"exact", sum_json(z)},
                {"value", complex_json(value, decimals)},
                {"metadata", Json{{"b1", h.b1},
                                  {"invariant_factors", integers_json(h.torsion.factors)},
                                  {"K", to_string(k.matrix())},
                                  {"det_K", integer_json(det_k)},
                                  {"det_L", integer_json(det_int(m.linking_matrix().matrix()))},
                                  {"sigma_K", signature(k.sym())},
                                  {"sigma_L", signature(m.linking_matrix().sym())},
                                  {"enumerated_terms", z.term_count()},
                                  {"precision_bits", g.precision},
                                  {"normalization_caveat", h.b1 > 0 || det_k == 0}}}},
           g.json, out);
    } else if (rec->parsed()) {
      const LinkingMatrix l(load_matrix(rec_l, in));
      const EvenSymMatrix k{SymIntMatrix(load_matrix(rec_k, in))};
      const ReciprocityReport r = reciprocity_sides(l, k, prec, g.budget);
      emit(Json{{"command", "reciprocity"},
                {"input", Json{{"L", to_string(l.matrix())}, {"K", to_string(k.matrix())}}},
                {"lhs", complex_json(r.lhs, decimals)},
                {"rhs", complex_json(r.rhs, decimals)},
                {"abs_diff", scientific(r.abs_diff)},
                {"lhs_sum", sum_json(r.lhs_sum)},
                {"rhs_sum", sum_json(r.rhs_sum)},
                {"metadata", Json{{"m", r.m},
                                  {"n", r.n},
                                  {"rank_L", r.r},
                                  {"rank_K", r.s},
                                  {"det_L0", integer_json(r.det_l0)},
                                  {"det_K0", integer_json(r.det_k0)},
                                  {"sigma_L", r.sigma_l},
                                  {"sigma_K", r.sigma_k},
                                  {"L_odd", r.l_odd},
                                  {"precision_bits", g.precision}}}},
           g.json, out);
    } else if (kb->parsed()) {
      const LinkingMatrix l(load_matrix(kb_file, in));
      const LinkingMatrix result = apply(l, parse_move(kb_move, kb_args));
      if (g.json)
        emit(Json{{"command", "kirby"}, {"input", to_string(l.matrix())}, {"result", to_string(result.matrix())}},
             true, out);
      else
        out << format_matrix_file(result.matrix());
    } else if (ev->parsed()) {
      const LinkingMatrix l(load_matrix(ev_file, in));
      const EvenizeResult r = evenize(l);
      if (g.json) {
        Json moves = Json::array();
        for (const auto& m : r.transcript) moves.push_back(move_line(m));
        emit(Json{{"command", "evenize"},
                  {"input", to_string(l.matrix())},
                  {"result", to_string(r.result.matrix())},
                  {"transcript", std::move(moves)}},
             true, out);
      } else {
        out << "# evenize: " << r.transcript.size() << " move(s)\n";
        for (const auto& m : r.transcript) out << "# " << move_line(m) << '\n';
        out << format_matrix_file(r.result.matrix());
      }
    } else if (du->parsed()) {
      const LinkingMatrix l(load_matrix(du_l, in));
      const EvenSymMatrix k{SymIntMatrix(load_matrix(du_k, in))};
      const DualTheory d = cs_dual(l, k);
      if (g.json) {
        emit(Json{{"command", "dual"},
                  {"input", Json{{"L", to_string(l.matrix())}, {"K", to_string(k.matrix())}}},
                  {"dual_linking_matrix", to_string(d.l_dual.matrix())},
                  {"dual_coupling_matrix", to_string(d.c_dual.matrix())}},
             true, out);
      } else {
        out << "# dual linking matrix\n" << format_matrix_file(d.l_dual.matrix());
        out << "# dual coupling matrix\n" << format_matrix_file(d.c_dual.matrix());
      }
    }
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace abelcs::cli
