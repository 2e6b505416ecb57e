#pragma once

// Command-line front end. Each subcommand drives one library pipeline:
// classify, project-L, project-line, reconstruct, roundtrip, tower, prym,
// torelli. Reports are printed on the given stream as JSON (default) or as
// flat `path = value` text lines; identical inputs produce byte-identical
// output. Exit codes: 0 success, 1 domain failure, 2 usage or parse error.

#include <array>
#include <cstddef>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubinv/covers.hpp"
#include "cubinv/fibration.hpp"
#include "cubinv/jacobian_ring.hpp"
#include "cubinv/parse.hpp"
#include "cubinv/reconstruct.hpp"

namespace cubinv {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kCliVersion = "0.1.0";

namespace cli_detail {

// Usage mistakes CLI11 cannot see on its own: malformed --signs or --point
// strings, missing flag combinations, wrong form degrees. Exit code 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- JSON encoding of exact values ----

// Radicands adjoined bottom-up. A small rational radicand prints as a plain
// number, so Q(sqrt 2) shows as [2]; a radicand from deeper in a tower
// prints as its coordinate vector over the level below.
inline ordered_json tower_json(const TowerPtr& t) {
  std::vector<const FieldTower*> chain;
  for (const FieldTower* p = t.get(); p; p = p->base.get()) chain.push_back(p);
  ordered_json out = ordered_json::array();
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    const std::vector<Rat>& rad = (*it)->radicand;
    if (rad.size() == 1 && rad[0].get_den() == 1 &&
        rad[0].get_num().fits_slong_p()) {
      out.push_back(rad[0].get_num().get_si());
    } else if (rad.size() == 1) {
      out.push_back(rat_str(rad[0]));
    } else {
      ordered_json v = ordered_json::array();
      for (const Rat& x : rad) v.push_back(rat_str(x));
      out.push_back(v);
    }
  }
  return out;
}

inline ordered_json scalar_json(const Scalar& s) {
  if (s.is_rational()) return rat_str(s.rat_value());
  ordered_json j;
  j["tower"] = tower_json(s.tower());
  ordered_json coords = ordered_json::array();
  for (const Rat& x : s.coords()) coords.push_back(rat_str(x));
  j["coords"] = coords;
  return j;
}

// Rational polynomials print as canonical text; anything over an extension
// is spelled term by term with coordinate-vector coefficients.
inline ordered_json poly_json(const MultiPoly& p) {
  TowerPtr t = rec_detail::widest_tower(p);
  if (!t) return poly_str(p);
  ordered_json j;
  j["tower"] = tower_json(t);
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    ordered_json term;
    std::string m = monomial_str(e);
    term["monomial"] = m.empty() ? "1" : m;
    term["coeff"] = scalar_json(c.lifted(t));
    terms.push_back(term);
  }
  j["terms"] = terms;
  return j;
}

inline ordered_json point_json(const std::vector<Scalar>& pt) {
  ordered_json out = ordered_json::array();
  for (const Scalar& x : pt) out.push_back(scalar_json(x));
  return out;
}

inline ordered_json line_json(const Line& l) {
  ordered_json j;
  ordered_json span = ordered_json::array();
  for (std::size_t i = 0; i < 2; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t v = 0; v < 5; ++v)
      row.push_back(scalar_json(l.span(i, v)));
    span.push_back(row);
  }
  j["span"] = span;
  ordered_json forms = ordered_json::array();
  for (const MultiPoly& f : line_forms(l)) forms.push_back(poly_json(f));
  j["forms"] = forms;
  return j;
}

inline ordered_json poly_mat_json(const FormMat& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < m.cols(); ++k)
      row.push_back(poly_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

inline ordered_json generality_json(const GeneralityReport& r) {
  ordered_json j;
  j["disc_smooth"] = r.disc_smooth;
  j["corank2_locus_empty"] = r.corank2_locus_empty;
  j["fixed_points_distinct"] = r.fixed_points_distinct;
  j["a_nonzero"] = r.a_nonzero;
  return j;
}

inline bool generality_all(const GeneralityReport& r) {
  return r.disc_smooth && r.corank2_locus_empty && r.fixed_points_distinct &&
         r.a_nonzero;
}

inline ordered_json isogeny_json(const IsogenyReport& rep) {
  auto factor = [](const IsogenyFactor& f) {
    ordered_json out;
    out["label"] = f.label;
    out["dim"] = f.dim;
    out["polarization"] = f.polarization;
    return out;
  };
  ordered_json j;
  j["source"] = rep.source;
  j["target"] = rep.target;
  j["kernel_order"] = rep.kernel_order;
  j["invariant_factor"] = factor(rep.invariant_factor);
  j["antiinvariant_factor"] = factor(rep.antiinvariant_factor);
  if (rep.conic_rank) j["conic_rank"] = *rep.conic_rank;
  return j;
}

// ---- report envelope ----

inline ordered_json envelope(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kCliVersion;
  j["command"] = command;
  j["inputs"] = ordered_json::object();
  j["results"] = ordered_json::object();
  j["flags"] = ordered_json::object();
  j["notes"] = ordered_json::array();
  return j;
}

inline ordered_json error_envelope(const std::string& command,
                                   const std::string& code,
                                   const std::string& message) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kCliVersion;
  j["command"] = command;
  ordered_json err;
  err["code"] = code;
  err["message"] = message;
  j["error"] = err;
  return j;
}

inline bool scalars_only(const ordered_json& a) {
  for (const auto& v : a)
    if (v.is_object() || v.is_array()) return false;
  return true;
}

// Flat `path = value` lines in the same order as the JSON fields.
inline void render_text(const ordered_json& j, const std::string& prefix,
                        std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array() && !scalars_only(j)) {
    std::size_t i = 0;
    for (const auto& v : j) render_text(v, prefix + "[" + std::to_string(i++) + "]", out);
    return;
  }
  out << prefix << " = ";
  if (j.is_string())
    out << j.get<std::string>();
  else
    out << j.dump();
  out << "\n";
}

inline void emit(const ordered_json& j, const std::string& mode,
                 std::ostream& out) {
  if (mode == "text")
    render_text(j, "", out);
  else
    out << j.dump(2) << "\n";
}

// The library prefixes messages with the code name; the envelope carries
// the code separately, so strip the duplicate.
inline std::string error_message(const domain_error& e) {
  std::string msg = e.what();
  std::string prefix = std::string(errc_name(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  return msg;
}

// ---- argument decoding ----

inline std::vector<int> parse_signs(const std::string& s) {
  std::vector<int> signs;
  for (char ch : s) {
    if (ch != '0' && ch != '1')
      throw usage_error("--signs needs exactly five characters, each 0 or 1");
    signs.push_back(ch - '0');
  }
  if (signs.size() != 5)
    throw usage_error("--signs needs exactly five characters, each 0 or 1");
  return signs;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    std::size_t at = s.find(sep, start);
    if (at == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

inline Rat parse_rat_token(const std::string& tok, const char* flag) {
  PolyExpr pe;
  try {
    pe = parse_poly(tok, 1);
  } catch (const domain_error&) {
    throw usage_error(std::string(flag) + ": '" + tok +
                      "' is not a rational number");
  }
  if (!pe.variables_used.empty())
    throw usage_error(std::string(flag) + ": '" + tok +
                      "' is not a rational number");
  return pe.poly.coeff(Exp(1, 0)).rat_value();
}

inline std::vector<Scalar> parse_point(const std::string& s) {
  std::vector<std::string> parts = split(s, ',');
  if (parts.size() != 3)
    throw usage_error("--point needs three comma-separated rationals a,b,c");
  std::vector<Scalar> pt;
  for (const std::string& tok : parts)
    pt.push_back(Scalar(parse_rat_token(tok, "--point")));
  return pt;
}

// Fills flag slots from a JSON object file. Flags given on the command
// line win; unknown fields in the file are ignored. Returns the names the
// file actually supplied.
inline std::set<std::string> merge_input_file(
    CLI::App* cmd, const std::string& path,
    const std::vector<std::pair<const char*, std::string*>>& strings,
    const std::vector<std::pair<const char*, long*>>& numbers) {
  std::set<std::string> filled;
  if (path.empty()) return filled;
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open input file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception& e) {
    throw usage_error("input file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object())
    throw usage_error("input file must hold a JSON object");
  for (const auto& [name, slot] : strings) {
    if (!doc.contains(name)) continue;
    filled.insert(name);
    if (cmd->count(std::string("--") + name) > 0) continue;
    const auto& v = doc.at(name);
    if (!v.is_string())
      throw usage_error(std::string("input field '") + name +
                        "' must be a string");
    *slot = v.get<std::string>();
  }
  for (const auto& [name, slot] : numbers) {
    if (!doc.contains(name)) continue;
    filled.insert(name);
    if (cmd->count(std::string("--") + name) > 0) continue;
    const auto& v = doc.at(name);
    if (!v.is_number_integer())
      throw usage_error(std::string("input field '") + name +
                        "' must be an integer");
    *slot = v.get<long>();
  }
  return filled;
}

inline const char* kind_name(InvolutionKind k) {
  return k == InvolutionKind::NonEckardt ? "NonEckardt" : "Eckardt";
}

struct CubicInput {
  PolyExpr expr;
  std::vector<int> signs;
  CubicWithInvolution c;
};

inline CubicInput classify_input(const std::string& cubic_text,
                                 const std::string& signs_text,
                                 const char* cmd) {
  if (cubic_text.empty())
    throw usage_error(std::string(cmd) + " needs --cubic (flag or input file)");
  CubicInput in;
  in.expr = parse_poly(cubic_text, 5, true);
  in.signs = parse_signs(signs_text);
  in.c = classify_involution(in.expr.poly, in.signs);
  return in;
}

inline void require_non_eckardt(const CubicWithInvolution& c,
                                const char* cmd) {
  if (c.kind != InvolutionKind::NonEckardt)
    fail(errc::UnsupportedSignature,
         std::string(cmd) + " needs a non-Eckardt involution (two minus signs)");
}

}  // namespace cli_detail

// Runs one command line (without the program name) and prints the report
// to `out`. Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out) {
  namespace cd = cli_detail;

  CLI::App app{"exact geometry of cubic threefolds with a non-Eckardt involution"};
  app.name("cubinv");
  app.require_subcommand(1);

  std::string cubic_text, conic_text, point_text, line_text;
  std::string signs_text = "00011";
  std::string input_file;
  std::string output_mode = "json";
  bool do_search = false;
  long max_height = 5;
  long base_genus = 6;
  long genus = -1, branch = -1;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--input", input_file,
                    "JSON object file supplying any of the other flags");
    cmd->add_option("--output", output_mode, "report format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
  };
  auto add_cubic5 = [&](CLI::App* cmd) {
    cmd->add_option("--cubic", cubic_text, "invariant cubic form in x0..x4");
    cmd->add_option("--signs", signs_text,
                    "involution signs, five characters of 0/1");
  };

  CLI::App* c_classify =
      app.add_subcommand("classify", "involution normal form of a cubic threefold");
  add_cubic5(c_classify);
  add_io(c_classify);

  CLI::App* c_project =
      app.add_subcommand("project-L", "projection from the pointwise fixed line");
  add_cubic5(c_project);
  add_io(c_project);

  CLI::App* c_line =
      app.add_subcommand("project-line", "conic bundle from an invariant line");
  add_cubic5(c_line);
  c_line->add_option("--point", point_text,
                     "foot of the line: three rationals a,b,c on the plane cubic");
  c_line->add_option("--line", line_text,
                     "three linear forms in x0..x4 separated by ';'");
  c_line->add_flag("--search", do_search,
                   "search for a general invariant line over Q");
  c_line->add_option("--max-height", max_height, "height bound for --search");
  add_io(c_line);

  CLI::App* c_rebuild =
      app.add_subcommand("reconstruct", "threefold from a plane cubic and conic");
  c_rebuild->add_option("--cubic", cubic_text, "ternary cubic g in x0,x1,x2");
  c_rebuild->add_option("--conic", conic_text, "ternary quadratic q in x0,x1,x2");
  add_io(c_rebuild);

  CLI::App* c_round =
      app.add_subcommand("roundtrip", "project, rebuild, project again and compare");
  add_cubic5(c_round);
  add_io(c_round);

  CLI::App* c_tower =
      app.add_subcommand("tower", "genera of the Klein-four quotient tower");
  c_tower->add_option("--base-genus", base_genus,
                      "genus of the discriminant quotient curve");
  add_io(c_tower);

  CLI::App* c_prym =
      app.add_subcommand("prym", "Prym dimension and polarization of a double cover");
  c_prym->add_option("--genus", genus, "genus of the base curve");
  c_prym->add_option("--branch", branch, "number of branch points");
  add_io(c_prym);

  CLI::App* c_torelli =
      app.add_subcommand("torelli", "codifferential kernel of the extended period map");
  add_cubic5(c_torelli);
  add_io(c_torelli);

  std::string command;
  for (const std::string& a : args) {
    for (const char* n : {"classify", "project-L", "project-line", "reconstruct",
                          "roundtrip", "tower", "prym", "torelli"})
      if (a == n) command = a;
    if (!command.empty()) break;
  }

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cubinv");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(int(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (command.empty() ? app.help()
                              : app.get_subcommand(command)->help());
      return 0;
    }
    cd::emit(cd::error_envelope(command, "Usage", e.what()), output_mode, out);
    return 2;
  }

  try {
    if (app.got_subcommand(c_classify)) {
      cd::merge_input_file(c_classify, input_file,
                           {{"cubic", &cubic_text}, {"signs", &signs_text}}, {});
      cd::CubicInput in = cd::classify_input(cubic_text, signs_text, "classify");
      ordered_json rep = cd::envelope("classify");
      rep["inputs"]["cubic"] = in.expr.source;
      rep["inputs"]["signs"] = signs_text;
      ordered_json& res = rep["results"];
      res["kind"] = cd::kind_name(in.c.kind);
      res["signs_flipped"] = in.c.sig.flipped;
      res["even_positions"] = in.c.even_positions;
      res["odd_positions"] = in.c.odd_positions;
      if (in.c.ne) {
        res["g"] = cd::poly_json(in.c.ne->g);
        res["l1"] = cd::poly_json(in.c.ne->l1);
        res["l2"] = cd::poly_json(in.c.ne->l2);
        res["l3"] = cd::poly_json(in.c.ne->l3);
        res["q0"] = cd::poly_json(in.c.ne->q0);
        res["q1"] = cd::poly_json(in.c.ne->q1);
        res["q2"] = cd::poly_json(in.c.ne->q2);
      }
      rep["flags"]["smoothness"] = is_smooth_cubic_threefold(in.expr.poly);
      rep["notes"].push_back("all fields recomputed from the input");
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_project)) {
      cd::merge_input_file(c_project, input_file,
                           {{"cubic", &cubic_text}, {"signs", &signs_text}}, {});
      cd::CubicInput in = cd::classify_input(cubic_text, signs_text, "project-L");
      cd::require_non_eckardt(in.c, "project-L");
      FixedLineFibration fib = project_from_fixed_line(in.c);
      ordered_json rep = cd::envelope("project-L");
      rep["inputs"]["cubic"] = in.expr.source;
      rep["inputs"]["signs"] = signs_text;
      ordered_json& res = rep["results"];
      res["matrix"] = cd::poly_mat_json(fib.M);
      res["disc"] = cd::poly_json(fib.disc);
      res["cubic_part"] = cd::poly_json(fib.cubic_part);
      res["conic_part"] = cd::poly_json(fib.conic_part);
      res["conic_rank"] = fib.conic_rank;
      res["branch_form"] = cd::poly_json(fib.branch_form);
      res["eliminated_var"] = fib.eliminated_var;
      res["sheared"] = fib.sheared;
      if (fib.transversal) {
        res["decomposition"] = cd::isogeny_json(fixed_line_decomposition_report(fib));
        rep["notes"].push_back("kernel_order is bookkeeping, not a computation");
      }
      rep["flags"]["transversality"] = fib.transversal;
      rep["flags"]["smoothness"] = is_smooth_cubic_threefold(in.expr.poly);
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_line)) {
      cd::merge_input_file(c_line, input_file,
                           {{"cubic", &cubic_text},
                            {"signs", &signs_text},
                            {"point", &point_text},
                            {"line", &line_text}},
                           {{"max-height", &max_height}});
      cd::CubicInput in = cd::classify_input(cubic_text, signs_text, "project-line");
      cd::require_non_eckardt(in.c, "project-line");
      int modes = int(!point_text.empty()) + int(!line_text.empty()) + int(do_search);
      if (modes != 1)
        throw cd::usage_error(
            "project-line needs exactly one of --point, --line, --search");
      ordered_json rep = cd::envelope("project-line");
      rep["inputs"]["cubic"] = in.expr.source;
      rep["inputs"]["signs"] = signs_text;
      ordered_json& res = rep["results"];

      std::optional<InvariantLineFibration> fib;
      GeneralityReport report;
      if (!point_text.empty()) {
        rep["inputs"]["point"] = point_text;
        std::vector<Scalar> pt = cd::parse_point(point_text);
        InvariantLinePair pair = invariant_lines_over(in.c, pt);
        res["tangential"] = pair.tangential;
        auto pr = project_from_invariant_line(in.c, pair.l);
        fib = pr.first;
        report = pr.second;
      } else if (!line_text.empty()) {
        rep["inputs"]["line"] = line_text;
        std::vector<std::string> parts = cd::split(line_text, ';');
        if (parts.size() != 3)
          throw cd::usage_error("--line needs three linear forms separated by ';'");
        std::array<MultiPoly, 3> forms = {MultiPoly(5), MultiPoly(5), MultiPoly(5)};
        for (int i = 0; i < 3; ++i) {
          PolyExpr fe = parse_poly(parts[i], 5, true);
          if (fe.poly.is_zero() || fe.poly.total_degree() != 1)
            throw cd::usage_error("--line forms must be nonzero linear forms");
          forms[i] = fe.poly;
        }
        auto pr = project_from_invariant_line(in.c, line_from_forms(forms));
        fib = pr.first;
        report = pr.second;
      } else {
        rep["inputs"]["max_height"] = max_height;
        auto found = search_general_invariant_line(in.c, max_height);
        res["found"] = bool(found);
        if (found) {
          res["point"] = cd::point_json(found->point);
          fib = found->fib;
          report = found->report;
        }
      }
      if (fib) {
        res["base_point"] = cd::point_json(fib->base_point);
        res["line"] = cd::line_json(fib->l);
        res["partner"] = cd::line_json(fib->partner);
        res["L1"] = cd::poly_json(fib->L1);
        res["L2"] = cd::poly_json(fib->L2);
        res["A"] = cd::scalar_json(fib->A);
        res["Q1"] = cd::poly_json(fib->Q1);
        res["N"] = cd::poly_json(fib->N);
        res["G"] = cd::poly_json(fib->G);
        res["disc"] = cd::poly_json(fib->disc_l);
        res["fixed_points_form"] = cd::poly_json(fib->fixed_points_form);
        res["coplanar_pair"] = coplanar_pair_check(in.c, fib->l, fib->partner);
        res["generality"] = cd::generality_json(report);
        rep["flags"]["generality"] = cd::generality_all(report);
      }
      rep["flags"]["smoothness"] = is_smooth_cubic_threefold(in.expr.poly);
      rep["notes"].push_back("generality flags are recomputed, none are tabulated");
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_rebuild)) {
      cd::merge_input_file(c_rebuild, input_file,
                           {{"cubic", &cubic_text}, {"conic", &conic_text}}, {});
      if (cubic_text.empty() || conic_text.empty())
        throw cd::usage_error("reconstruct needs --cubic and --conic");
      PolyExpr pg = parse_poly(cubic_text, 3, true);
      PolyExpr pq = parse_poly(conic_text, 3, true);
      if (pg.poly.is_zero() || pg.poly.total_degree() != 3)
        throw cd::usage_error("--cubic must be a nonzero ternary cubic form");
      if (pq.poly.is_zero() || pq.poly.total_degree() != 2)
        throw cd::usage_error("--conic must be a nonzero ternary quadratic form");
      CubicWithInvolution c = reconstruct(pg.poly, pq.poly);
      ConicNormalForm nf = conic_normal_form(pq.poly);
      ordered_json rep = cd::envelope("reconstruct");
      rep["inputs"]["cubic"] = pg.source;
      rep["inputs"]["conic"] = pq.source;
      ordered_json& res = rep["results"];
      res["threefold"] = cd::poly_json(c.F);
      res["kind"] = cd::kind_name(c.kind);
      ordered_json cn;
      cn["l1"] = cd::poly_json(nf.l1);
      cn["l2"] = cd::poly_json(nf.l2);
      cn["l3"] = cd::poly_json(nf.l3);
      cn["scale"] = cd::scalar_json(nf.scale);
      cn["rank"] = nf.rank;
      res["conic_normal_form"] = cn;
      rep["flags"]["smoothness"] = true;
      rep["flags"]["transversality"] = true;
      rep["notes"].push_back(
          "smoothness and transversality are validated during reconstruction");
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_round)) {
      cd::merge_input_file(c_round, input_file,
                           {{"cubic", &cubic_text}, {"signs", &signs_text}}, {});
      cd::CubicInput in = cd::classify_input(cubic_text, signs_text, "roundtrip");
      cd::require_non_eckardt(in.c, "roundtrip");
      RoundTripReport r = round_trip(in.c);
      ordered_json rep = cd::envelope("roundtrip");
      rep["inputs"]["cubic"] = in.expr.source;
      rep["inputs"]["signs"] = signs_text;
      ordered_json& res = rep["results"];
      res["ok"] = r.ok;
      res["g"] = cd::poly_json(r.recovered_g);
      res["q"] = cd::poly_json(r.recovered_q);
      res["scalars"] = ordered_json::array({cd::scalar_json(r.scalar_matches.first),
                                            cd::scalar_json(r.scalar_matches.second)});
      rep["flags"]["smoothness"] = is_smooth_cubic_threefold(in.expr.poly);
      rep["notes"].push_back("both scalars equal the conic normalization factor");
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_tower)) {
      cd::merge_input_file(c_tower, input_file, {}, {{"base-genus", &base_genus}});
      if (base_genus > 1000000)
        throw cd::usage_error("--base-genus out of range");
      int top = rh_genus(double_cover(int(base_genus), 0));
      KleinTower t = klein_tower(top);
      ordered_json rep = cd::envelope("tower");
      rep["inputs"]["base_genus"] = base_genus;
      ordered_json& res = rep["results"];
      res["genera"] = ordered_json::array(
          {t.top, t.quot_tau, t.quot_tau_iota, t.quot_iota, t.bottom});
      res["top"] = t.top;
      res["quot_tau"] = t.quot_tau;
      res["quot_tau_iota"] = t.quot_tau_iota;
      res["quot_iota"] = t.quot_iota;
      res["bottom"] = t.bottom;
      ordered_json ram;
      ram["a_tau"] = t.ram.a_tau;
      ram["a_tau_iota"] = t.ram.a_tau_iota;
      ram["a_iota"] = t.ram.a_iota;
      ram["b_tau"] = t.ram.b_tau;
      ram["b_tau_iota"] = t.ram.b_tau_iota;
      ram["b_iota"] = t.ram.b_iota;
      res["ramification"] = ram;
      res["decomposition"] = cd::isogeny_json(invariant_line_decomposition_report(t));
      rep["notes"].push_back("ramification counts are bookkeeping constants");
      rep["notes"].push_back("kernel_order is bookkeeping, not a computation");
      rep["notes"].push_back("genera are recomputed from the top genus");
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_prym)) {
      std::set<std::string> filled =
          cd::merge_input_file(c_prym, input_file, {},
                               {{"genus", &genus}, {"branch", &branch}});
      if (c_prym->count("--genus") == 0 && !filled.count("genus"))
        throw cd::usage_error("prym needs --genus");
      if (c_prym->count("--branch") == 0 && !filled.count("branch"))
        throw cd::usage_error("prym needs --branch");
      if (genus > 1000000 || branch > 1000000)
        throw cd::usage_error("--genus/--branch out of range");
      PrymReport r = prym_report(double_cover(int(genus), int(branch)));
      ordered_json rep = cd::envelope("prym");
      rep["inputs"]["genus"] = genus;
      rep["inputs"]["branch"] = branch;
      ordered_json& res = rep["results"];
      res["cover_genus"] = r.cover_genus;
      res["prym_dim"] = r.prym_dim;
      res["polarization"] = r.polarization;
      res["dual_polarization"] = r.dual_polarization;
      rep["notes"].push_back("dimension and type follow from the ramification pattern");
      cd::emit(rep, output_mode, out);

    } else if (app.got_subcommand(c_torelli)) {
      cd::merge_input_file(c_torelli, input_file,
                           {{"cubic", &cubic_text}, {"signs", &signs_text}}, {});
      cd::CubicInput in = cd::classify_input(cubic_text, signs_text, "torelli");
      cd::require_non_eckardt(in.c, "torelli");
      std::pair<int, int> split = hodge_split(in.expr.poly, in.c.sig);
      TorelliReport tr = torelli_codifferential(in.c);
      ordered_json rep = cd::envelope("torelli");
      rep["inputs"]["cubic"] = in.expr.source;
      rep["inputs"]["signs"] = signs_text;
      ordered_json& res = rep["results"];
      res["hodge_split"] = ordered_json::array({split.first, split.second});
      res["sym2_dim"] = tr.sym2_dim;
      res["r2_inv_dim"] = tr.r2_inv_dim;
      res["codifferential_kernel_dim"] = tr.codifferential_kernel_dim;
      res["in_M0"] = tr.in_M0;
      res["common_zero_check"] = tr.common_zero_check;
      rep["flags"]["smoothness"] = true;
      rep["notes"].push_back("kernel dimension is computed twice and cross-checked");
      cd::emit(rep, output_mode, out);
    }
    return 0;
  } catch (const cd::usage_error& e) {
    cd::emit(cd::error_envelope(command, "Usage", e.what()), output_mode, out);
    return 2;
  } catch (const domain_error& e) {
    cd::emit(cd::error_envelope(command, errc_name(e.code()), cd::error_message(e)),
             output_mode, out);
    return is_usage_error(e.code()) ? 2 : 1;
  } catch (const std::logic_error& e) {
    cd::emit(cd::error_envelope(command, "InvalidInput", e.what()), output_mode, out);
    return 2;
  }
}

}  // namespace cubinv
