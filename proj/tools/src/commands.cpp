#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "algebra_file.hpp"
#include "nlie/constructions.hpp"
#include "nlie/lemmas.hpp"
#include "nlie/pipeline.hpp"
#include "nlie/poly.hpp"
#include "nlie/simplicity.hpp"
#include "nlie/structure.hpp"

namespace nlie::cli {

using nlohmann::json;

namespace {

struct Common {
  std::string format = "text";
  std::uint64_t seed = 0;
  bool timing = false;
};

// ------------------------------------------------------------ rendering

json vector_json(const Vector& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

/// "x - 2*y", "0" for the zero vector.
std::string render_vector(const Vector& v, const AlgebraFile& file) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    std::string coef = v[i].to_string();
    const bool negative = v[i].field().is_rational() && coef.front() == '-';
    if (negative) coef.erase(0, 1);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (coef != "1") os << coef << '*';
    os << file.basis_name(i);
  }
  return first ? "0" : os.str();
}

json subspace_json(const SubspaceBasis& s, const AlgebraFile& file) {
  json basis = json::array();
  json rendered = json::array();
  for (const auto& row : s.rows()) {
    basis.push_back(vector_json(row));
    rendered.push_back(render_vector(row, file));
  }
  return json{{"dim", s.dim()}, {"basis", basis}, {"rendered", rendered}};
}

std::string render_span(const json& subspace) {
  std::string out = "span{";
  bool first = true;
  for (const auto& r : subspace["rendered"]) {
    if (!first) out += ", ";
    first = false;
    out += r.get<std::string>();
  }
  return out + "}";
}

json verdict_json(const Verdict& v, const AlgebraFile& file) {
  json out{{"check", v.check}, {"pass", v.pass}, {"instances", v.instances}};
  if (v.witness) {
    json args = json::array();
    for (const auto& [label, indices] : v.witness->args) {
      json names = json::array();
      for (auto i : indices) names.push_back(file.basis_name(i));
      args.push_back(json{{"label", label}, {"indices", indices}, {"names", names}});
    }
    out["witness"] = json{{"args", args},
                          {"lhs", vector_json(v.witness->lhs)},
                          {"rhs", vector_json(v.witness->rhs)},
                          {"lhs_rendered", render_vector(v.witness->lhs, file)},
                          {"rhs_rendered", render_vector(v.witness->rhs, file)}};
  }
  return out;
}

json certificate_json(const SimplicityCertificate& c) {
  json out{{"method", c.method}, {"p", c.p}, {"d", c.d}, {"description", describe(c)}};
  if (c.method == "ExhaustiveProjective" || c.inner_method == "ExhaustiveProjective") {
    out["points_checked"] = c.points_checked;
  }
  if (!c.inner_method.empty()) out["inner_method"] = c.inner_method;
  if (c.method == "Norton" || c.inner_method == "Norton") {
    out["attempt"] = c.attempt;
    out["lambda"] = c.lambda;
    out["seed"] = c.seed;
  }
  return out;
}

json simplicity_json(const SimplicityVerdict& v, const AlgebraFile& file) {
  json out{{"verdict", to_string(v.kind)}, {"seed", v.seed}};
  if (v.certificate) out["certificate"] = certificate_json(*v.certificate);
  if (v.witness) out["witness"] = subspace_json(*v.witness, file);
  if (!v.reason.empty()) out["reason"] = v.reason;
  return out;
}

AlgebraFile anonymous(const NLieAlgebra& alg) { return from_algebra(alg); }

json header(const std::string& command, const std::string& input_digest, const Common& c) {
  return json{{"command", command}, {"input_digest", input_digest}, {"seed", c.seed}};
}

json algebra_header(const AlgebraFile& file) {
  return json{{"field", file.field.name()},
              {"dimension", file.dim},
              {"arity", file.arity},
              {"has_product", file.has_product()}};
}

// Text output ----------------------------------------------------------

void text_verdict(std::ostream& os, const json& v) {
  os << "  " << std::left << std::setw(22) << v["check"].get<std::string>() << (v["pass"].get<bool>() ? "pass" : "FAIL")
     << "  (" << v["instances"].get<std::uint64_t>() << " instances)\n";
  if (v.contains("witness")) {
    const auto& w = v["witness"];
    os << "    witness:";
    for (const auto& a : w["args"]) {
      os << ' ' << a["label"].get<std::string>() << " = (";
      bool first = true;
      for (const auto& n : a["names"]) {
        os << (first ? "" : ", ") << n.get<std::string>();
        first = false;
      }
      os << ')';
    }
    os << "\n    lhs = " << w["lhs_rendered"].get<std::string>() << "\n    rhs = " << w["rhs_rendered"].get<std::string>()
       << '\n';
  }
}

void text_simplicity(std::ostream& os, const std::string& label, const json& v) {
  os << label << ": " << v["verdict"].get<std::string>();
  if (v.contains("certificate")) {
    const auto& c = v["certificate"];
    os << ' ' << c["description"].get<std::string>();
    if (c.contains("inner_method")) os << " via " << c["inner_method"].get<std::string>();
    if (c.contains("points_checked")) os << ", " << c["points_checked"].get<std::uint64_t>() << " projective points";
  }
  os << '\n';
  if (v.contains("reason")) os << "  reason: " << v["reason"].get<std::string>() << '\n';
  if (v.contains("witness")) os << "  witness ideal: " << render_span(v["witness"]) << '\n';
}

void text_header(std::ostream& os, const json& r) {
  os << "nlie " << r["command"].get<std::string>() << "  input " << r["input_digest"].get<std::string>();
  if (r.contains("algebra")) {
    const auto& a = r["algebra"];
    os << "  field " << a["field"].get<std::string>() << "  dimension " << a["dimension"].get<std::size_t>()
       << "  arity " << a["arity"].get<std::size_t>();
  }
  os << '\n';
}

// ------------------------------------------------------------ commands

json cmd_check(const AlgebraFile& file, bool poisson, const Common& c, const std::string& dig) {
  json r = header("check", dig, c);
  r["algebra"] = algebra_header(file);
  const Guards guards = Guards::from_env();
  json checks = json::array();
  checks.push_back(verdict_json(check_generalized_jacobi(file.bracket, guards), file));
  if (poisson) {
    const auto alg = file.poisson();
    checks.push_back(verdict_json(check_assoc_comm_unital(alg.product(), alg.unit(), guards), file));
    checks.push_back(verdict_json(check_leibniz(alg, guards), file));
    checks.push_back(verdict_json(check_poisson_identity(alg, guards), file));
  }
  bool pass = true;
  for (const auto& v : checks) pass = pass && v["pass"].get<bool>();
  r["checks"] = checks;
  r["pass"] = pass;
  return r;
}

void text_check(std::ostream& os, const json& r) {
  text_header(os, r);
  for (const auto& v : r["checks"]) text_verdict(os, v);
  os << "result: " << (r["pass"].get<bool>() ? "pass" : "FAIL") << '\n';
}

json cmd_analyze(const AlgebraFile& file, const Common& c, const std::string& dig) {
  json r = header("analyze", dig, c);
  r["algebra"] = algebra_header(file);
  const auto alg = file.lie();
  const auto whole = SubspaceBasis::full(file.field, file.dim);
  const auto series = derived_series(alg, whole);
  json dims = json::array();
  for (const auto& s : series) dims.push_back(s.dim());
  const auto derived = series.size() > 1 ? series[1] : series[0];
  const auto z = center(alg);
  r["derived_series_dims"] = dims;
  r["derived"] = subspace_json(derived, file);
  r["center"] = subspace_json(z, file);
  r["derived_cap_center"] = subspace_json(intersect(derived, z), file);
  if (file.has_product()) r["nilradical"] = subspace_json(nilradical(*file.product, *file.unit), file);
  return r;
}

void text_analyze(std::ostream& os, const json& r) {
  text_header(os, r);
  os << "derived series dims: ";
  bool first = true;
  for (const auto& d : r["derived_series_dims"]) {
    os << (first ? "" : ", ") << d.get<std::size_t>();
    first = false;
  }
  os << "\ndim A^[1] = " << r["derived"]["dim"].get<std::size_t>() << '\n';
  os << "dim Z = " << r["center"]["dim"].get<std::size_t>() << "  " << render_span(r["center"]) << '\n';
  os << "dim A^[1] cap Z = " << r["derived_cap_center"]["dim"].get<std::size_t>() << '\n';
  if (r.contains("nilradical")) {
    os << "dim nilradical = " << r["nilradical"]["dim"].get<std::size_t>() << "  " << render_span(r["nilradical"])
       << '\n';
  }
}

IdealKind parse_kind(const std::string& s) {
  if (s == "nlie") return IdealKind::NLie;
  if (s == "poisson") return IdealKind::Poisson;
  return IdealKind::Associative;
}

json cmd_simple(const AlgebraFile& file, const std::string& kind_name, std::optional<std::uint32_t> mod_p,
                std::optional<std::uint64_t> max_enum, const Common& c, const std::string& dig) {
  json r = header("simple", dig, c);
  r["algebra"] = algebra_header(file);
  const IdealKind kind = parse_kind(kind_name);
  if (kind != IdealKind::NLie && !file.has_product()) throw InputError("--kind " + kind_name + " needs a product");
  SimplicityOptions opt;
  opt.seed = c.seed;
  opt.mod_p = mod_p;
  if (max_enum) opt.guards.max_projective = *max_enum;
  const SymProductTensor* product = file.product ? &*file.product : nullptr;
  const auto v = is_simple(file.bracket, product, kind, opt);
  r["kind"] = to_string(kind);
  r["simplicity"] = simplicity_json(v, file);
  r["replayed"] = replay_verdict(file.bracket, product, kind, v, opt.guards);
  return r;
}

void text_simple(std::ostream& os, const json& r) {
  text_header(os, r);
  text_simplicity(os, r["kind"].get<std::string>() + " simplicity", r["simplicity"]);
  os << "replayed: " << (r["replayed"].get<bool>() ? "yes" : "no") << '\n';
}

json cmd_theorem1(const AlgebraFile& file, const Common& c, const std::string& dig) {
  json r = header("theorem1", dig, c);
  r["algebra"] = algebra_header(file);
  const auto alg = file.poisson();
  SimplicityOptions opt;
  opt.seed = c.seed;
  const auto rep = theorem1_pipeline(alg, opt);
  json axioms = json::array();
  for (const auto& v : rep.axioms) axioms.push_back(verdict_json(v, file));
  r["axioms"] = axioms;
  r["poisson_simplicity"] = simplicity_json(rep.poisson_simplicity, file);
  r["dims"] = json{{"A", rep.dim_algebra},
                   {"A1", rep.derived.dim()},
                   {"Z", rep.center.dim()},
                   {"A1_cap_Z", rep.intersection.dim()},
                   {"quotient", rep.dim_quotient}};
  r["center"] = subspace_json(rep.center, file);
  const AlgebraFile qfile = anonymous(rep.quotient);
  r["quotient_jacobi"] = verdict_json(rep.quotient_jacobi, qfile);
  r["quotient_simplicity"] = simplicity_json(rep.quotient_simplicity, qfile);
  r["hypotheses"] = json{{"characteristic_zero", rep.characteristic_zero},
                         {"unit_present", true},
                         {"axioms_pass", rep.axioms_pass},
                         {"poisson_simple", rep.poisson_simple},
                         {"all_hold", rep.hypotheses_hold}};
  r["flags"] = rep.flags;
  return r;
}

void text_theorem1(std::ostream& os, const json& r) {
  text_header(os, r);
  os << "axioms:\n";
  for (const auto& v : r["axioms"]) text_verdict(os, v);
  text_simplicity(os, "poisson simplicity of A", r["poisson_simplicity"]);
  const auto& d = r["dims"];
  os << "dims: A = " << d["A"].get<std::size_t>() << ", A^[1] = " << d["A1"].get<std::size_t>()
     << ", Z = " << d["Z"].get<std::size_t>() << ", A^[1] cap Z = " << d["A1_cap_Z"].get<std::size_t>()
     << ", quotient = " << d["quotient"].get<std::size_t>() << '\n';
  os << "quotient A^[1]/(A^[1] cap Z):\n";
  text_verdict(os, r["quotient_jacobi"]);
  text_simplicity(os, "quotient simplicity", r["quotient_simplicity"]);
  for (const auto& f : r["flags"]) os << "flag: " << f.get<std::string>() << '\n';
}

SubspaceBasis parse_subspace(const std::string& text, const AlgebraFile& file) {
  std::vector<Vector> vectors;
  std::stringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    Vector v;
    std::stringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(' ');
      const auto e = cell.find_last_not_of(' ');
      if (b == std::string::npos) throw InputError("--subspace: empty coefficient");
      try {
        v.push_back(Scalar::parse(file.field, cell.substr(b, e - b + 1)));
      } catch (const Error& err) {
        throw InputError(std::string("--subspace: ") + err.what());
      }
    }
    if (v.size() != file.dim) {
      throw InputError("--subspace: each vector needs " + std::to_string(file.dim) + " coefficients");
    }
    vectors.push_back(std::move(v));
  }
  return SubspaceBasis::span(file.field, file.dim, vectors);
}

json probe_json(const ProbeReport& p, const AlgebraFile& file) {
  json out{{"lemma", to_string(p.lemma)},
           {"statement", p.statement},
           {"hypotheses_hold", p.hypotheses_hold},
           {"conclusion_holds", p.conclusion_holds},
           {"algebra_simplicity", to_string(p.algebra_simplicity)},
           {"outside_char0", p.outside_char0},
           {"notes", p.notes}};
  if (p.witness) out["witness"] = subspace_json(*p.witness, file);
  if (p.nilpotency_index > 0) out["nilpotency_index"] = p.nilpotency_index;
  if (!p.ad_tail.empty()) {
    json names = json::array();
    for (auto k : p.ad_tail) names.push_back(file.basis_name(k));
    out["ad_tail"] = json{{"indices", p.ad_tail}, {"names", names}};
  }
  if (p.contained_in_derived) out["contained_in_derived"] = *p.contained_in_derived;
  return out;
}

json cmd_lemmas(const AlgebraFile& file, const std::string& lemma, const std::string& subspace, const Common& c,
                const std::string& dig) {
  json r = header("lemmas", dig, c);
  r["algebra"] = algebra_header(file);
  ProbeInput input;
  input.simplicity.seed = c.seed;
  if (!subspace.empty()) input.subspace = parse_subspace(subspace, file);
  const SymProductTensor* product = file.product ? &*file.product : nullptr;
  const Vector* unit = file.unit ? &*file.unit : nullptr;

  std::vector<Lemma> which;
  if (lemma.empty()) {
    which = all_lemmas();
  } else {
    try {
      which.push_back(parse_lemma(lemma));
    } catch (const Error& e) {
      throw InputError(e.what());
    }
  }
  json probes = json::array();
  for (auto l : which) {
    const bool needs_product = l == Lemma::L1 || l == Lemma::L2 || l == Lemma::L3;
    if (needs_product && product == nullptr) {
      if (!lemma.empty()) throw InputError(to_string(l) + " needs a file with a product and a unit");
      probes.push_back(json{{"lemma", to_string(l)}, {"statement", lemma_statement(l)}, {"skipped", "no product"}});
      continue;
    }
    try {
      probes.push_back(probe_json(probe_lemma(file.bracket, product, unit, l, input), file));
    } catch (const PreconditionError& e) {
      if (!lemma.empty()) throw InputError(e.what());
      probes.push_back(json{{"lemma", to_string(l)}, {"statement", lemma_statement(l)}, {"skipped", e.what()}});
    }
  }
  r["probes"] = probes;
  return r;
}

void text_lemmas(std::ostream& os, const json& r) {
  text_header(os, r);
  for (const auto& p : r["probes"]) {
    os << p["lemma"].get<std::string>() << ": " << p["statement"].get<std::string>() << '\n';
    if (p.contains("skipped")) {
      os << "  skipped: " << p["skipped"].get<std::string>() << '\n';
      continue;
    }
    os << "  hypotheses " << (p["hypotheses_hold"].get<bool>() ? "hold" : "fail") << ", conclusion "
       << (p["conclusion_holds"].get<bool>() ? "holds" : "fails") << ", simplicity of A "
       << p["algebra_simplicity"].get<std::string>() << '\n';
    if (p.contains("ad_tail")) {
      os << "  nonzero ad(";
      bool first = true;
      for (const auto& n : p["ad_tail"]["names"]) {
        os << (first ? "" : ", ") << n.get<std::string>();
        first = false;
      }
      os << ") with ad^" << p["nilpotency_index"].get<unsigned>() << " = 0\n";
    } else if (p.contains("witness")) {
      os << "  witness: " << render_span(p["witness"]);
      if (p.contains("nilpotency_index")) os << ", nilpotent of index " << p["nilpotency_index"].get<unsigned>();
      os << '\n';
    }
    if (p["outside_char0"].get<bool>()) os << "  flag: outside characteristic-0 hypotheses\n";
    for (const auto& n : p["notes"]) os << "  note: " << n.get<std::string>() << '\n';
  }
}

struct PolyArgs {
  std::string sub;
  std::string bracket = "jac";
  std::size_t n = 2;
  std::string vars;
  unsigned degree = 2;
  std::string args;
  std::string identity = "jacobi";
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

json cmd_poly(const PolyArgs& a, const Common& c, int& exit_code) {
  json r{{"command", "poly " + a.sub}, {"seed", c.seed}, {"bracket", a.bracket}, {"n", a.n}};
  const PolyBracket bracket = a.bracket == "jac" ? PolyBracket::Jac : PolyBracket::W;
  std::size_t nvars = 0;
  try {
    nvars = bracket_vars(bracket, a.n);
  } catch (const Error& e) {
    throw InputError(e.what());
  }
  std::vector<std::string> names = a.vars.empty() ? default_variable_names(nvars) : split(a.vars, ',');
  if (names.size() != nvars) {
    throw InputError("--vars: the " + a.bracket + " bracket at n = " + std::to_string(a.n) + " uses " +
                     std::to_string(nvars) + " variables");
  }
  r["vars"] = names;
  r["input_digest"] = digest(a.sub + '\n' + a.bracket + '\n' + std::to_string(a.n) + '\n' + a.vars + '\n' +
                             std::to_string(a.degree) + '\n' + a.args + '\n' + a.identity);
  auto span_json = [&](const SubspaceBasis& s) {
    json rendered = json::array();
    for (const auto& row : s.rows()) rendered.push_back(poly_from_coordinates(nvars, a.degree, row).render(names));
    return json{{"dim", s.dim()}, {"ambient_dim", s.ambient_dim()}, {"full", s.is_full()}, {"rendered", rendered}};
  };

  if (a.sub == "eval") {
    std::vector<Poly> args;
    for (const auto& expr : split(a.args, ',')) args.push_back(parse_poly(expr, names));
    if (args.size() != a.n) throw InputError("--args: expected " + std::to_string(a.n) + " polynomials");
    r["args"] = split(a.args, ',');
    r["value"] = poly_bracket(bracket, args).render(names);
  } else if (a.sub == "verify") {
    PolyIdentity id;
    if (a.identity == "jacobi" || a.identity == "generalized_jacobi") {
      id = PolyIdentity::GeneralizedJacobi;
    } else if (a.identity == "leibniz") {
      id = PolyIdentity::Leibniz;
    } else if (a.identity == "eq2" || a.identity == "poisson") {
      id = PolyIdentity::Eq2;
    } else {
      throw InputError("--identity must be jacobi, leibniz or eq2");
    }
    const auto v = verify_identity_truncated(id, bracket, a.n, a.degree);
    r["degree"] = a.degree;
    json out{{"check", v.check}, {"pass", v.pass}, {"instances", v.instances}};
    if (v.witness) {
      json args = json::array();
      for (const auto& [label, p] : v.witness->args) args.push_back(json{{"label", label}, {"value", p.render(names)}});
      out["witness"] = json{{"args", args}, {"lhs", v.witness->lhs.render(names)}, {"rhs", v.witness->rhs.render(names)}};
    }
    r["verdict"] = out;
    exit_code = v.pass ? kExitOk : kExitCheckFailed;
  } else if (a.sub == "derived") {
    r["degree"] = a.degree;
    r["span"] = span_json(truncated_derived_span(bracket, a.n, a.degree));
  } else if (a.sub == "center") {
    r["degree"] = a.degree;
    r["span"] = span_json(truncated_center(bracket, a.n, a.degree));
  } else {
    throw InputError("poly: unknown subcommand '" + a.sub + "'");
  }
  return r;
}

void text_poly(std::ostream& os, const json& r) {
  const std::string cmd = r["command"].get<std::string>();
  if (r.contains("value")) {
    os << r["value"].get<std::string>() << '\n';
  } else if (r.contains("verdict")) {
    const auto& v = r["verdict"];
    os << v["check"].get<std::string>() << " (" << r["bracket"].get<std::string>() << ", n = " << r["n"].get<std::size_t>()
       << ", degree <= " << r["degree"].get<unsigned>() << "): " << (v["pass"].get<bool>() ? "pass" : "FAIL") << "  ("
       << v["instances"].get<std::uint64_t>() << " instances)\n";
    if (v.contains("witness")) {
      const auto& w = v["witness"];
      os << "  witness:";
      for (const auto& a : w["args"]) os << ' ' << a["label"].get<std::string>() << " = " << a["value"].get<std::string>();
      os << "\n  lhs = " << w["lhs"].get<std::string>() << "\n  rhs = " << w["rhs"].get<std::string>() << '\n';
    }
  } else {
    const auto& s = r["span"];
    os << "span{";
    bool first = true;
    for (const auto& p : s["rendered"]) {
      os << (first ? "" : ", ") << p.get<std::string>();
      first = false;
    }
    os << "}\n";
    os << "dimension " << s["dim"].get<std::size_t>() << " of " << s["ambient_dim"].get<std::size_t>()
       << " monomials of degree <= " << r["degree"].get<unsigned>() << '\n';
  }
}

json cmd_generate(const std::string& family, std::size_t n, std::optional<std::uint32_t> p, std::size_t dim,
                  const std::string& output, const Common& c, std::ostream& out, bool& wrote_stdout) {
  AlgebraFile file;
  const FieldSpec field = p ? FieldSpec::prime(*p) : FieldSpec::rationals();
  const Guards guards = Guards::from_env();
  if (family == "vector-product") {
    file = from_algebra(vector_product_algebra(n, field));
  } else if (family == "jacobian-trunc" || family == "w-trunc") {
    if (!p) throw InputError(family + " needs --p");
    file = family == "jacobian-trunc" ? from_algebra(jacobian_truncated(n, *p, guards))
                                      : from_algebra(w_truncated(n, *p, guards));
  } else if (family == "zero") {
    file = from_algebra(zero_algebra(field, dim, n));
  } else {
    throw InputError("unknown family '" + family + "'");
  }
  const std::string text = write_algebra_file(file);
  json r{{"command", "generate"}, {"family", family}, {"seed", c.seed}, {"output_digest", digest(text)}};
  r["algebra"] = algebra_header(file);
  if (output.empty()) {
    out << text;
    wrote_stdout = true;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw InputError("cannot write '" + output + "'");
    f << text;
    r["output"] = output;
  }
  return r;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact-arithmetic workbench for n-Lie and n-Lie Poisson algebras", "nlie"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", common.seed, "Seed for randomized probing");
  app.add_flag("--timing", common.timing, "Include wall-clock time in the report");

  std::string file;
  bool poisson = false;
  auto* check = app.add_subcommand("check", "Verify the n-Lie (and optionally Poisson) identities");
  check->add_option("file", file, "Algebra file")->required();
  check->add_flag("--poisson", poisson, "Also check the product, Leibniz rule and Poisson identity");

  std::string family, output;
  std::size_t gen_n = 2, gen_dim = 0;
  std::optional<std::uint32_t> gen_p;
  auto* generate = app.add_subcommand("generate", "Write an algebra file for a construction family");
  generate->add_option("family", family, "vector-product | jacobian-trunc | w-trunc | zero")
      ->required()
      ->check(CLI::IsMember({"vector-product", "jacobian-trunc", "w-trunc", "zero"}));
  generate->add_option("--n", gen_n, "Arity");
  generate->add_option("--p", gen_p, "Prime characteristic");
  generate->add_option("--dim", gen_dim, "Dimension (zero family)");
  generate->add_option("-o,--output", output, "Output path (default stdout)");

  auto* analyze = app.add_subcommand("analyze", "Derived series, center and nilradical");
  analyze->add_option("file", file, "Algebra file")->required();

  std::string kind = "nlie";
  std::optional<std::uint32_t> mod_p;
  std::optional<std::uint64_t> max_enum;
  auto* simple = app.add_subcommand("simple", "Simplicity verdict with a replayable certificate or witness");
  simple->add_option("file", file, "Algebra file")->required();
  simple->add_option("--kind", kind, "nlie | poisson | associative")
      ->check(CLI::IsMember({"nlie", "poisson", "associative"}));
  simple->add_option("--mod-p", mod_p, "Over Q, reduce modulo this prime only");
  simple->add_option("--max-enum", max_enum, "Bound on p^d for exhaustive projective enumeration");

  auto* theorem1 = app.add_subcommand("theorem1", "Quotient A^[1]/(A^[1] cap Z) of an n-Lie Poisson algebra");
  theorem1->add_option("file", file, "Algebra file with product and unit")->required();

  std::string lemma, subspace;
  auto* lemmas = app.add_subcommand("lemmas", "Probe hypotheses and conclusions of the structure lemmas");
  lemmas->add_option("file", file, "Algebra file")->required();
  lemmas->add_option("--lemma", lemma, "L1, L2, L3, L5, L6_0, L6, L7 or L8 (default all)");
  lemmas->add_option("--subspace", subspace, "Vectors 'c,c,...;c,c,...' spanning U or I");

  PolyArgs pa;
  auto* poly = app.add_subcommand("poly", "Symbolic Jac and W brackets on Q[x_1..x_k]");
  poly->add_option("sub", pa.sub, "eval | verify | derived | center")
      ->required()
      ->check(CLI::IsMember({"eval", "verify", "derived", "center"}));
  poly->add_option("--bracket", pa.bracket, "jac | w")->check(CLI::IsMember({"jac", "w"}));
  poly->add_option("--n", pa.n, "Arity");
  poly->add_option("--vars", pa.vars, "Comma-separated variable names");
  poly->add_option("--degree", pa.degree, "Degree bound");
  poly->add_option("--args", pa.args, "Comma-separated polynomials (eval)");
  poly->add_option("--identity", pa.identity, "jacobi | leibniz | eq2 (verify)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  int exit_code = kExitOk;
  bool raw_output = false;
  json report;
  try {
    if (*poly) {
      report = cmd_poly(pa, common, exit_code);
    } else if (*generate) {
      report = cmd_generate(family, gen_n, gen_p, gen_dim, output, common, out, raw_output);
    } else {
      const std::string text = slurp(file);
      const std::string dig = digest(text);
      const AlgebraFile f = parse_algebra_file(text);
      if (*check) {
        report = cmd_check(f, poisson, common, dig);
        exit_code = report["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
      } else if (*analyze) {
        report = cmd_analyze(f, common, dig);
      } else if (*simple) {
        report = cmd_simple(f, kind, mod_p, max_enum, common, dig);
      } else if (*theorem1) {
        report = cmd_theorem1(f, common, dig);
      } else if (*lemmas) {
        report = cmd_lemmas(f, lemma, subspace, common, dig);
      }
    }
  } catch (const ParseError& e) {
    err << "nlie: parse error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Error& e) {
    err << "nlie: " << e.what() << '\n';
    return kExitInputError;
  }

  if (common.timing) {
    report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  if (raw_output) return exit_code;

  if (common.format == "json") {
    out << report.dump(2) << '\n';
    return exit_code;
  }
  if (*check) {
    text_check(out, report);
  } else if (*generate) {
    out << "wrote " << report["output"].get<std::string>() << "  (" << report["output_digest"].get<std::string>()
        << ")\n";
  } else if (*analyze) {
    text_analyze(out, report);
  } else if (*simple) {
    text_simple(out, report);
  } else if (*theorem1) {
    text_theorem1(out, report);
  } else if (*lemmas) {
    text_lemmas(out, report);
  } else if (*poly) {
    text_poly(out, report);
  }
  if (common.timing) out << "time: " << report["timing_ms"].get<double>() << " ms\n";
  return exit_code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace nlie::cli
