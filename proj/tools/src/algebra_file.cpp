#include "algebra_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nlie::cli {

using nlohmann::json;

NLieAlgebra AlgebraFile::lie() const { return NLieAlgebra(bracket, basis_names); }

NLiePoissonAlgebra AlgebraFile::poisson() const {
  if (!product || !unit) throw InputError("this command needs a file with a product and a unit");
  return NLiePoissonAlgebra(*product, *unit, bracket, basis_names);
}

std::string AlgebraFile::basis_name(std::size_t i) const {
  return i < basis_names.size() ? basis_names[i] : "e" + std::to_string(i);
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

namespace {

void only_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw InputError("unknown field '" + key + "' in " + where);
    }
  }
}

const json& required(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

std::size_t as_index(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw InputError(where + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

std::size_t check_index(std::size_t i, std::size_t dim, const std::string& where) {
  if (i >= dim) throw InputError(where + ": index " + std::to_string(i) + " out of range");
  return i;
}

Scalar coefficient(FieldSpec f, const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": coefficients must be strings");
  try {
    return Scalar::parse(f, j.get<std::string>());
  } catch (const Error& e) {
    throw InputError(where + ": " + e.what());
  }
}

Vector sparse_value(FieldSpec f, std::size_t dim, const json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": value must be an object of index -> coefficient");
  Vector v = zero_vector(f, dim);
  for (const auto& [key, coef] : j.items()) {
    if (key.empty() || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        key.size() > 9) {
      throw InputError(where + ": bad index '" + key + "'");
    }
    v[check_index(std::stoul(key), dim, where)] = coefficient(f, coef, where);
  }
  return v;
}

json sparse_json(const Vector& v) {
  json out = json::object();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) out[std::to_string(i)] = v[i].to_string();
  }
  return out;
}

std::string position_message(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

FieldSpec parse_field(const json& j) {
  if (j.is_string() && j.get<std::string>() == "Q") return FieldSpec::rationals();
  if (j.is_object()) {
    only_keys(j, {"Fp"}, "field");
    const json& p = required(j, "Fp", "field");
    if (!p.is_number_integer() || p.get<std::int64_t>() < 2) throw InputError("field: Fp must be a prime");
    try {
      return FieldSpec::prime(p.get<std::uint64_t>());
    } catch (const Error& e) {
      throw InputError(std::string("field: ") + e.what());
    }
  }
  throw InputError("field must be \"Q\" or {\"Fp\": p}");
}

}  // namespace

AlgebraFile parse_algebra_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw InputError("malformed JSON at " + position_message(text, byte));
  }
  if (!doc.is_object()) throw InputError("algebra file must be a JSON object");
  only_keys(doc, {"field", "dimension", "arity", "basis_names", "product", "unit", "bracket"}, "algebra file");

  AlgebraFile out;
  out.field = parse_field(required(doc, "field", "algebra file"));
  out.dim = as_index(required(doc, "dimension", "algebra file"), "dimension");
  out.arity = as_index(required(doc, "arity", "algebra file"), "arity");
  if (out.arity < 1 || out.arity > kMaxArity) throw InputError("arity must be between 1 and 16");
  const FieldSpec f = out.field;
  const std::size_t d = out.dim;

  if (const auto it = doc.find("basis_names"); it != doc.end()) {
    if (!it->is_array() || it->size() != d) throw InputError("basis_names must list one name per basis vector");
    for (const auto& n : *it) {
      if (!n.is_string()) throw InputError("basis_names must be strings");
      out.basis_names.push_back(n.get<std::string>());
    }
  }

  const bool has_product = doc.contains("product");
  const bool has_unit = doc.contains("unit");
  if (has_product != has_unit) throw InputError("product and unit must be given together");
  if (has_product) {
    SymProductTensor product(f, d);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    const json& list = doc["product"];
    if (!list.is_array()) throw InputError("product must be a list");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = "product[" + std::to_string(k) + "]";
      const json& e = list[k];
      if (!e.is_object()) throw InputError(where + ": expected an object");
      only_keys(e, {"i", "j", "value"}, where);
      std::size_t i = check_index(as_index(required(e, "i", where), where + ".i"), d, where);
      std::size_t j = check_index(as_index(required(e, "j", where), where + ".j"), d, where);
      if (i > j) std::swap(i, j);
      if (!seen.emplace(i, j).second) throw InputError(where + ": duplicate entry");
      const Vector v = sparse_value(f, d, required(e, "value", where), where);
      if (!is_zero(v)) product.set(i, j, v);
    }
    const json& unit = doc["unit"];
    if (!unit.is_array() || unit.size() != d) throw InputError("unit must list d coefficients");
    Vector u;
    for (std::size_t i = 0; i < d; ++i) u.push_back(coefficient(f, unit[i], "unit"));
    out.product = std::move(product);
    out.unit = std::move(u);
  }

  SkewBracketTensor bracket(f, d, out.arity);
  const json& list = required(doc, "bracket", "algebra file");
  if (!list.is_array()) throw InputError("bracket must be a list");
  std::set<MultiIndex> seen;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "bracket[" + std::to_string(k) + "]";
    const json& e = list[k];
    if (!e.is_object()) throw InputError(where + ": expected an object");
    only_keys(e, {"args", "value"}, where);
    const json& args = required(e, "args", where);
    if (!args.is_array() || args.size() != out.arity) {
      throw InputError(where + ": args must list " + std::to_string(out.arity) + " indices");
    }
    MultiIndex idx;
    for (const auto& a : args) idx.push_back(check_index(as_index(a, where + ".args"), d, where));
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (idx[i - 1] >= idx[i]) throw InputError(where + ": indices not strictly increasing");
    }
    if (!seen.insert(idx).second) throw InputError(where + ": duplicate entry");
    const Vector v = sparse_value(f, d, required(e, "value", where), where);
    if (!is_zero(v)) bracket.set(idx, v);
  }
  out.bracket = std::move(bracket);

  if (out.product) {
    try {
      (void)out.poisson();
    } catch (const PreconditionError& e) {
      throw InputError(e.what());
    }
  }
  return out;
}

AlgebraFile read_algebra_file(const std::string& path) { return parse_algebra_file(slurp(path)); }

std::string write_algebra_file(const AlgebraFile& file) {
  json doc;
  if (file.field.is_rational()) {
    doc["field"] = "Q";
  } else {
    doc["field"] = json{{"Fp", file.field.characteristic()}};
  }
  doc["dimension"] = file.dim;
  doc["arity"] = file.arity;
  if (!file.basis_names.empty()) doc["basis_names"] = file.basis_names;
  if (file.product) {
    json list = json::array();
    for (const auto& [ij, value] : file.product->entries()) {
      list.push_back(json{{"i", ij.first}, {"j", ij.second}, {"value", sparse_json(value)}});
    }
    doc["product"] = std::move(list);
    json unit = json::array();
    for (const auto& s : *file.unit) unit.push_back(s.to_string());
    doc["unit"] = std::move(unit);
  }
  json list = json::array();
  file.bracket.for_each_entry([&](const MultiIndex& key, const Vector& value) {
    list.push_back(json{{"args", key}, {"value", sparse_json(value)}});
  });
  doc["bracket"] = std::move(list);
  return doc.dump(2) + "\n";
}

AlgebraFile from_algebra(const NLieAlgebra& alg) {
  AlgebraFile out;
  out.field = alg.field();
  out.dim = alg.dim();
  out.arity = alg.arity();
  out.basis_names = alg.basis_names();
  out.bracket = alg.bracket();
  return out;
}

AlgebraFile from_algebra(const NLiePoissonAlgebra& alg) {
  AlgebraFile out = from_algebra(alg.lie());
  out.product = alg.product();
  out.unit = alg.unit();
  return out;
}

}  // namespace nlie::cli
