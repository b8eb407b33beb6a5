#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <map>

namespace opbar::io {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

const Json& field(const Json& doc, const char* key, const std::string& path) {
  if (!doc.is_object()) schema(path, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) schema(path, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  return v.get<int>();
}

bool as_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) schema(path, "expected true or false");
  return v.get<bool>();
}

std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) schema(path, "expected a string");
  return v.get<std::string>();
}

const Json& as_array(const Json& v, const std::string& path) {
  if (!v.is_array()) schema(path, "expected an array");
  return v;
}

int int_or(const Json& doc, const char* key, int fallback, const std::string& path) {
  auto it = doc.find(key);
  return it == doc.end() ? fallback : as_int(*it, path + "." + key);
}

Rational as_rational(const Json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) schema(path, "expected an integer or a \"p/q\" string");
  Rational q;
  try {
    q = Rational(v.get<std::string>());
  } catch (const std::invalid_argument&) {
    schema(path, "not a rational number: " + v.get<std::string>());
  }
  q.canonicalize();
  return q;
}

Json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

// Basis element given by index or by name.
std::size_t basis_index(const Json& v, const ChainComplex& c, const std::string& path) {
  if (v.is_number_integer()) {
    const long i = v.get<long>();
    if (i < 0 || static_cast<std::size_t>(i) >= c.dim()) schema(path, "index " + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(i);
  }
  const std::string name = as_string(v, path);
  for (std::size_t i = 0; i < c.dim(); ++i)
    if (c.generator(i).name == name) return i;
  schema(path, "no basis element named \"" + name + "\"");
}

std::vector<Generator> parse_basis(const Json& v, const std::string& path) {
  std::vector<Generator> out;
  for (std::size_t i = 0; i < as_array(v, path).size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const Json& g = v[i];
    if (!g.is_array() || g.size() < 2 || g.size() > 3) schema(p, "expected [name, degree] or [name, degree, weight]");
    out.push_back({as_string(g[0], p + "[0]"), as_int(g[1], p + "[1]"), g.size() == 3 ? as_int(g[2], p + "[2]") : 0});
  }
  return out;
}

// Sparse [row, column, coefficient] triples; rows and columns are indices or names.
Matrix parse_matrix(const Json& v, const ChainComplex& rows, const ChainComplex& cols, const std::string& path) {
  std::vector<std::vector<SparseVector::Entry>> columns(cols.dim());
  std::map<std::pair<std::size_t, std::size_t>, Rational> seen;
  for (std::size_t k = 0; k < as_array(v, path).size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const Json& t = v[k];
    if (!t.is_array() || t.size() != 3) schema(p, "expected [row, column, coefficient]");
    const std::size_t r = basis_index(t[0], rows, p + "[0]"), c = basis_index(t[1], cols, p + "[1]");
    seen[{c, r}] += as_rational(t[2], p + "[2]");
  }
  for (const auto& [key, q] : seen)
    if (q != 0) columns[key.first].push_back({key.second, q});
  std::vector<SparseVector> out;
  for (auto& col : columns) out.push_back(SparseVector::from_unsorted(std::move(col)));
  return Matrix::from_columns(rows.dim(), std::move(out));
}

Json matrix_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& [r, q] : m.column(c).entries()) out.push_back(Json::array({r, c, rational_json(q)}));
  return out;
}

SparseVector parse_vector(const Json& v, const ChainComplex& c, const std::string& path) {
  if (v.is_string() || v.is_number_integer()) return SparseVector::unit(basis_index(v, c, path));
  std::vector<SparseVector::Entry> e;
  for (std::size_t k = 0; k < as_array(v, path).size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (!v[k].is_array() || v[k].size() != 2) schema(p, "expected [element, coefficient]");
    e.push_back({basis_index(v[k][0], c, p + "[0]"), as_rational(v[k][1], p + "[1]")});
  }
  return SparseVector::from_unsorted(std::move(e));
}

Json vector_json(const SparseVector& v) {
  Json out = Json::array();
  for (const auto& [i, q] : v.entries()) out.push_back(Json::array({i, rational_json(q)}));
  return out;
}

// x ∘_i y tables: entries [x, y, target, coefficient].
PartialTables parse_compositions(const Json& v, const SymSeq& left, const SymSeq& right, const std::string& path) {
  PartialTables out;
  for (std::size_t k = 0; k < as_array(v, path).size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const Json& t = v[k];
    const int m = as_int(field(t, "m", p), p + ".m"), n = as_int(field(t, "n", p), p + ".n"), i = as_int(field(t, "i", p), p + ".i");
    if (m < 1 || m > left.max_arity() || n < 0 || n > right.max_arity() || i < 0 || i >= m || m + n - 1 > left.max_arity())
      schema(p, "composition (m, n, i) = (" + std::to_string(m) + ", " + std::to_string(n) + ", " + std::to_string(i) + ") out of range");
    const ChainComplex &x = left[m], &y = right[n], &z = left[m + n - 1];
    Matrix mat(z.dim(), x.dim() * y.dim());
    std::vector<std::map<std::size_t, Rational>> cols(x.dim() * y.dim());
    const Json& entries = field(t, "entries", p);
    for (std::size_t e = 0; e < as_array(entries, p + ".entries").size(); ++e) {
      const std::string q = p + ".entries[" + std::to_string(e) + "]";
      const Json& row = entries[e];
      if (!row.is_array() || row.size() != 4) schema(q, "expected [x, y, target, coefficient]");
      const std::size_t a = basis_index(row[0], x, q + "[0]"), b = basis_index(row[1], y, q + "[1]"), c = basis_index(row[2], z, q + "[2]");
      cols[a * y.dim() + b][c] += as_rational(row[3], q + "[3]");
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<SparseVector::Entry> col;
      for (const auto& [r, q] : cols[c])
        if (q != 0) col.push_back({r, q});
      mat.set_column(c, SparseVector::from_unsorted(std::move(col)));
    }
    if (out.count({m, n, i})) schema(p, "duplicate table");
    out[{m, n, i}] = std::move(mat);
  }
  return out;
}

Json compositions_json(const PartialTables& tables, const SymSeq& right) {
  Json out = Json::array();
  for (const auto& [key, mat] : tables) {
    const auto [m, n, i] = key;
    const std::size_t dy = right.dim(n);
    Json entries = Json::array();
    for (std::size_t c = 0; c < mat.cols(); ++c)
      for (const auto& [r, q] : mat.column(c).entries()) entries.push_back(Json::array({c / dy, c % dy, r, rational_json(q)}));
    if (entries.empty()) continue;
    out.push_back(Json{{"m", m}, {"n", n}, {"i", i}, {"entries", entries}});
  }
  return out;
}

Json sequence_json(const SymSeq& s) {
  Json out = Json::array();
  for (int n = 0; n <= s.max_arity(); ++n) {
    const ChainComplex& c = s[n];
    if (c.is_zero()) continue;
    Json a = to_json(c);
    a.erase("type");
    Json entry{{"n", n}};
    for (auto& [k, v] : a.items()) entry[k] = v;
    if (!s.non_sigma() && n >= 2) {
      Json ts = Json::array();
      for (const Matrix& t : s.transpositions(n)) ts.push_back(matrix_json(t));
      entry["transpositions"] = ts;
    }
    out.push_back(entry);
  }
  return out;
}

Defaults merged(const Json& doc, Defaults d, const std::string& path) {
  d.max_arity = int_or(doc, "max_arity", d.max_arity, path);
  if (auto it = doc.find("max_weight"); it != doc.end()) d.max_weight = as_int(*it, path + ".max_weight");
  if (auto it = doc.find("non_sigma"); it != doc.end()) d.non_sigma = as_bool(*it, path + ".non_sigma");
  if (d.max_arity < 1) schema(path, "max_arity must be positive");
  if (d.max_weight && *d.max_weight < 1) schema(path, "max_weight must be positive");
  return d;
}

void check_type(const Json& doc, const std::string& want, const std::string& path) {
  if (auto it = doc.find("type"); it != doc.end() && as_string(*it, path + ".type") != want)
    schema(path, "expected a document of type \"" + want + "\", got \"" + it->get<std::string>() + "\"");
  if (auto it = doc.find("scalars"); it != doc.end() && as_string(*it, path + ".scalars") != "rational")
    schema(path + ".scalars", "only \"rational\" scalars are supported");
}

OperadPtr builtin_operad(const std::string& name, const Defaults& d, const std::string& path) {
  if (name == "unit" || name == "I") return builtin::unit(d.max_arity, d.non_sigma);
  if (name == "planar") return builtin::planar(d.max_arity);
  if (name == "com") return d.non_sigma ? builtin::planar(d.max_arity, "com") : builtin::com(d.max_arity);
  if (name == "ass") return d.non_sigma ? builtin::planar(d.max_arity, "ass") : builtin::ass(d.max_arity);
  schema(path, "unknown builtin operad \"" + name + "\" (expected com, ass, unit or planar)");
}

bool looks_like_path(const std::string& s) { return s.find('/') != std::string::npos || s.ends_with(".json"); }

ChainComplex generators(const Json& v, const std::string& path) {
  std::vector<Generator> basis = parse_basis(v, path);
  return ChainComplex::graded(std::move(basis));
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

ChainComplex parse_complex(const Json& doc, const std::string& path) {
  check_type(doc, "complex", path);
  ChainComplex shape = ChainComplex::graded(parse_basis(field(doc, "basis", path), path + ".basis"));
  Matrix d(shape.dim(), shape.dim());
  if (auto it = doc.find("differential"); it != doc.end()) d = parse_matrix(*it, shape, shape, path + ".differential");
  try {
    return ChainComplex(shape.basis(), d);
  } catch (const std::invalid_argument& e) {
    throw AxiomError(path + ": " + e.what());
  }
}

SymSeq parse_sequence(const Json& arities, int max_arity, bool non_sigma, const std::string& path) {
  std::vector<ChainComplex> comps(static_cast<std::size_t>(max_arity + 1));
  std::vector<std::vector<Matrix>> trans(static_cast<std::size_t>(max_arity + 1));
  std::vector<bool> given(comps.size(), false);
  for (std::size_t k = 0; k < as_array(arities, path).size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const Json& a = arities[k];
    const int n = as_int(field(a, "n", p), p + ".n");
    if (n < 0 || n > max_arity) schema(p + ".n", "arity " + std::to_string(n) + " outside 0.." + std::to_string(max_arity));
    if (given[static_cast<std::size_t>(n)]) schema(p + ".n", "arity " + std::to_string(n) + " given twice");
    given[static_cast<std::size_t>(n)] = true;
    const ChainComplex c = parse_complex(a, p);
    std::vector<Matrix> ts;
    if (!non_sigma && n >= 2) {
      if (auto it = a.find("transpositions"); it != a.end()) {
        if (as_array(*it, p + ".transpositions").size() != static_cast<std::size_t>(n - 1))
          schema(p + ".transpositions", "arity " + std::to_string(n) + " needs " + std::to_string(n - 1) + " transpositions");
        for (std::size_t i = 0; i < it->size(); ++i)
          ts.push_back(parse_matrix((*it)[i], c, c, p + ".transpositions[" + std::to_string(i) + "]"));
      } else {
        ts.assign(static_cast<std::size_t>(n - 1), Matrix::identity(c.dim()));
      }
    }
    comps[static_cast<std::size_t>(n)] = c;
    trans[static_cast<std::size_t>(n)] = std::move(ts);
  }
  for (int n = 2; n <= max_arity; ++n)
    if (!non_sigma && trans[static_cast<std::size_t>(n)].empty())
      trans[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n - 1), Matrix(0, 0));
  try {
    return SymSeq(std::move(comps), std::move(trans), non_sigma);
  } catch (const std::invalid_argument& e) {
    throw AxiomError(path + ": " + e.what());
  }
}

OperadPtr parse_operad(const Json& doc, const Defaults& d0, const std::string& path) {
  if (doc.is_string()) {
    const std::string spec = doc.get<std::string>();
    return looks_like_path(spec) ? parse_operad(read_file(spec), d0, spec) : builtin_operad(spec, d0, path);
  }
  check_type(doc, "operad", path);
  const Defaults d = merged(doc, d0, path);
  if (auto it = doc.find("builtin"); it != doc.end()) return builtin_operad(as_string(*it, path + ".builtin"), d, path + ".builtin");
  SymSeq seq = parse_sequence(field(doc, "arity", path), d.max_arity, d.non_sigma, path + ".arity");
  const SparseVector unit = parse_vector(field(doc, "unit", path), seq[1], path + ".unit");
  PartialTables tables;
  if (auto it = doc.find("compositions"); it != doc.end()) tables = parse_compositions(*it, seq, seq, path + ".compositions");
  std::string name = "operad";
  if (auto it = doc.find("name"); it != doc.end()) name = as_string(*it, path + ".name");
  return std::make_shared<const Operad>(std::move(seq), unit, std::move(tables), name);
}

LeftModulePtr parse_left_module(const Json& doc, const Defaults& d0, const std::string& path) {
  if (!doc.is_object()) schema(path, "expected an object");
  if (auto it = doc.find("type"); it != doc.end()) {
    const std::string t = as_string(*it, path + ".type");
    if (t != "algebra" && t != "left_module") schema(path + ".type", "expected \"algebra\" or \"left_module\"");
  }
  const Defaults d = merged(doc, d0, path);
  const OperadPtr o = parse_operad(field(doc, "operad", path), d, path + ".operad");
  auto weight = [&]() {
    if (!d.max_weight) schema(path, "max_weight is required for algebras");
    return *d.max_weight;
  };
  LeftModule m;
  if (doc.contains("kind") && as_string(doc["kind"], path + ".kind") == "operad") {
    m = operad_as_left_module(o);
  } else if (doc.contains("free") && as_bool(doc["free"], path + ".free")) {
    m = free_algebra(o, generators(field(doc, "generators", path), path + ".generators"), weight());
  } else if (doc.contains("square_zero") && as_bool(doc["square_zero"], path + ".square_zero")) {
    m = square_zero(o, generators(field(doc, "generators", path), path + ".generators"), weight());
  } else if (doc.contains("sequence")) {
    const SymSeq y = parse_sequence(doc["sequence"], o->max_arity(), o->non_sigma(), path + ".sequence");
    m = free_left_module(o, y, d.max_weight);
  } else {
    // explicit algebra: basis with weights and the action on every (op, inputs)
    const ChainComplex a = parse_complex(Json{{"basis", field(doc, "basis", path)},
                                              {"differential", doc.value("differential", Json::array())}},
                                         path);
    std::map<std::pair<std::uint32_t, std::vector<std::uint32_t>>, SparseVector> table;
    const Json& action = field(doc, "action", path);
    for (std::size_t k = 0; k < as_array(action, path + ".action").size(); ++k) {
      const std::string p = path + ".action[" + std::to_string(k) + "]";
      const Json& e = action[k];
      const Json& inputs = as_array(field(e, "inputs", p), p + ".inputs");
      const int t = static_cast<int>(inputs.size());
      if (t > o->max_arity()) schema(p, "more inputs than the operad's max arity");
      const auto op = static_cast<std::uint32_t>(basis_index(field(e, "op", p), o->seq()[t], p + ".op"));
      std::vector<std::uint32_t> in;
      for (std::size_t i = 0; i < inputs.size(); ++i)
        in.push_back(static_cast<std::uint32_t>(basis_index(inputs[i], a, p + ".inputs[" + std::to_string(i) + "]")));
      auto& slot = table[{op, in}];
      if (!slot.empty()) schema(p, "duplicate action entry");
      slot = parse_vector(field(e, "output", p), a, p + ".output");
    }
    m.op = o;
    m.seq = std::make_shared<const SymSeq>(hat(a, o->max_arity(), o->non_sigma()));
    m.max_weight = d.max_weight;
    m.action = [table = std::move(table)](const CircleTerm& term) -> SparseVector {
      auto it = table.find({term.a, term.factors});
      return it == table.end() ? SparseVector{} : it->second;
    };
  }
  if (auto it = doc.find("name"); it != doc.end()) m.name = as_string(*it, path + ".name");
  check_module(m);
  return std::make_shared<const LeftModule>(std::move(m));
}

RightModulePtr parse_right_module(const Json& doc, const Defaults& d0, const std::string& path) {
  check_type(doc, "right_module", path);
  const Defaults d = merged(doc, d0, path);
  const OperadPtr o = parse_operad(field(doc, "operad", path), d, path + ".operad");
  RightModule m;
  const std::string kind = doc.contains("kind") ? as_string(doc["kind"], path + ".kind") : "explicit";
  if (kind == "unit") {
    m = unit_right_module(o);
  } else if (kind == "operad") {
    m = operad_as_right_module(o);
  } else if (kind == "explicit") {
    m.op = o;
    m.seq = std::make_shared<const SymSeq>(parse_sequence(field(doc, "arity", path), o->max_arity(), o->non_sigma(), path + ".arity"));
    if (auto it = doc.find("compositions"); it != doc.end()) m.tables = parse_compositions(*it, *m.seq, o->seq(), path + ".compositions");
    m.name = "X";
  } else {
    schema(path + ".kind", "expected \"unit\", \"operad\" or \"explicit\"");
  }
  if (auto it = doc.find("name"); it != doc.end()) m.name = as_string(*it, path + ".name");
  check_module(m);
  return std::make_shared<const RightModule>(std::move(m));
}

OperadMap parse_map(const Json& doc, const Defaults& d0, const std::string& path) {
  if (doc.is_string()) return map_from_spec(doc.get<std::string>(), d0);
  check_type(doc, "map", path);
  const Defaults d = merged(doc, d0, path);
  if (auto it = doc.find("builtin"); it != doc.end()) {
    const std::string name = as_string(*it, path + ".builtin");
    if (name == "ass_to_com") return builtin::ass_to_com(builtin::ass(d.max_arity), builtin::com(d.max_arity));
    const OperadPtr o = parse_operad(field(doc, "operad", path), d, path + ".operad");
    if (name == "identity") return identity_map(o);
    if (name == "augmentation") return augmentation(o);
    schema(path + ".builtin", "unknown builtin map \"" + name + "\"");
  }
  OperadMap f;
  f.source = parse_operad(field(doc, "source", path), d, path + ".source");
  f.target = parse_operad(field(doc, "target", path), d, path + ".target");
  const int top = f.source->max_arity();
  f.map = SymSeqMap::zero(f.source->seq(), f.target->seq());
  const Json& comps = field(doc, "components", path);
  for (std::size_t k = 0; k < as_array(comps, path + ".components").size(); ++k) {
    const std::string p = path + ".components[" + std::to_string(k) + "]";
    const int n = as_int(field(comps[k], "n", p), p + ".n");
    if (n < 0 || n > top) schema(p + ".n", "arity out of range");
    f.map.components[static_cast<std::size_t>(n)] = parse_matrix(field(comps[k], "entries", p), f.target->seq()[n], f.source->seq()[n], p + ".entries");
  }
  check_operad_map(f);
  return f;
}

SimplicialChainComplex parse_simplicial(const Json& doc, const std::string& path) {
  check_type(doc, "simplicial", path);
  SimplicialChainComplex x;
  const Json& levels = field(doc, "levels", path);
  for (std::size_t k = 0; k < as_array(levels, path + ".levels").size(); ++k)
    x.levels.push_back(parse_complex(levels[k], path + ".levels[" + std::to_string(k) + "]"));
  if (x.levels.empty()) schema(path + ".levels", "at least one level is needed");
  const int s = x.top();
  const Json& faces = field(doc, "faces", path);
  const Json& degs = field(doc, "degeneracies", path);
  if (as_array(faces, path + ".faces").size() != static_cast<std::size_t>(s))
    schema(path + ".faces", "expected one list of faces for each level 1.." + std::to_string(s));
  if (as_array(degs, path + ".degeneracies").size() != static_cast<std::size_t>(s))
    schema(path + ".degeneracies", "expected one list of degeneracies for each level 0.." + std::to_string(s - 1));
  x.faces.resize(static_cast<std::size_t>(s + 1));
  x.degeneracies.resize(static_cast<std::size_t>(s));
  for (int n = 1; n <= s; ++n) {
    const std::string p = path + ".faces[" + std::to_string(n - 1) + "]";
    const Json& f = faces[static_cast<std::size_t>(n - 1)];
    if (as_array(f, p).size() != static_cast<std::size_t>(n + 1)) schema(p, "level " + std::to_string(n) + " has " + std::to_string(n + 1) + " faces");
    for (int i = 0; i <= n; ++i)
      x.faces[static_cast<std::size_t>(n)].push_back(
          parse_matrix(f[static_cast<std::size_t>(i)], x.levels[static_cast<std::size_t>(n - 1)], x.levels[static_cast<std::size_t>(n)], p + "[" + std::to_string(i) + "]"));
  }
  for (int n = 0; n < s; ++n) {
    const std::string p = path + ".degeneracies[" + std::to_string(n) + "]";
    const Json& g = degs[static_cast<std::size_t>(n)];
    if (as_array(g, p).size() != static_cast<std::size_t>(n + 1)) schema(p, "level " + std::to_string(n) + " has " + std::to_string(n + 1) + " degeneracies");
    for (int j = 0; j <= n; ++j)
      x.degeneracies[static_cast<std::size_t>(n)].push_back(
          parse_matrix(g[static_cast<std::size_t>(j)], x.levels[static_cast<std::size_t>(n + 1)], x.levels[static_cast<std::size_t>(n)], p + "[" + std::to_string(j) + "]"));
  }
  if (auto it = doc.find("infinite"); it != doc.end()) x.infinite = as_bool(*it, path + ".infinite");
  return x;
}

Json to_json(const ChainComplex& c) {
  Json basis = Json::array();
  for (const Generator& g : c.basis()) {
    Json e = Json::array({g.name, g.degree});
    if (g.weight != 0) e.push_back(g.weight);
    basis.push_back(e);
  }
  return Json{{"type", "complex"}, {"basis", basis}, {"differential", matrix_json(c.differential())}};
}

Json to_json(const Operad& o) {
  return Json{{"type", "operad"},
              {"name", o.name()},
              {"scalars", "rational"},
              {"max_arity", o.max_arity()},
              {"non_sigma", o.non_sigma()},
              {"arity", sequence_json(o.seq())},
              {"unit", vector_json(o.unit())},
              {"compositions", compositions_json(o.partials(), o.seq())}};
}

Json to_json(const OperadMap& f) {
  Json comps = Json::array();
  for (std::size_t n = 0; n < f.map.components.size(); ++n)
    if (f.map.components[n].nnz() > 0) comps.push_back(Json{{"n", n}, {"entries", matrix_json(f.map.components[n])}});
  return Json{{"type", "map"}, {"source", to_json(*f.source)}, {"target", to_json(*f.target)}, {"components", comps}};
}

Json to_json(const SimplicialChainComplex& x) {
  Json levels = Json::array(), faces = Json::array(), degs = Json::array();
  for (const ChainComplex& c : x.levels) {
    Json l = to_json(c);
    l.erase("type");
    levels.push_back(l);
  }
  for (int n = 1; n <= x.top(); ++n) {
    Json f = Json::array();
    for (int i = 0; i <= n; ++i) f.push_back(matrix_json(x.face(n, i)));
    faces.push_back(f);
  }
  for (int n = 0; n < x.top(); ++n) {
    Json g = Json::array();
    for (int j = 0; j <= n; ++j) g.push_back(matrix_json(x.degeneracy(n, j)));
    degs.push_back(g);
  }
  return Json{{"type", "simplicial"}, {"infinite", x.infinite}, {"levels", levels}, {"faces", faces}, {"degeneracies", degs}};
}

namespace {

}  // namespace

OperadPtr operad_from_spec(const std::string& spec, const Defaults& d) {
  if (looks_like_path(spec)) return parse_operad(read_file(spec), d, spec);
  return builtin_operad(spec, d, "--operad");
}

LeftModulePtr module_from_spec(const std::string& spec, const OperadPtr& o, const Defaults& d) {
  if (looks_like_path(spec)) {
    Json doc = read_file(spec);
    if (!doc.contains("operad")) {
      doc["operad"] = to_json(*o);
    } else if (doc["operad"].is_string() && looks_like_path(doc["operad"].get<std::string>())) {
      // operad files are named relative to the module document
      const std::filesystem::path rel = doc["operad"].get<std::string>();
      if (rel.is_relative()) doc["operad"] = (std::filesystem::path(spec).parent_path() / rel).string();
    }
    return parse_left_module(doc, d, spec);
  }
  if (spec == "operad") return std::make_shared<const LeftModule>(operad_as_left_module(o));
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  if (colon == std::string::npos || (kind != "free" && kind != "sqzero" && kind != "square-zero"))
    throw SchemaError("--algebra: expected free:N, sqzero:N, operad or a JSON file, got \"" + spec + "\"");
  std::string count = spec.substr(colon + 1);
  int degree = 0;
  if (const auto at = count.find('@'); at != std::string::npos) {
    try {
      degree = std::stoi(count.substr(at + 1));
    } catch (const std::exception&) {
      throw SchemaError("--algebra: bad degree in \"" + spec + "\"");
    }
    count = count.substr(0, at);
  }
  int n = 0;
  try {
    n = std::stoi(count);
  } catch (const std::exception&) {
    throw SchemaError("--algebra: bad generator count in \"" + spec + "\"");
  }
  if (n < 1) throw SchemaError("--algebra: need at least one generator");
  if (!d.max_weight) throw SchemaError("--max-weight is required for free and square-zero algebras");
  std::vector<Generator> gens;
  for (int i = 1; i <= n; ++i) gens.push_back({n == 1 ? "x" : "x" + std::to_string(i), degree, 1});
  const ChainComplex v = ChainComplex::graded(gens);
  return std::make_shared<const LeftModule>(kind == "free" ? free_algebra(o, v, *d.max_weight) : square_zero(o, v, *d.max_weight));
}

OperadMap map_from_spec(const std::string& spec, const Defaults& d) {
  if (looks_like_path(spec)) return parse_map(read_file(spec), d, spec);
  if (spec == "ass_to_com") return builtin::ass_to_com(builtin::ass(d.max_arity), builtin::com(d.max_arity));
  const auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const OperadPtr o = builtin_operad(spec.substr(colon + 1), d, "--map");
    if (spec.substr(0, colon) == "identity") return identity_map(o);
    if (spec.substr(0, colon) == "augmentation") return augmentation(o);
  }
  throw SchemaError("--map: expected ass_to_com, identity:<operad>, augmentation:<operad> or a JSON file, got \"" + spec + "\"");
}

}  // namespace opbar::io
