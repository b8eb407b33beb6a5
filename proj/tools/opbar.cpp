// Command-line front end. Exit codes: 0 success, 1 axiom or verification
// failure, 2 schema or usage error, 3 truncation or precondition violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acceptance.hpp"
#include "io.hpp"

using namespace opbar;
using io::Json;

namespace {

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int max_arity = 4;
  std::optional<int> max_weight;
  int levels = 4;
  std::optional<int> max_degree;
  int min_degree = -1000;
  bool non_sigma = false;
  std::string format = "tsv";
  std::string output;

  std::string operad = "com";
  std::string algebra = "free:1";
  std::string left = "operad";
  std::string map = "ass_to_com";
  std::string input;
  std::string golden;

  io::Defaults defaults() const { return {max_arity, max_weight, non_sigma}; }
};

// A report: a configuration line, named columns and integer rows.
struct Table {
  std::string config;
  std::vector<std::string> columns;
  std::vector<std::vector<long>> rows;
  std::vector<std::pair<std::string, std::string>> notes;
};

std::string tsv(const Table& t) {
  std::ostringstream os;
  os << "# " << t.config << "\n";
  for (const auto& [k, v] : t.notes) os << "# " << k << ": " << v << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "\t" : "") << t.columns[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
    os << "\n";
  }
  return os.str();
}

std::string json(const Table& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = Json::object();
    for (std::size_t i = 0; i < r.size(); ++i) row[t.columns[i]] = r[i];
    rows.push_back(row);
  }
  Json doc{{"config", t.config}};
  for (const auto& [k, v] : t.notes) doc[k] = v;
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

void emit(const Options& o, const Table& t) {
  if (!o.output.empty()) {
    std::ofstream(o.output + ".tsv") << tsv(t);
    std::ofstream(o.output + ".json") << json(t);
  }
  std::cout << (o.format == "json" ? json(t) : tsv(t));
}

Table homology_table(const std::string& config, const HomologyTable& h) {
  Table t{config, {"weight", "arity", "degree", "betti"}, {}, {}};
  std::vector<std::vector<long>> rows;
  for (const auto& [k, b] : h.nonzero()) rows.push_back({k.weight, k.arity, k.degree, b});
  std::sort(rows.begin(), rows.end());
  t.rows = std::move(rows);
  return t;
}

std::string bounds(const Options& o) {
  std::ostringstream os;
  os << "N=" << o.max_arity << " W=" << (o.max_weight ? std::to_string(*o.max_weight) : "none") << " S=" << o.levels
     << (o.non_sigma ? " non-sigma" : "");
  return os.str();
}

HomologyTable windowed(const Options& o, const HomologyTable& h, int top) {
  return h.window(o.min_degree, o.max_degree ? std::min(*o.max_degree, top) : top);
}

Table report(const Options& o, const std::string& what, const HomologyReport& r) {
  Table t = homology_table(what + " " + r.config, windowed(o, r.table, r.window_top));
  const int top = o.max_degree ? std::min(*o.max_degree, r.window_top) : r.window_top;
  t.notes.push_back({"window", (o.min_degree > -1000 ? std::to_string(o.min_degree) + " <= " : std::string()) + "degree <= " + std::to_string(top)});
  return t;
}

Table dims_table(const std::string& config, const SymSeq& s) {
  Table t{config, {"weight", "arity", "degree", "dim"}, {}, {}};
  for (int n = 0; n <= s.max_arity(); ++n) {
    std::map<std::pair<int, int>, long> count;
    for (const Generator& g : s[n].basis()) ++count[{g.weight, g.degree}];
    for (const auto& [k, c] : count) t.rows.push_back({k.first, n, k.second, c});
  }
  std::sort(t.rows.begin(), t.rows.end());
  return t;
}

// check: validate any document, print its dimension table.
int run_check(const Options& o) {
  const io::Defaults d = o.defaults();
  if (o.input.empty()) {
    const OperadPtr op = io::operad_from_spec(o.operad, d);
    emit(o, dims_table("operad " + op->name() + " " + bounds(o) + ": all axioms hold", op->seq()));
    return 0;
  }
  const Json doc = io::read_file(o.input);
  const std::string type = doc.contains("builtin") && !doc.contains("type") ? "operad" : doc.value("type", "operad");
  if (type == "operad") {
    const OperadPtr op = io::parse_operad(doc, d, o.input);
    emit(o, dims_table("operad " + op->name() + ": all axioms hold", op->seq()));
  } else if (type == "algebra" || type == "left_module") {
    const LeftModulePtr m = io::parse_left_module(doc, d, o.input);
    emit(o, dims_table(type + " " + m->name + " over " + m->op->name() + ": all axioms hold", *m->seq));
  } else if (type == "right_module") {
    const RightModulePtr m = io::parse_right_module(doc, d, o.input);
    emit(o, dims_table("right module " + m->name + " over " + m->op->name() + ": all axioms hold", *m->seq));
  } else if (type == "map") {
    const OperadMap f = io::parse_map(doc, d, o.input);
    emit(o, dims_table("map " + f.source->name() + " -> " + f.target->name() + ": operad map; source dimensions", f.source->seq()));
  } else if (type == "complex") {
    const ChainComplex c = io::parse_complex(doc, o.input);
    emit(o, dims_table("complex: d∘d = 0", hat(c, 0)));
  } else if (type == "simplicial") {
    const SimplicialChainComplex x = io::parse_simplicial(doc, o.input);
    if (const Report r = check_simplicial_identities(x); !r) throw VerificationFailure(r.message);
    Table t{"simplicial object: identities hold", {"level", "dim"}, {}, {}};
    for (int n = 0; n <= x.top(); ++n) t.rows.push_back({n, static_cast<long>(x.levels[static_cast<std::size_t>(n)].dim())});
    emit(o, t);
  } else {
    throw io::SchemaError(o.input + ".type: unknown document type \"" + type + "\"");
  }
  return 0;
}

int run_free(const Options& o) {
  const LeftModulePtr y = io::module_from_spec(o.algebra, io::operad_from_spec(o.operad, o.defaults()), o.defaults());
  const OperadPtr op = y->op;  // a module document may name its own operad
  emit(o, dims_table(y->name + " over " + op->name() + " " + bounds(o), *y->seq));
  return 0;
}

int run_bar(const Options& o) {
  const LeftModulePtr y = io::module_from_spec(o.algebra, io::operad_from_spec(o.operad, o.defaults()), o.defaults());
  const OperadPtr op = y->op;  // a module document may name its own operad
  RightModulePtr x;
  if (o.left == "operad") x = std::make_shared<const RightModule>(operad_as_right_module(op));
  else if (o.left == "unit") x = std::make_shared<const RightModule>(unit_right_module(op));
  else x = io::parse_right_module(io::read_file(o.left), o.defaults(), o.left);
  const BarConstruction b = bar(x, op, y, o.levels);
  Table t{"B(" + x->name + ", " + op->name() + ", " + y->name + ") " + bounds(o), {"level", "weight", "arity", "degree", "dim"}, {}, {}};
  for (int k = 0; k <= b.top; ++k) {
    const Table lk = dims_table("", b.level(k));
    for (const auto& r : lk.rows) t.rows.push_back({k, r[0], r[1], r[2], r[3]});
  }
  std::string failure;
  for (int r = 0; r <= b.max_arity() && failure.empty(); ++r)
    if (const Report rep = check_simplicial_identities(b.arity(r)); !rep) failure = "arity " + std::to_string(r) + ": " + rep.message;
  t.notes.push_back({"simplicial identities", failure.empty() ? "hold" : "FAIL " + failure});
  if (failure.empty() && b.left_is_operad) {
    const ContractionReport c = contraction_check(b);
    t.notes.push_back({"extra degeneracy contraction", c.ok ? "holds" : "FAIL " + c.message});
    if (!c.ok) failure = c.message;
  }
  emit(o, t);
  if (!failure.empty()) throw VerificationFailure(failure);
  return 0;
}

int run_homology(const Options& o) {
  const ChainComplex c = io::parse_complex(io::read_file(o.input), o.input);
  emit(o, homology_table("H(" + o.input + ")", homology(c).window(o.min_degree, o.max_degree.value_or(1000))));
  return 0;
}

int run_qh(const Options& o) {
  const OperadPtr given = io::operad_from_spec(o.operad, o.defaults());
  require_augmentable(*given);
  const LeftModulePtr y = io::module_from_spec(o.algebra, given, o.defaults());
  const OperadPtr op = y->op;
  require_augmentable(*op);
  emit(o, report(o, "Quillen homology", quillen_homology(op, y, o.levels)));
  return 0;
}

int run_change(const Options& o) {
  const OperadMap f = io::map_from_spec(o.map, o.defaults());
  const LeftModulePtr y = io::module_from_spec(o.algebra, f.source, o.defaults());
  emit(o, report(o, "change of operads " + f.source->name() + " -> " + f.target->name(), change_of_operads(f, y, o.levels)));
  return 0;
}

int run_dold_kan(const Options& o) {
  const SimplicialChainComplex x = io::parse_simplicial(io::read_file(o.input), o.input);
  if (const Report r = check_simplicial_identities(x); !r) throw VerificationFailure(r.message);
  const Bicomplex b = normalize(x);
  const DoldKanReport dk = dold_kan_check(x, b);
  Table t{"Dold-Kan " + o.input, {"level", "dim", "normalized", "surjections_sum"}, {}, {}};
  for (int n = 0; n <= x.top(); ++n) {
    long sum = 0;
    for (int k = 0; k <= n; ++k)
      sum += dk.counts[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] * static_cast<long>(b.columns[static_cast<std::size_t>(k)].dim());
    t.rows.push_back({n, static_cast<long>(x.levels[static_cast<std::size_t>(n)].dim()), static_cast<long>(b.columns[static_cast<std::size_t>(n)].dim()), sum});
  }
  t.notes.push_back({"psi", dk.ok ? "isomorphism at every level" : "FAIL " + dk.message});
  emit(o, t);
  if (!dk.ok) throw VerificationFailure(dk.message);
  return 0;
}

int run_selftest(const Options& o) {
  const auto results = acceptance::run(o.golden.empty() ? OPBAR_GOLDEN : o.golden);
  acceptance::print(std::cout, results);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

int run_export(const Options& o) {
  std::cout << io::to_json(*io::operad_from_spec(o.operad, o.defaults())).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operadic bar constructions and Quillen homology over Q"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--max-arity", o.max_arity, "Arity bound N")->check(CLI::PositiveNumber);
    c->add_option("--max-weight", o.max_weight, "Weight bound W")->check(CLI::PositiveNumber);
    c->add_option("--levels", o.levels, "Simplicial bound S")->check(CLI::NonNegativeNumber);
    c->add_option("--min-degree", o.min_degree, "Lowest degree reported");
    c->add_option("--max-degree", o.max_degree, "Highest degree reported (clipped to the trustworthy window)");
    c->add_flag("--non-sigma", o.non_sigma, "Use the non-symmetric versions of the builtins");
    c->add_option("--format", o.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    c->add_option("--output", o.output, "Also write PREFIX.tsv and PREFIX.json");
  };
  auto with_operad = [&](CLI::App* c) { c->add_option("--operad", o.operad, "Builtin (com, ass, unit, planar) or JSON file"); };
  auto with_algebra = [&](CLI::App* c) { c->add_option("--algebra", o.algebra, "free:N, sqzero:N, operad or JSON file"); };

  auto* check = app.add_subcommand("check", "Validate a document or builtin");
  check->add_option("input", o.input, "JSON document");
  auto* free = app.add_subcommand("free", "Dimensions of a free algebra or module");
  auto* barc = app.add_subcommand("bar", "Level dimensions of B(X, O, Y) and its identity checks");
  barc->add_option("--left", o.left, "operad, unit or a right-module JSON file");
  auto* hom = app.add_subcommand("homology", "Homology of a chain complex");
  hom->add_option("input", o.input, "Complex JSON document")->required();
  auto* qh = app.add_subcommand("qh", "Quillen homology via B(I, O, Y)");
  auto* change = app.add_subcommand("change", "Homology of B(O', O, Y) for f: O -> O'");
  change->add_option("--map", o.map, "ass_to_com, identity:<operad>, augmentation:<operad> or JSON file");
  auto* dk = app.add_subcommand("dold-kan", "Check the Dold-Kan isomorphism on a simplicial object");
  dk->add_option("input", o.input, "Simplicial JSON document")->required();
  auto* self = app.add_subcommand("selftest", "Run the acceptance suite");
  self->add_option("golden", o.golden, "Square-zero golden table");
  auto* exp = app.add_subcommand("export", "Print a builtin operad as JSON");

  for (CLI::App* c : {check, free, barc, hom, qh, change, dk, exp}) common(c);
  for (CLI::App* c : {check, free, barc, qh, exp}) with_operad(c);
  for (CLI::App* c : {free, barc, qh, change}) with_algebra(c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return run_check(o);
    if (*free) return run_free(o);
    if (*barc) return run_bar(o);
    if (*hom) return run_homology(o);
    if (*qh) return run_qh(o);
    if (*change) return run_change(o);
    if (*dk) return run_dold_kan(o);
    if (*self) return run_selftest(o);
    if (*exp) return run_export(o);
  } catch (const io::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 3;
  } catch (const TruncationError& e) {
    std::cerr << "truncation: " << e.what() << "\n";
    return 3;
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 1;
  } catch (const AxiomError& e) {
    std::cerr << "axiom violated: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
