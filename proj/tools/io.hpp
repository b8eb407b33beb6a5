#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "opbar/bar.hpp"

namespace opbar::io {

using Json = nlohmann::ordered_json;

/// Document does not follow the schema. The message starts with the JSON path.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bounds applied to builtin references and to documents that leave them out.
struct Defaults {
  int max_arity = 4;
  std::optional<int> max_weight;
  bool non_sigma = false;
};

Json read_file(const std::string& path);

ChainComplex parse_complex(const Json& doc, const std::string& path = "$");
SymSeq parse_sequence(const Json& arities, int max_arity, bool non_sigma, const std::string& path);
/// Builtin reference or explicit document; the Operad constructor checks every axiom.
OperadPtr parse_operad(const Json& doc, const Defaults& d, const std::string& path = "$");
/// Algebra or left module ("free", "square_zero", "operad" or explicit action tables).
LeftModulePtr parse_left_module(const Json& doc, const Defaults& d, const std::string& path = "$");
RightModulePtr parse_right_module(const Json& doc, const Defaults& d, const std::string& path = "$");
OperadMap parse_map(const Json& doc, const Defaults& d, const std::string& path = "$");
SimplicialChainComplex parse_simplicial(const Json& doc, const std::string& path = "$");

Json to_json(const ChainComplex& c);
Json to_json(const Operad& o);
Json to_json(const OperadMap& f);
Json to_json(const SimplicialChainComplex& x);

/// Short command-line forms: a builtin name ("com", "ass", "unit", "planar")
/// or a path to a JSON document.
OperadPtr operad_from_spec(const std::string& spec, const Defaults& d);
/// "free:N", "sqzero:N" (N generators in degree 0, or "free:N@d"), "operad",
/// or a path to a JSON document.
LeftModulePtr module_from_spec(const std::string& spec, const OperadPtr& o, const Defaults& d);
/// "ass_to_com", "identity", "augmentation" or a path.
OperadMap map_from_spec(const std::string& spec, const Defaults& d);

}  // namespace opbar::io
