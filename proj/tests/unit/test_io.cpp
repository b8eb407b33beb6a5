#include <random>

#include "doctest.h"
#include "io.hpp"

using namespace opbar;
using io::Json;

namespace {

void same_operad(const Operad& a, const Operad& b) {
  REQUIRE(a.seq().max_arity() == b.seq().max_arity());
  for (int n = 0; n <= a.seq().max_arity(); ++n) CHECK(a.seq().dim(n) == b.seq().dim(n));
  CHECK(a.non_sigma() == b.non_sigma());
  CHECK(a.partials().size() == b.partials().size());
  for (const auto& [k, m] : a.partials()) {
    auto it = b.partials().find(k);
    REQUIRE(it != b.partials().end());
    CHECK(it->second == m);
  }
}

OperadPtr reparse(const Operad& o) {
  // through text, so nothing survives that the format does not carry
  return io::parse_operad(Json::parse(io::to_json(o).dump()), {});
}

}  // namespace

TEST_CASE("builtin operads survive a JSON round trip") {
  for (const OperadPtr& o : {builtin::com(4), builtin::ass(4), builtin::unit(3), builtin::planar(4),
                             endomorphism_operad(unit_one(2), 2)}) {
    CAPTURE(o->name());
    OperadPtr back = reparse(*o);
    same_operad(*o, *back);
    // End has O[0] != 0, where the monoid check needs a weight bound
    if (back->seq().dim(0) == 0) CHECK_NOTHROW(check_monoid_identities(*back));
  }
}

TEST_CASE("the Ass to Com map survives a JSON round trip") {
  OperadMap f = builtin::ass_to_com(builtin::ass(4), builtin::com(4));
  OperadMap g = io::parse_map(Json::parse(io::to_json(f).dump()), {});
  CHECK(g.map == f.map);
  same_operad(*f.source, *g.source);
}

TEST_CASE("mutated documents are rejected") {
  Json doc = io::to_json(*builtin::com(3));
  SUBCASE("wrong structure constant") {
    for (Json& c : doc["compositions"])
      if (c["m"] == 2 && c["n"] == 2 && c["i"] == 0) c["entries"][0][3] = "2";
    CHECK_THROWS_AS(io::parse_operad(doc, {}), AxiomError);
  }
  SUBCASE("unknown basis name") {
    doc["compositions"][0]["entries"][0][0] = "nope";
    CHECK_THROWS_AS(io::parse_operad(doc, {}), io::SchemaError);
  }
  SUBCASE("missing field") {
    doc.erase("arity");
    CHECK_THROWS_AS(io::parse_operad(doc, {}), io::SchemaError);
  }
  SUBCASE("non-rational scalars") {
    doc["scalars"] = "float";
    CHECK_THROWS_AS(io::parse_operad(doc, {}), io::SchemaError);
  }
}

TEST_CASE("complexes survive a JSON round trip") {
  std::mt19937 rng(7);
  for (int t = 0; t < 10; ++t) {
    ChainComplex c = gen::random_complex(rng, 4, 3);
    ChainComplex back = io::parse_complex(Json::parse(io::to_json(c).dump()));
    CHECK(back.basis() == c.basis());
    CHECK(back.differential() == c.differential());
  }
  Json bad = Json::parse(R"({"type": "complex", "basis": [["a", 1], ["b", 0], ["c", -1]],
                              "differential": [["b", "a", 1], ["c", "b", 1]]})");
  CHECK_THROWS_AS(io::parse_complex(bad), AxiomError);
}
