#include <catch_amalgamated.hpp>

#include "silting/corpus.hpp"
#include "silting/suites.hpp"

using namespace silting;
using io::json;
using Mod = Module<PrimeField>;

namespace {

const PrimeField F2(2);

AlgebraPtr<PrimeField> build(const QuiverPresentation& q) { return compile_quiver_algebra(q, F2); }

SiltingOptions small_options() {
  SiltingOptions o;
  o.enumeration.dim_bound = 2;
  o.enumeration.use_disk_cache = false;
  return o;
}

template <class Fn>
void require_format_error(Fn fn) {
  REQUIRE_THROWS_AS(fn(), io::FormatError);
}

}  // namespace

TEST_CASE("field specs round-trip") {
  for (const auto& f : {FieldSpec::prime(2), FieldSpec::prime(7), FieldSpec::rational()})
    CHECK(io::field_from_json(io::to_json(f)) == f);
  require_format_error([] { io::field_from_json(json{{"kind", "complex"}}); });
  require_format_error([] { io::field_from_json(json{{"kind", "prime"}, {"p", "two"}}); });
  CHECK_THROWS_AS(io::field_from_json(json{{"kind", "prime"}, {"p", 4}}), Error);
}

TEST_CASE("quiver and structure forms describe the same algebra") {
  for (const auto& q : {corpus::a2(), corpus::a3_zero_relation(), corpus::dual_numbers(), corpus::gamma0()}) {
    const auto alg = build(q);
    const auto from_quiver = io::algebra_from_json(F2, io::to_json(q));
    CHECK(from_quiver->id() == alg->id());
    const json structure = io::to_json(*alg);
    const auto from_structure = io::algebra_from_json(F2, structure);
    CHECK(from_structure->id() == alg->id());
    CHECK(from_structure->dim() == alg->dim());
    CHECK(io::dump(io::to_json(*from_structure)) == io::dump(structure));
  }
}

TEST_CASE("rational algebras round-trip") {
  const RationalField q;
  const auto alg = compile_quiver_algebra(corpus::a2(FieldSpec::rational()), q);
  const auto back = io::algebra_from_json(q, io::to_json(*alg));
  CHECK(back->id() == alg->id());
  require_format_error([&] { io::algebra_from_json(F2, io::to_json(*alg)); });
}

TEST_CASE("malformed algebras are rejected") {
  const auto alg = build(corpus::a2());
  json j = io::to_json(*alg);
  SECTION("id mismatch") {
    j["id"] = "0000";
    require_format_error([&] { io::algebra_from_json(F2, j); });
  }
  SECTION("missing multiplication") {
    j["left_multiplication"].erase("a");
    require_format_error([&] { io::algebra_from_json(F2, j); });
  }
  SECTION("wrong matrix shape") {
    j["left_multiplication"]["a"] = json::array({json::array({"1"})});
    require_format_error([&] { io::algebra_from_json(F2, j); });
  }
  SECTION("non-scalar entry") {
    j["left_multiplication"]["a"][0][0] = json::array();
    require_format_error([&] { io::algebra_from_json(F2, j); });
  }
  SECTION("unknown arrow in a relation") {
    json q = io::to_json(corpus::a3_zero_relation());
    q["relations"][0][0]["path"] = json::array({"zz"});
    CHECK_THROWS_AS(io::algebra_from_json(F2, q), Error);
  }
}

TEST_CASE("modules, maps and presentations round-trip") {
  const auto alg = build(corpus::a2());
  const Mod reg = Mod::regular(alg), s1 = simple_module(alg, 0), s2 = simple_module(alg, 1);
  for (const auto& m : {reg, s1, s2, Mod::zero(alg), sum_of(alg, {reg, s1})}) {
    const Mod back = io::module_from_json(alg, io::to_json(m));
    CHECK(back.dim() == m.dim());
    CHECK(is_isomorphic(back, m));
    CHECK(io::dump(io::to_json(back)) == io::dump(io::to_json(m)));
  }
  const auto sigma = minimal_projective_presentation(s1);
  const auto back = io::presentation_from_json(alg, io::to_json(sigma));
  CHECK(back.map.matrix == sigma.map.matrix);
  CHECK(is_isomorphic(back.cokernel.target, s1));
  const auto g = sigma.map;
  const auto g2 = io::map_from_json(alg, io::to_json(g));
  CHECK(g2.matrix == g.matrix);
}

TEST_CASE("malformed modules are rejected") {
  const auto alg = build(corpus::a2());
  const auto other = build(corpus::dual_numbers());
  const json s1 = io::to_json(simple_module(alg, 0));
  require_format_error([&] { io::module_from_json(other, s1); });
  json bad = s1;
  bad["action"]["a"] = json::array({json::array({"1"})});
  CHECK_THROWS_AS(io::module_from_json(alg, bad), Error);
  bad = s1;
  bad["action"].erase("e1");
  require_format_error([&] { io::module_from_json(alg, bad); });
  bad = s1;
  bad["dim"] = -1;
  require_format_error([&] { io::module_from_json(alg, bad); });

  json pres{{"p1", {"3"}}, {"p0", {"1"}}, {"matrix", json::array()}};
  require_format_error([&] { io::presentation_from_json(alg, pres); });

  json map = io::to_json(minimal_projective_presentation(simple_module(alg, 0)).map);
  map["matrix"] = json::array({json::array({"1"}), json::array({"0"})});
  require_format_error([&] { io::map_from_json(alg, map); });
}

TEST_CASE("triangular contexts round-trip") {
  const auto k = build(corpus::point());
  const auto d = build(corpus::dual_numbers());
  const auto c = build_triangular(k, d, scalar_left_bimodule(k, d));
  const json j = io::to_json(c);
  CHECK(io::context_field(j) == FieldSpec::prime(2));
  const auto back = io::context_from_json(F2, j);
  CHECK(back.gamma()->id() == c.gamma()->id());
  CHECK(io::dump(io::to_json(back)) == io::dump(j));

  json bad = j;
  bad["kind"] = "comma";
  require_format_error([&] { io::context_from_json(F2, bad); });
  bad = j;
  bad["bimodule"]["left"] = d->id();
  require_format_error([&] { io::context_from_json(F2, bad); });
  bad = j;
  bad["bimodule"]["right_action"]["x"] = json::array({json::array({"1", "0"}), json::array({"0", "1"})});
  require_format_error([&] { io::context_from_json(F2, bad); });
}

TEST_CASE("files") {
  require_format_error([] { io::read_file("/nonexistent/algebra.json"); });
  const auto path = std::filesystem::temp_directory_path() / "silting_io_broken.json";
  std::ofstream(path) << "{ \"field\": ";
  require_format_error([&] { io::read_file(path.string()); });
  std::ofstream(path) << io::dump(io::to_json(corpus::a2()));
  CHECK(io::algebra_from_json(F2, io::read_file(path.string()))->dim() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("reports serialize with sorted keys and deterministically") {
  const auto alg = build(corpus::a2());
  const auto opt = small_options();
  const json cert = io::to_json(silting_check(Mod::regular(alg), opt));
  CHECK(cert.at("verdict") == "silting");
  CHECK(cert.contains("tau_route"));
  std::vector<std::string> keys;
  for (const auto& [key, value] : cert.items()) keys.push_back(key);
  CHECK(std::is_sorted(keys.begin(), keys.end()));

  const auto first = io::dump(io::to_json(idempotent_suite(alg, {1}, opt)));
  const auto second = io::dump(io::to_json(idempotent_suite(alg, {1}, opt)));
  CHECK(first == second);
  const json suite = json::parse(first);
  CHECK(suite.at("verdict") == "PASS");
  CHECK(suite.at("counts").at("FAIL") == 0);
  CHECK(first.back() == '\n');
}
