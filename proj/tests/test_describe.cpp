#include <doctest.h>

#include "dspace/describe.hpp"
#include "dspace/suite.hpp"

using namespace dspace;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
  return n;
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("descriptions parse or fail with a located message") {
  json chain = json::parse(R"({"schema": 1, "poset": {"kind": "chain", "n": 2}})");
  CHECK_NOTHROW(check_description(chain, {"poset"}));

  SpacePtr x = space_from_json(json::parse(R"({"poset": {"kind": "flat_nat_top"}, "topology": "upper"})"));
  CHECK_FALSE(x->finite());
  CHECK(classify(*x).kind == SpaceClass::not_directed);

  auto message = [](const json& j, std::vector<std::string> allowed) {
    try {
      check_description(j, allowed);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(json::parse(R"({"poset": {"kind": "chain", "n": 2}})"), {"poset"}) ==
        "description: missing field 'schema'");
  CHECK(message(json::parse(R"({"schema": 1, "poset": {}, "colour": 3})"), {"poset"}) ==
        "description: unknown field 'colour'");
  CHECK(message(json::parse(R"({"schema": 2})"), {}).find("unsupported version") != std::string::npos);

  CHECK_THROWS_WITH_AS(space_from_json(json::parse(R"({"poset": {"kind": "omega"}, "topology": "sierpinski"})")),
                       doctest::Contains("space.topology"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(space_from_json(json::parse(R"({"product": [{"poset": {"kind": "omega"}, "x": 1}]})")),
                       doctest::Contains("space.product[0]: unknown field 'x'"), std::invalid_argument);
  CHECK_THROWS_AS(space_from_json(json::parse(R"({"poset": {"kind": "omega"}, "opens": []})")),
                  std::invalid_argument);
}

TEST_CASE("declared topologies round-trip through descriptions") {
  json j = json::parse(R"({"poset": {"kind": "explicit", "elements": ["a", "b"]}, "topology": "declared",
                           "opens": [[], ["b"], ["a", "b"]]})");
  SpacePtr x = space_from_json(j);
  CHECK(x->finite());
  CHECK(x->leq(x->sample(2)[0], x->sample(2)[1]));
}

TEST_CASE("dot export") {
  SUBCASE("two-element chain") {
    std::string d = export_dot(*space_from_json(json::parse(R"({"poset": {"kind": "chain", "n": 2}})")));
    CHECK(count(d, "shape=") == 2);
    CHECK(count(d, " -> ") == 1);
    CHECK(d.find("\"0\" -> \"1\"") != std::string::npos);
  }
  SUBCASE("lower powerspace of a two-point antichain is a vee") {
    FreeAlgebraResult f = powerspace(FinitePoset::from_pairs({"a", "b"}, {}), Theory::lower);
    std::string d = export_dot(f.carrier, std::vector<bool>(f.carrier.size(), true));
    CHECK(count(d, "shape=") == 3);
    CHECK(count(d, " -> ") == 2);
    CHECK(d.find("\"{a}\" -> \"{a,b}\"") != std::string::npos);
    CHECK(d.find("\"{b}\" -> \"{a,b}\"") != std::string::npos);
  }
  SUBCASE("infinite spaces need a prefix") {
    SpacePtr w = space_from_json(json::parse(R"({"poset": {"kind": "omega"}})"));
    CHECK_THROWS_WITH_AS(export_dot(*w), doctest::Contains("--prefix"), std::invalid_argument);
    std::string d = export_dot(*w, 5);
    CHECK(count(d, "shape=") == 5);
    CHECK(count(d, " -> ") == 4);
  }
}

TEST_CASE("suite membership") {
  CHECK(suite::suite_members("paper").size() == 11);
  CHECK(suite::suite_members("quick") == std::vector<int>{1, 5, 6, 8});
  CHECK_THROWS_AS(suite::suite_members("slow"), std::invalid_argument);
  CHECK(suite::criteria().size() == 11);
}

TEST_CASE("a reversed Hoare preorder turns the powerspace criterion red") {
  suite::Options opt;
  SetPreorder hoare = set_preorder(Theory::lower);
  opt.hoare = [hoare](const FinitePoset& p, std::uint32_t a, std::uint32_t b) { return hoare(p, b, a); };
  Report r = suite::run_criterion(5, opt);
  CHECK_FALSE(r.ok());
  REQUIRE(r.first_failure());
  CHECK(suite::run_criterion(5).ok());
}

TEST_CASE("mutation replays are deterministic") {
  Report r = suite::run_criterion(11);
  CHECK(r.ok());
  REQUIRE(r.inputs.contains("replays"));
  REQUIRE(r.inputs["replays"].size() == 4);
  for (const auto& e : r.inputs["replays"]) {
    Report a = suite::replay(e), b = suite::replay(e);
    REQUIRE(a.first_failure());
    REQUIRE(b.first_failure());
    CHECK(a.first_failure()->name == e["expect"]["check"]);
    CHECK(a.first_failure()->counterexample == e["expect"]["counterexample"]);
    CHECK(a.first_failure()->counterexample == b.first_failure()->counterexample);
  }
  CHECK_THROWS_AS(suite::replay(json::object()), std::invalid_argument);
  CHECK(find(r, "time < 30 s"));
}
