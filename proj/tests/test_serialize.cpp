#include "helpers.hpp"

#include "pathlift/errors.hpp"
#include "pathlift/random_instances.hpp"
#include "pathlift/serialize.hpp"

#include <cstdio>
#include <fstream>

using namespace testing;
using namespace pathlift::io;

TEST_CASE("rationals always carry a denominator") {
  CHECK(to_json(Rational(0)) == "0/1");
  CHECK(to_json(Rational(1)) == "1/1");
  CHECK(to_json(q("6/8")) == "3/4");
  CHECK(rational_from_json(Json("-2/4")) == q("-1/2"));
  CHECK(rational_from_json(Json(3)) == 3);
  CHECK_THROWS_AS(rational_from_json(Json(0.5)), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("1/0")), ParseError);
  CHECK_THROWS_AS(rational_from_json(Json("one half")), ParseError);
}

TEST_CASE("round trips on random values") {
  pathlift::random::Engine rng(21);
  for (int k = 0; k < 30; ++k) {
    const auto s = pathlift::random::metric_space(rng, 2 + static_cast<std::size_t>(k % 4));
    CHECK(*space_from_json(to_json(*s)) == *s);

    const auto mu = pathlift::random::measure(rng, s);
    CHECK(measure_from_json(to_json(mu)) == mu);
    CHECK(measure_from_json(Json::parse(to_json(mu).dump())) == mu);

    const auto x = pathlift::random::random_variable(rng, s);
    CHECK(rv_from_json(to_json(x, true)) == x);
    CHECK(rv_from_json(to_json(x), s) == x);

    const auto path = pathlift::random::polygonal(rng, s, 3);
    const auto in = path_from_json(to_json(path));
    REQUIRE(in.polygonal.has_value());
    CHECK(in.polygonal->breakpoints() == path.breakpoints());
    CHECK(in.polygonal->vertices() == path.vertices());

    const auto lift = lift_polygonal(path, canonical_rv(path.vertices().front()), canonical_rv(path.vertices().back()));
    const auto back = lift_from_json(to_json(lift));
    CHECK(back.breakpoints() == lift.breakpoints());
    CHECK(back.vertices() == lift.vertices());

    const Endpoints ends{lift.vertices().front(), lift.vertices().back()};
    const auto ends_back = endpoints_from_json(to_json(ends), s);
    CHECK(ends_back.start == ends.start);
    CHECK(ends_back.end == ends.end);

    const auto cert = verify_lift(lift, path, 9, ends);
    CHECK(certificate_from_json(to_json(cert)) == cert);
    CHECK(to_json(certificate_from_json(to_json(cert))).dump() == to_json(cert).dump());
  }
}

TEST_CASE("sampled path input") {
  const Json j = Json::parse(R"({
    "space": {"points": ["a", "b"], "dist": [["0/1", "1/1"], ["1/1", "0/1"]]},
    "kind": "sampled",
    "lipschitz": "2/1",
    "samples": [{"t": "0/1", "weights": ["1/1", "0/1"]},
                {"t": "1/2", "weights": ["1/2", "1/2"]},
                {"t": "1/1", "weights": ["0/1", "1/1"]}]
  })");
  auto in = path_from_json(j);
  REQUIRE(in.sampled.has_value());
  CHECK(in.sampled->lipschitz() == 2);
  CHECK((*in.sampled)(q("1/4")) == weights(in.space, {"3/4", "1/4"}));

  Json missing = j;
  missing.erase("lipschitz");
  CHECK_THROWS_AS(path_from_json(missing), ParseError);
  Json bad_kind = j;
  bad_kind["kind"] = "spline";
  CHECK_THROWS_AS(path_from_json(bad_kind), ParseError);
}

TEST_CASE("malformed inputs") {
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points": ["a"]})")), ParseError);
  CHECK_THROWS_AS(interval_set_from_json(Json::parse(R"([["0/1"]])")), ParseError);
  CHECK_THROWS_AS(space_from_json(Json::parse(R"({"points": ["a", "b"], "dist": [["0/1", "1/1"], ["2/1", "0/1"]]})")),
                  DomainError);
  const auto s = two_points("1");
  CHECK_THROWS_AS(rv_from_json(Json::parse(R"({"blocks": {"z": [["0/1", "1/1"]]}})"), s), DomainError);
  CHECK_THROWS_AS(rv_from_json(Json::parse(R"({"blocks": {"a": [["0/1", "1/2"]]}})"), s), DomainError);

  const std::string path = "serialize_test_bad.json";
  {
    std::ofstream out(path);
    out << "{\n  \"points\": [\"a\",\n}";
  }
  try {
    read_json_file(path);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(path) != std::string::npos);
    CHECK(std::string(e.what()).find("3:") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file("no/such/file.json"), ParseError);
}
