#include <doctest.h>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "hypernorm/catalog.hpp"
#include "hypernorm/errors.hpp"
#include "hypernorm/json_io.hpp"
#include "hypernorm/pair.hpp"
#include "hypernorm/rng.hpp"
#include "hypernorm/space.hpp"

using namespace hypernorm;

TEST_CASE("pairs round-trip through JSON exactly") {
  const HypergraphPair pool[] = {
      make_lp(3.5),
      make_gowers(3),
      make_schatten(6),
      make_complete(0.5, {2, 3}),
      make_sqrt2_pair(),
      scale(make_gowers(2), 2.0),
  };
  for (const HypergraphPair& h : pool) {
    for (const bool pretty : {false, true}) {
      const HypergraphPair back = pair_from_json(pair_to_json(h, pretty));
      CHECK(back == h);
    }
  }
}

TEST_CASE("functions round-trip through JSON exactly") {
  CounterRng rng(404, 0);
  for (int t = 0; t < 10; ++t) {
    GridFunction f;
    f.space.n = 2 + static_cast<int>(rng.below(3));
    for (int i = 0; i < f.space.n; ++i) {
      f.space.weights.push_back(rng.uniform(0.25, 2.0));
    }
    f.k = 1 + static_cast<int>(rng.below(2));
    std::size_t cells = 1;
    for (int i = 0; i < f.k; ++i) cells *= static_cast<std::size_t>(f.space.n);
    for (std::size_t i = 0; i < cells; ++i) {
      f.values.push_back(rng.complex_gaussian());
    }
    const GridFunction back = function_from_json(function_to_json(f, t % 2 == 0));
    CHECK(back.k == f.k);
    CHECK(back.space.n == f.space.n);
    REQUIRE(back.values.size() == f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      CHECK(back.values[i] == f.values[i]);
      // Bitwise equality: serialization must not lose precision.
    }
    for (int i = 0; i < f.space.n; ++i) {
      CHECK(back.space.weights[static_cast<std::size_t>(i)] ==
            f.space.weights[static_cast<std::size_t>(i)]);
    }
  }
}

TEST_CASE("malformed JSON reports 1-based line and column") {
  const std::string text = "{\n  \"k\": 1,\n  \"dims\": [1,\n}";
  try {
    pair_from_json(text);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() >= 1);
    CHECK(std::string(e.what()).find("malformed JSON") != std::string::npos);
  }

  CHECK_THROWS_AS(function_from_json("not json at all"), ParseError);
  try {
    function_from_json("not json at all");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("schema violations raise ValidationError, not ParseError") {
  // Well-formed JSON, wrong shape.
  CHECK_THROWS_AS(pair_from_json("[1, 2, 3]"), ValidationError);
  CHECK_THROWS_AS(pair_from_json("{\"k\": 1}"), ValidationError);
  CHECK_THROWS_AS(
      pair_from_json(
          "{\"k\": 1, \"dims\": [1], \"alpha\": 7, \"beta\": []}"),
      ValidationError);
  CHECK_THROWS_AS(
      pair_from_json("{\"k\": 1, \"dims\": [1], \"alpha\": "
                     "[{\"omega\": [0], \"value\": 1}, {\"omega\": [0], "
                     "\"value\": 2}], \"beta\": []}"),
      ValidationError);
  // Out-of-range cell caught by pair validation on load.
  CHECK_THROWS_AS(
      pair_from_json("{\"k\": 1, \"dims\": [2], \"alpha\": "
                     "[{\"omega\": [2], \"value\": 1}], \"beta\": []}"),
      ValidationError);
  CHECK_THROWS_AS(
      function_from_json("{\"k\": 1, \"n\": 2, \"values\": [[1, 0]], "
                         "\"weights\": [1, 1]}"),
      ValidationError);  // 2 cells expected, 1 given
  CHECK_THROWS_AS(
      function_from_json("{\"k\": 0, \"n\": 2, \"values\": [], "
                         "\"weights\": [1, 1]}"),
      ValidationError);
  CHECK_THROWS_AS(
      function_from_json("{\"k\": 1, \"n\": 2, \"values\": [[1], [2]], "
                         "\"weights\": [1, 1]}"),
      ValidationError);
  CHECK_THROWS_AS(
      function_from_json("{\"k\": 1, \"n\": 2, \"values\": [[1, 0], [2, 0]], "
                         "\"weights\": [1, -1]}"),
      ValidationError);
}

TEST_CASE("file helpers round-trip and surface IO failures") {
  const std::string dir = "/tmp/hypernorm_json_test";
  std::remove((dir + "/pair.json").c_str());
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);

  const HypergraphPair h = make_gowers(2);
  write_text_file(dir + "/pair.json", pair_to_json(h, true));
  CHECK(load_pair(dir + "/pair.json") == h);

  GridFunction f = GridFunction::constant({2, {0.5, 1.5}}, 2,
                                          Complex(0.25, -1.75));
  write_text_file(dir + "/fn.json", function_to_json(f));
  const GridFunction back = load_function(dir + "/fn.json");
  CHECK(back.values == f.values);

  CHECK_THROWS_AS(read_text_file(dir + "/absent.json"), Error);
  CHECK_THROWS_AS(load_pair(dir + "/absent.json"), Error);
}

TEST_CASE("content digests are stable and content-sensitive") {
  // Frozen reference digests for the FNV-1a 64-bit test vectors.
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a64_hex("foobar") == "85944171f73967e8");
  CHECK(fnv1a64_hex("foobar") != fnv1a64_hex("foobaz"));
  CHECK(fnv1a64_hex(pair_to_json(make_gowers(2))) ==
        fnv1a64_hex(pair_to_json(make_gowers(2))));
}
