#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "drkofn/harness.hpp"
#include "drkofn/io.hpp"
#include "drkofn/rng.hpp"

using namespace drkofn;

TEST_CASE("serialize and parse round-trip exactly") {
  Instance inst = gen_random(7, 3, 0.1, 12345);
  Instance back = parse_instance(serialize_instance(inst));
  CHECK(back.n == inst.n);
  CHECK(back.k == inst.k);
  CHECK(back.cost == inst.cost);  // bitwise: shortest-round-trip doubles
  CHECK(back.lo == inst.lo);
  CHECK(back.hi == inst.hi);
}

TEST_CASE("parse_instance rejects structural problems") {
  CHECK_THROWS_AS(parse_instance("not json"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance("[1,2]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"tests":[{"cost":1,"lo":0.1,"hi":0.2}]})"),
                  std::invalid_argument);  // missing k
  CHECK_THROWS_AS(
      parse_instance(
          R"({"n":1,"k":1,"tests":[{"cost":1,"lo":0.1,"hi":0.2}],"extra":0})"),
      std::invalid_argument);
  CHECK_THROWS_AS(
      parse_instance(R"({"n":1,"k":1,"tests":[{"cost":1,"lo":0.1,"hi":0.2,"x":0}]})"),
      std::invalid_argument);  // unknown per-test field
  CHECK_THROWS_AS(parse_instance(R"({"n":2,"k":1,"tests":[{"cost":1,"lo":0.1,"hi":0.2}]})"),
                  std::invalid_argument);  // length disagrees with n
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"k":1,"tests":[{"cost":1,"lo":0.4,"hi":0.2}]})"),
                  std::invalid_argument);  // inverted interval caught by validation
  CHECK_NOTHROW(parse_instance(R"({"n":1,"k":1,"tests":[{"cost":1,"lo":0.1,"hi":0.2}]})"));
}

TEST_CASE("save and load through a file") {
  Instance inst = gen_random(5, 2, 0.2, 9);
  std::string path = "io_roundtrip_tmp.json";
  save_instance(inst, path);
  Instance back = load_instance(path);
  CHECK(back.lo == inst.lo);
  CHECK(back.hi == inst.hi);
  CHECK(back.cost == inst.cost);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_instance("definitely_missing_file.json"), std::invalid_argument);
}

TEST_CASE("parse_order maps one-based text to zero-based permutations") {
  CHECK(parse_order("2,1", 2) == Permutation{1, 0});
  CHECK(parse_order(" 3 , 1 , 2 ", 3) == Permutation{2, 0, 1});
  CHECK_THROWS_AS(parse_order("0,1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_order("1,3", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_order("1,1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_order("1", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_order("1,x", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_order("", 1), std::invalid_argument);
}

TEST_CASE("format_order is the inverse of parse_order") {
  Permutation perm{2, 0, 1};
  CHECK(format_order(perm) == "3,1,2");
  CHECK(parse_order(format_order(perm), 3) == perm);
}

TEST_CASE("parse_reals") {
  std::vector<double> v = parse_reals("0.5, 1e-3 ,2");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 0.5);
  CHECK(v[1] == 1e-3);
  CHECK(v[2] == 2.0);
  CHECK_THROWS_AS(parse_reals("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_reals("1,abc"), std::invalid_argument);
}
