#include <random>

#include "bbs/config.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbs;

TEST_CASE("parse_config") {
  CHECK(parse_config("0 1 1 0") == BallConfig{0, 1, 1, 0});
  CHECK(parse_config("").empty());
  CHECK(parse_config(" \n\t").empty());
  try {
    parse_config("012");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(parse_config("01a"), ParseError);
}

TEST_CASE("lift") {
  CHECK(lift(BallConfig{}).size() == 0);
  CHECK(lift(BallConfig{}).at(-1) == 0);
  const WalkLift w = lift(BallConfig{1, 0});
  CHECK(std::vector<Level>(w.values().begin(), w.values().end()) == std::vector<Level>{1, 0});
  const WalkLift z = lift(BallConfig{0, 0, 1});
  CHECK(std::vector<Level>(z.values().begin(), z.values().end()) == std::vector<Level>{-1, -2, -1});
  CHECK(z.at(-3) == 2);
  CHECK(z.at(5) == -4);  // right padding keeps descending
  CHECK(z.running_min(2) == -2);
}

TEST_CASE("lift and project are inverse") {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const BallConfig c = test::random_config(gen, 150, 0.6);
    CHECK(lift(c).project() == c);
  }
  CHECK_THROWS_AS(WalkLift({0, 2}).project(), ConsistencyError);
}

TEST_CASE("records") {
  auto sites = [](const char* s) {
    const RecordIndex r = records(parse_config(s));
    return std::vector<Site>(r.positions().begin(), r.positions().end());
  };
  CHECK(sites("000") == std::vector<Site>{0, 1, 2});
  CHECK(sites("100") == std::vector<Site>{2});
  CHECK(sites("0100") == std::vector<Site>{0, 3});

  const RecordIndex r = records(parse_config("0100"));
  CHECK(r.position_of(1) == 0);
  CHECK(r.position_of(2) == 3);
  CHECK(r.position_of(0) == -1);
  CHECK(r.position_of(-2) == -3);
  CHECK(r.position_of(3) == 4);  // padding
  CHECK(r.label_of(3) == 2);
  CHECK_FALSE(r.is_record(1));
  CHECK_FALSE(r.is_record(2));
  CHECK(r.is_record(-5));
}

TEST_CASE("records grow by one per site over an empty suffix") {
  BallConfig c = parse_config("0110100");
  const std::size_t base = records(c).count();
  for (std::size_t extra = 1; extra <= 10; ++extra) {
    BallConfig d = c;
    d.pad_to(c.size() + extra);
    CHECK(records(d).count() == base + extra);
  }
}

TEST_CASE("carrier") {
  CHECK(apply_T_carrier(parse_config("0010110000110100000")).to_string() == "0001001100001011000");
  CHECK(apply_T_carrier(parse_config("0000")).to_string() == "0000");
  CHECK(apply_T_carrier(parse_config("10")).to_string() == "01");
  CHECK(apply_T_carrier(parse_config("11")).to_string() == "0011");  // window grows by the final load
  CHECK(apply_T(parse_config("1100"), 3).to_string() == "00000011");
}

TEST_CASE("reflection") {
  CHECK(apply_T_reflect(lift(parse_config("10"))).project().to_string() == "01");
  CHECK(apply_T_reflect(lift(parse_config("0010110000110100000"))).project().to_string() == "0001001100001011000");
  const WalkLift flat = lift(parse_config("00000"));
  const WalkLift same = apply_T_reflect(flat);
  CHECK(std::vector<Level>(same.values().begin(), same.values().end()) ==
        std::vector<Level>(flat.values().begin(), flat.values().end()));
}

TEST_CASE("carrier and reflection agree on 1000 random configurations") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 1000; ++i) {
    const BallConfig c = test::random_config(gen, 200, 0.45);
    const BallConfig a = apply_T_carrier(c);
    BallConfig b = apply_T_reflect(lift(c)).project();
    b.pad_to(a.size());
    REQUIRE(a == b);
  }
}

TEST_CASE("ball count is conserved") {
  std::mt19937_64 gen(12);
  for (int i = 0; i < 500; ++i) {
    const BallConfig c = test::random_config(gen, 200, 0.45);
    CHECK(apply_T_carrier(c).ball_count() == c.ball_count());
  }
}

TEST_CASE("excursions") {
  const auto two = excursions(parse_config("00"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].empty());
  CHECK(two[1].empty());

  const auto one = excursions(parse_config("100"));
  REQUIRE(!one.empty());
  CHECK(one[0].height == 1);
  CHECK(one[0].left_record == -1);
  CHECK(one[0].right_record == 2);
  for (std::size_t i = 1; i < one.size(); ++i) CHECK(one[i].empty());

  const auto nested = excursions(parse_config("110100"));
  REQUIRE(nested.size() == 1);
  CHECK(nested[0].height == 2);
  CHECK(nested[0].support_size() == 6);
  CHECK(nested[0].length() == 7);

  CHECK_THROWS_AS(excursions(parse_config("0110")), PreconditionError);
}

TEST_CASE("window helpers") {
  BallConfig c = parse_config("0110");
  CHECK(c.ball_count() == 2);
  CHECK(c.density() == doctest::Approx(0.5));
  CHECK(BallConfig{}.density() == 0.0);
  CHECK(c[-1] == 0);
  CHECK(c[10] == 0);
  CHECK(c.window(1, 2).to_string() == "11");
  CHECK(c.window(2, 4).to_string() == "1000");
  CHECK_FALSE(c.ends_at_record());
  CHECK(c.record_terminated().to_string() == "011000");
  CHECK(parse_config("0100").ends_at_record());
  c.pad_to(6);
  CHECK(c.to_string() == "011000");
}
