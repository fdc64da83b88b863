#include <algorithm>
#include <random>

#include "bbs/evolution.hpp"
#include "bbs/soliton.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbs;

namespace {

std::vector<int> sizes(const SolitonSet& s) {
  std::vector<int> out;
  for (const auto& [k, list] : s.by_size) out.insert(out.end(), list.size(), k);
  return out;
}

bool same(const SolitonSet& a, const SolitonSet& b) {
  return a.by_size == b.by_size && a.record_sites == b.record_sites && a.window == b.window;
}

// Every site of the analysed window is in exactly one soliton or is a record,
// heads carry balls, tails are empty, and the leftover sites are the records.
void check_partition(const BallConfig& c, const SolitonSet& s) {
  const BallConfig ext = c.record_terminated();
  std::vector<int> seen(s.window, 0);
  for (const auto& [k, list] : s.by_size)
    for (const Soliton& sol : list) {
      REQUIRE(sol.head.size() == static_cast<std::size_t>(k));
      REQUIRE(sol.tail.size() == static_cast<std::size_t>(k));
      for (Site x : sol.head) {
        CHECK(ext[x] == 1);
        ++seen[static_cast<std::size_t>(x)];
      }
      for (Site x : sol.tail) {
        CHECK(ext[x] == 0);
        ++seen[static_cast<std::size_t>(x)];
      }
    }
  const RecordIndex rec = records(ext);
  CHECK(std::vector<Site>(rec.positions().begin(), rec.positions().end()) == s.record_sites);
  for (Site r : s.record_sites) ++seen[static_cast<std::size_t>(r)];
  CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
}

}  // namespace

TEST_CASE("batch identification") {
  CHECK(sizes(identify_batch(parse_config("110110011100000"))) == std::vector<int>{1, 2, 4});
  const SolitonSet two = identify_batch(parse_config("1100"));
  REQUIRE(two.count() == 1);
  CHECK(two.by_size.at(2)[0].head == std::vector<Site>{0, 1});
  CHECK(two.by_size.at(2)[0].tail == std::vector<Site>{2, 3});
  CHECK(sizes(identify_batch(parse_config("11110010111010000110110000"))) == std::vector<int>{1, 1, 1, 2, 3, 5});
}

TEST_CASE("stream identification") {
  const BallConfig c = parse_config("110110011100000");
  CHECK(same(identify_stream(c), identify_batch(c)));
  const SolitonSet s = identify_stream(c);
  CHECK(s.by_size.at(4)[0].head == std::vector<Site>{0, 1, 4, 9});
  CHECK(s.by_size.at(4)[0].tail == std::vector<Site>{10, 11, 12, 13});
  CHECK(identify_stream(BallConfig{}).count() == 0);
  CHECK(identify_stream(parse_config("0000")).count() == 0);
}

TEST_CASE("stream and batch agree on 1000 random configurations") {
  std::mt19937_64 gen(21);
  for (int i = 0; i < 1000; ++i) {
    const BallConfig c = test::random_config(gen, 200, 0.45);
    const SolitonSet a = identify_stream(c);
    REQUIRE(same(a, identify_batch(c)));
    check_partition(c, a);
  }
}

TEST_CASE("stream and batch agree on every word up to length 14 ending in 00") {
  for (std::size_t len = 2; len <= 14; ++len) {
    for (std::uint64_t w = 0; w < (std::uint64_t{1} << (len - 2)); ++w) {
      std::vector<std::uint8_t> bits(len, 0);
      for (std::size_t i = 0; i + 2 < len; ++i) bits[i] = static_cast<std::uint8_t>((w >> i) & 1);
      const BallConfig c(std::move(bits));
      REQUIRE(same(identify_stream(c), identify_batch(c)));
    }
  }
}

TEST_CASE("soliton report") {
  CHECK(soliton_report(identify(parse_config("1100"))) == "k=2 head=0,1 tail=2,3\n");
  CHECK(soliton_report(identify(parse_config("10001100"))) == "k=1 head=0 tail=1\nk=2 head=4,5 tail=6,7\n");
}

TEST_CASE("pairing") {
  const BallConfig c = parse_config("1100");
  const BallConfig d = apply_T_carrier(c);
  CHECK(d.to_string() == "0011");
  const Pairing p = pair_one_step(identify(c), d);
  CHECK(p.after.at(2) == std::vector<std::size_t>{0});
  CHECK(identify(d).by_size.at(2)[0].head == std::vector<Site>{2, 3});

  Evolution evo(parse_config("10"), 6);
  for (std::size_t t = 0; t <= 6; ++t) CHECK(evo.at({1, 0}, t).head == std::vector<Site>{static_cast<Site>(t)});
}

TEST_CASE("pairing rejects unrelated configurations") {
  CHECK_THROWS_AS(pair_one_step(identify(parse_config("1100")), parse_config("100")), ConsistencyError);
  CHECK_THROWS_AS(pair_one_step(identify(parse_config("1100")), parse_config("00001100")), ConsistencyError);
}

TEST_CASE("sizes are conserved and pairing is total on 500 random configurations") {
  std::mt19937_64 gen(22);
  for (int i = 0; i < 500; ++i) {
    const BallConfig c = test::random_terminated(gen, 200, 0.45);
    const SolitonSet before = identify(c);
    const BallConfig next = apply_T_carrier(c);
    const SolitonSet after = identify(next);
    CHECK(sizes(before) == sizes(after));
    const Pairing p = pair_one_step(before, after);
    for (const auto& [k, image] : p.after) {
      std::vector<std::size_t> sorted = image;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t j = 0; j < sorted.size(); ++j) CHECK(sorted[j] == j);
      for (std::size_t j = 0; j < image.size(); ++j)
        CHECK(after.by_size.at(k)[image[j]].head == before.by_size.at(k)[j].tail);
    }
  }
}

TEST_CASE("isolated soliton moves k sites per step") {
  for (int k = 1; k <= 5; ++k) {
    std::string s(static_cast<std::size_t>(k), '1');
    s += std::string(static_cast<std::size_t>(k), '0');
    Evolution evo(parse_config(s), 5);
    for (std::size_t t = 0; t <= 5; ++t) CHECK(evo.at({k, 0}, t).leftmost() == static_cast<Site>(k * t));
  }
}
