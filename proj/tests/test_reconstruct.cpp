#include <algorithm>
#include <random>

#include "bbs/measures.hpp"
#include "bbs/reconstruct.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbs;

TEST_CASE("empty components give empty excursions") {
  const Reconstruction r = reconstruct(SlotComponents{}, 3);
  CHECK(r.config.to_string() == "000");
  CHECK(r.origin == 0);
  const Reconstruction both = reconstruct(SlotComponents{}, 2, 2);
  CHECK(both.config.to_string() == "0000");
  CHECK(both.origin == 2);
}

TEST_CASE("a single soliton after a record") {
  SlotComponents z;
  z.set(2, 0, 1);
  CHECK(reconstruct(z, 1).config.to_string() == "01100");
  CHECK(reconstruct(z, 2).config.to_string() == "011000");

  SlotComponents two;
  two.set(1, 0, 2);
  CHECK(reconstruct(two, 1).config.to_string() == "01010");
}

TEST_CASE("nested insertion") {
  // Orders in "0111000" run 0,1,2 across each half, so the 1-slots are the
  // record and sites 2, 3, 5, 6. Label 3 is site 5, a zero: the block is 10.
  SlotComponents z;
  z.set(3, 0, 1);
  z.set(1, 3, 1);
  const Reconstruction r = reconstruct(z, 1);
  CHECK(r.config.to_string() == "011100100");
  CHECK(components(r.config) == z);

  // Label 1 is site 2, a ball: the block is 01.
  SlotComponents left;
  left.set(3, 0, 1);
  left.set(1, 1, 1);
  const Reconstruction l = reconstruct(left, 1);
  CHECK(l.config.to_string() == "011011000");
  CHECK(components(l.config) == left);
}

TEST_CASE("excursion slot counts") {
  const BallConfig c = parse_config("011100100");
  const SlotConfig slots = slot_configuration(c, identify(c));
  const auto ex = excursions(c);
  const auto tall = std::find_if(ex.begin(), ex.end(), [](const Excursion& e) { return e.height == 3; });
  REQUIRE(tall != ex.end());
  CHECK(n_slots_in_excursion(slots, *tall, 1) == 5);
  CHECK(n_slots_in_excursion(slots, *tall, 2) == 3);
  CHECK(n_slots_in_excursion(slots, *tall, 3) == 1);
  CHECK(n_slots_in_excursion(slots, *tall, 4) == 1);
  for (const Excursion& e : ex)
    if (e.empty()) CHECK(n_slots_in_excursion(slots, e, 1) == 1);
}

TEST_CASE("reconstruct inverts components on 500 random configurations") {
  std::mt19937_64 gen(41);
  for (int i = 0; i < 500; ++i) {
    const BallConfig c = test::random_hat(gen, 200, 0.45);
    const auto [n_left, n_right] = natural_extent(c);
    const Reconstruction r = reconstruct(components(c), static_cast<std::size_t>(n_right), static_cast<std::size_t>(n_left));
    REQUIRE(r.config == c);
  }
}

TEST_CASE("components invert reconstruct on 500 random component fields") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> alpha;
    const int K = 1 + static_cast<int>(gen() % 5);
    for (int k = 0; k < K; ++k) alpha.push_back(0.05 + 0.3 * std::uniform_real_distribution<double>()(gen));
    const ComponentLaw law = seed % 2 ? ComponentLaw::geometric(alpha) : ComponentLaw::bernoulli(alpha);
    const std::size_t n_right = 1 + gen() % 30, n_left = gen() % 10;
    const Reconstruction r = reconstruct(component_source(law, seed), K, n_right, n_left);
    const auto bounds = r.consumed(K);
    const SlotComponents drawn = sample_components(law, bounds, seed);
    REQUIRE(components(r.config, r.origin) == drawn);
  }
}

TEST_CASE("cursor bookkeeping") {
  SlotComponents z;
  z.set(2, 0, 1);
  const Reconstruction r = reconstruct(z, 2, 1);
  // Left excursion is empty; the right ones are 01100 and 0.
  CHECK(r.config.to_string() == "0011000");
  CHECK(r.origin == 1);
  const auto used = r.consumed(2);
  CHECK(used.at(2) == std::make_pair(Label{-1}, Label{1}));
  CHECK(used.at(1) == std::make_pair(Label{-1}, Label{3}));
}

TEST_CASE("excursions are built independently of their neighbours") {
  // Stripping the excursion that holds Record 0's successor and rebuilding from
  // the shifted components reproduces the tail.
  std::mt19937_64 gen(42);
  for (int i = 0; i < 200; ++i) {
    const BallConfig c = test::random_hat(gen, 150, 0.45);
    const RecordIndex rec = records(c);
    if (rec.count() < 3) continue;
    const Site second = rec.positions()[1];
    const BallConfig tail = c.window(second, c.size() - static_cast<std::size_t>(second));
    const auto [nl, nr] = natural_extent(tail);
    CHECK(reconstruct(components(c, second), static_cast<std::size_t>(nr), static_cast<std::size_t>(nl)).config == tail);
  }
}

TEST_CASE("natural extent") {
  CHECK(natural_extent(parse_config("000")) == std::make_pair(Label{0}, Label{3}));
  CHECK(natural_extent(parse_config("011000")) == std::make_pair(Label{0}, Label{2}));
  CHECK_THROWS_AS(natural_extent(parse_config("1100")), PreconditionError);
}
