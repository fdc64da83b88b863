#pragma once

#include <random>

#include "bbs/config.hpp"

namespace test {

// Length uniform in [1, max_len], density uniform in [0, max_density].
inline bbs::BallConfig random_config(std::mt19937_64& gen, std::size_t max_len, double max_density) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_len)(gen);
  std::bernoulli_distribution ball(std::uniform_real_distribution<double>(0.0, max_density)(gen));
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = ball(gen) ? 1 : 0;
  return bbs::BallConfig(std::move(bits));
}

inline bbs::BallConfig random_terminated(std::mt19937_64& gen, std::size_t max_len, double max_density) {
  return random_config(gen, max_len, max_density).record_terminated();
}

// Record at site 0 and at the last site.
inline bbs::BallConfig random_hat(std::mt19937_64& gen, std::size_t max_len, double max_density) {
  bbs::BallConfig c = random_config(gen, max_len, max_density);
  c.set(0, 0);
  return c.record_terminated();
}

}  // namespace test
