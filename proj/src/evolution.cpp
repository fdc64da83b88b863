#include "bbs/evolution.hpp"

namespace bbs {

Evolution::Evolution(BallConfig initial, std::size_t steps) {
  configs_.reserve(steps + 1);
  solitons_.reserve(steps + 1);
  pairings_.reserve(steps);
  configs_.push_back(std::move(initial));
  solitons_.push_back(identify_stream(configs_.back()));
  for (std::size_t t = 0; t < steps; ++t) {
    configs_.push_back(apply_T_carrier(configs_.back()));
    solitons_.push_back(identify_stream(configs_.back()));
    pairings_.push_back(pair_one_step(solitons_[t], solitons_[t + 1]));
  }
}

SolitonRef Evolution::follow(SolitonRef ref, std::size_t t) const {
  for (std::size_t s = 0; s < t; ++s) ref.index = pairings_.at(s).after.at(ref.size).at(ref.index);
  return ref;
}

const Soliton& Evolution::at(SolitonRef ref, std::size_t t) const {
  return solitons_.at(t).by_size.at(ref.size).at(follow(ref, t).index);
}

}  // namespace bbs
