#pragma once

#include <cstddef>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/soliton.hpp"

namespace bbs {

/// T^0 eta .. T^steps eta with their solitons and the step-to-step pairings.
/// Every soliton trajectory is followed through pair_one_step only.
class Evolution {
 public:
  Evolution(BallConfig initial, std::size_t steps);

  std::size_t steps() const noexcept { return pairings_.size(); }
  const BallConfig& config(std::size_t t) const { return configs_.at(t); }
  const SolitonSet& solitons(std::size_t t) const { return solitons_.at(t); }
  const Pairing& pairing(std::size_t t) const { return pairings_.at(t); }  // t -> t + 1

  /// gamma^t for a soliton of the initial configuration.
  SolitonRef follow(SolitonRef initial, std::size_t t) const;
  const Soliton& at(SolitonRef ref, std::size_t t) const;

 private:
  std::vector<BallConfig> configs_;
  std::vector<SolitonSet> solitons_;
  std::vector<Pairing> pairings_;
};

}  // namespace bbs
