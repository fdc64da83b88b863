#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bbs/config.hpp"

namespace bbs {

struct Soliton {
  int size = 0;
  std::vector<Site> head;  // ball sites, increasing
  std::vector<Site> tail;  // empty sites, increasing

  /// x(gamma): leftmost site of head and tail.
  Site leftmost() const noexcept { return std::min(head.front(), tail.front()); }
  Site rightmost() const noexcept { return std::max(head.back(), tail.back()); }

  /// True when the head sits left of the tail (a "1^k 0^k" shape).
  bool head_first() const noexcept { return head.front() < tail.front(); }

  friend bool operator==(const Soliton&, const Soliton&) = default;
};

/// Solitons of a configuration, analysed on its record-terminated extension.
struct SolitonSet {
  std::map<int, std::vector<Soliton>> by_size;  // each list sorted by leftmost site
  std::vector<Site> record_sites;               // in-window records of the analysed window
  std::size_t window = 0;                       // length of the analysed window

  std::size_t count() const noexcept;
  std::size_t count(int size) const noexcept;
  int max_size() const noexcept { return by_size.empty() ? 0 : by_size.rbegin()->first; }

  /// All solitons ordered by (leftmost, size).
  std::vector<const Soliton*> ordered() const;

  friend bool operator==(const SolitonSet&, const SolitonSet&) = default;
};

/// Takahashi-Satsuma: per excursion, repeatedly remove the leftmost run that is
/// at least as long as the run before it, together with that preceding run.
SolitonSet identify_batch(const BallConfig& config);

/// Single left-to-right pass over a stack of alternating runs above an
/// infinite empty prefix; equal adjacent runs annihilate into a soliton.
SolitonSet identify_stream(const BallConfig& config);

inline SolitonSet identify(const BallConfig& config) { return identify_stream(config); }

/// Reference to a soliton inside a SolitonSet.
struct SolitonRef {
  int size = 0;
  std::size_t index = 0;
  friend auto operator<=>(const SolitonRef&, const SolitonRef&) = default;
};

/// For each size k, after[k][i] is the index in Gamma_k(T eta) of the image of
/// the i-th k-soliton of eta.
struct Pairing {
  std::map<int, std::vector<std::size_t>> after;
};

/// Matches each tail set of `before` to the equal head set of `after`.
/// Throws ConsistencyError when the matching is not a total bijection.
Pairing pair_one_step(const SolitonSet& before, const SolitonSet& after);
Pairing pair_one_step(const SolitonSet& before, const BallConfig& after_config);

/// One line per soliton: "k=<size> head=<s1,...> tail=<s1,...>".
std::string soliton_report(const SolitonSet& set);

}  // namespace bbs
