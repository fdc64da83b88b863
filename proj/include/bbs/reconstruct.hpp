#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/slots.hpp"

namespace bbs {

/// zeta_k(i) on demand. Lets samplers draw components lazily as the cursor
/// reaches them.
using ComponentSource = std::function<std::int64_t(int k, Label i)>;

/// Labels consumed so far: right[k] is the next unused label >= 0 and left[k]
/// the lowest label used so far (0 when nothing left of Record 0 was built).
struct ComponentCursor {
  std::map<int, Label> right;
  std::map<int, Label> left;

  Label next_right(int k) const;
  Label lowest_left(int k) const;
};

/// n_k(eps): the preceding record plus the interior k-slots.
std::size_t n_slots_in_excursion(const SlotConfig& slots, const Excursion& excursion, int k);

/// Interior of one excursion, with the slot order of every site.
struct BuiltExcursion {
  std::vector<std::uint8_t> bits;
  std::vector<int> order;

  bool empty() const noexcept { return bits.empty(); }
};

enum class Side { right, left };

/// Builds the next excursion right of the cursor (labels from cursor.right) or
/// left of it (labels ending at cursor.left - 1), inserting sizes K..1 top-down,
/// and advances the cursor by n_k of the result.
BuiltExcursion reconstruct_excursion(const ComponentSource& zeta, int max_size, ComponentCursor& cursor,
                                     Side side = Side::right);
BuiltExcursion reconstruct_excursion(const SlotComponents& zeta, ComponentCursor& cursor, Side side = Side::right);

struct Reconstruction {
  BallConfig config;
  Site origin = 0;  // Record 0
  ComponentCursor cursor;

  /// Label range [lowest_left, next_right - 1] per k that the output describes.
  std::map<int, std::pair<Label, Label>> consumed(int max_size) const;
};

/// Concatenates "0" + eps^j for j = -n_left .. n_right - 1. With n_left = 0
/// Record 0 is site 0.
Reconstruction reconstruct(const ComponentSource& zeta, int max_size, std::size_t n_right, std::size_t n_left = 0);
Reconstruction reconstruct(const SlotComponents& zeta, std::size_t n_right, std::size_t n_left = 0);

/// Extent (n_left, n_right) that reconstructs `config` from its components
/// anchored at site 0. Requires site 0 to be a record.
std::pair<Label, Label> natural_extent(const BallConfig& config);

/// o_k^t computed from (M_m xi)_{m>k} only: rebuilds the configuration from the
/// larger components and measures the flow through its Record 0.
std::int64_t offset_from_components(const SlotComponents& zeta, int k, std::size_t t, std::size_t n_left,
                                    std::size_t n_right);

}  // namespace bbs
