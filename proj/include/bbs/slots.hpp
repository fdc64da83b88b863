#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/soliton.hpp"

namespace bbs {

/// Slot label i in s_k(xi, i); label 0 is Record 0.
using Label = std::int64_t;

inline constexpr int kRecordOrder = std::numeric_limits<int>::max();

/// S xi: order j-1 on the j-th head and tail site of every soliton, and
/// kRecordOrder on records. Sites outside the analysed window are records.
struct SlotConfig {
  std::vector<int> order;

  int at(Site x) const noexcept {
    return (x >= 0 && static_cast<std::size_t>(x) < order.size()) ? order[static_cast<std::size_t>(x)] : kRecordOrder;
  }
  bool is_slot(Site x, int k) const noexcept { return at(x) >= k; }
};

SlotConfig slot_configuration(const BallConfig& config, const SolitonSet& solitons);

/// Enumerated k-slots with s_k(xi, 0) at the chosen Record 0. Labels extend
/// past the window into the virtual left records and the right padding.
class SlotTable {
 public:
  SlotTable(const SlotConfig& slots, Site record_zero);

  Site record_zero() const noexcept { return record_zero_; }

  /// s_k(xi, i).
  Site site_of(int k, Label i) const;

  /// Label of the last k-slot at or left of x.
  Label label_at_or_before(int k, Site x) const;

  /// In-window k-slot sites, increasing.
  const std::vector<Site>& sites(int k) const;

  /// Label range [first, last] of the in-window k-slots.
  Label first_label(int k) const;
  Label last_label(int k) const;

 private:
  const std::vector<Site>& level(int k) const;

  Site record_zero_;
  std::size_t window_;
  std::vector<std::vector<Site>> per_k_;  // index k-1; records only above the stored levels
  std::vector<Site> records_;
};

SlotTable enumerate_slots(const SlotConfig& slots, Site record_zero);

/// zeta_k(i): number of k-solitons appended to the i-th k-slot. Sparse; absent
/// entries are zero.
class SlotComponents {
 public:
  std::int64_t at(int k, Label i) const noexcept;
  void set(int k, Label i, std::int64_t count);
  void add(int k, Label i, std::int64_t count = 1);

  /// Largest k with a nonzero entry, 0 if none.
  int max_size() const noexcept;
  std::int64_t total(int k) const noexcept;

  const std::map<int, std::map<Label, std::int64_t>>& entries() const noexcept { return entries_; }

  /// Entries with sizes > k only (the input of the offset determinism claim).
  SlotComponents above(int k) const;

  /// Entries with labels in [first[k], last[k]] for each k present in the bounds.
  SlotComponents restricted(const std::map<int, std::pair<Label, Label>>& bounds) const;

  friend bool operator==(const SlotComponents&, const SlotComponents&) = default;

 private:
  std::map<int, std::map<Label, std::int64_t>> entries_;  // only nonzero
};

/// Number of k-solitons appended to each k-slot, labelled from `record_zero`.
/// Throws PreconditionError if `record_zero` is not a record.
SlotComponents components(const BallConfig& config, Site record_zero = 0);

/// Which k-slot a soliton is appended to: the last k-slot strictly left of it.
Label appended_label(const SlotTable& table, const Soliton& soliton);

/// "slots v1" text format. The optional extent line records how many
/// excursions left and right of Record 0 the components describe.
struct ComponentsFile {
  SlotComponents zeta;
  std::optional<std::pair<Label, Label>> extent;  // (nLeft, nRight)
};

std::string format_components(const SlotComponents& zeta, std::optional<std::pair<Label, Label>> extent = {});
ComponentsFile parse_components(std::string_view text);

/// J_m^t and o_k^t for t = 0..steps.
struct FlowReport {
  std::size_t steps = 0;
  std::map<int, std::vector<std::int64_t>> crossings;  // J[m][t]
  std::map<int, std::vector<std::int64_t>> offsets;    // o[k][t], k = 1..max size

  std::int64_t J(int m, std::size_t t) const;
  std::int64_t o(int k, std::size_t t) const;
};

class Evolution;

/// Site of Record 0 of T^t xi, where Record 0 of xi is `record_zero`.
Site record_zero_after(const Evolution& evolution, Site record_zero, std::size_t t);

/// Flow of solitons through Record 0 by tracking every soliton left of it.
/// If `window_end` is given, a tracked soliton reaching it raises PreconditionError.
FlowReport soliton_flow(const BallConfig& config, std::size_t steps, Site record_zero,
                        std::optional<Site> window_end = std::nullopt);
FlowReport soliton_flow(const Evolution& evolution, Site record_zero, std::optional<Site> window_end = std::nullopt);

struct ShiftMismatch {
  int k = 0;
  Label i = 0;
  std::int64_t expected = 0;  // M_k xi(i - o - kt)
  std::int64_t actual = 0;    // M_k T^t xi(i)
};

struct ShiftReport {
  bool holds = true;
  std::optional<ShiftMismatch> mismatch;
  FlowReport flow;
};

/// Checks M_k T^t xi(i) = M_k xi(i - o_k^t - k t) for every k and label.
ShiftReport verify_component_shift(const BallConfig& config, std::size_t t, Site record_zero = 0);
ShiftReport verify_component_shift(const Evolution& evolution, std::size_t t, Site record_zero = 0);

/// pi^{k,t} = s_k(T^t xi, o_k^t + k t + j).
Site tagged_slot(const BallConfig& config, int k, Label j, std::size_t t, Site record_zero = 0);
Site tagged_slot(const Evolution& evolution, int k, Label j, std::size_t t, Site record_zero = 0);

}  // namespace bbs
