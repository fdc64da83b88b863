#include "bbs/reconstruct.hpp"

#include <algorithm>

#include "bbs/evolution.hpp"

namespace bbs {

Label ComponentCursor::next_right(int k) const {
  auto it = right.find(k);
  return it == right.end() ? 0 : it->second;
}

Label ComponentCursor::lowest_left(int k) const {
  auto it = left.find(k);
  return it == left.end() ? 0 : it->second;
}

std::size_t n_slots_in_excursion(const SlotConfig& slots, const Excursion& excursion, int k) {
  std::size_t n = 1;
  for (Site x = excursion.left_record + 1; x < excursion.right_record; ++x)
    if (slots.is_slot(x, k)) ++n;
  return n;
}

namespace {

struct Cell {
  std::uint8_t bit;
  int order;
};

void insert_blocks(std::vector<Cell>& cells, std::ptrdiff_t after, int k, std::int64_t copies) {
  // A head site of a larger soliton is followed by a valley; records and tail
  // sites by a peak.
  const bool valley = after >= 0 && cells[static_cast<std::size_t>(after)].bit == 1;
  std::vector<Cell> block;
  block.reserve(static_cast<std::size_t>(2 * k));
  const std::uint8_t first = valley ? 0 : 1;
  for (int j = 0; j < k; ++j) block.push_back({first, j});
  for (int j = 0; j < k; ++j) block.push_back({static_cast<std::uint8_t>(1 - first), j});
  std::vector<Cell> run;
  run.reserve(block.size() * static_cast<std::size_t>(copies));
  for (std::int64_t c = 0; c < copies; ++c) run.insert(run.end(), block.begin(), block.end());
  cells.insert(cells.begin() + (after + 1), run.begin(), run.end());
}

}  // namespace

BuiltExcursion reconstruct_excursion(const ComponentSource& zeta, int max_size, ComponentCursor& cursor, Side side) {
  if (max_size < 0) throw std::invalid_argument("reconstruct_excursion: negative size bound");
  std::vector<Cell> cells;
  std::vector<std::ptrdiff_t> slots;
  for (int k = max_size; k >= 1; --k) {
    slots.assign(1, -1);
    for (std::size_t p = 0; p < cells.size(); ++p)
      if (cells[p].order >= k) slots.push_back(static_cast<std::ptrdiff_t>(p));
    const auto n = static_cast<Label>(slots.size());
    const Label base = side == Side::right ? cursor.next_right(k) : cursor.lowest_left(k) - n;
    for (Label idx = n - 1; idx >= 0; --idx) {
      const std::int64_t c = zeta(k, base + idx);
      if (c < 0) throw std::invalid_argument("reconstruct_excursion: negative component");
      if (c > 0) insert_blocks(cells, slots[static_cast<std::size_t>(idx)], k, c);
    }
    if (side == Side::right) {
      cursor.right[k] = base + n;
    } else {
      cursor.left[k] = base;
    }
  }
  BuiltExcursion out;
  out.bits.reserve(cells.size());
  out.order.reserve(cells.size());
  for (const Cell& c : cells) {
    out.bits.push_back(c.bit);
    out.order.push_back(c.order);
  }
  return out;
}

BuiltExcursion reconstruct_excursion(const SlotComponents& zeta, ComponentCursor& cursor, Side side) {
  return reconstruct_excursion([&zeta](int k, Label i) { return zeta.at(k, i); }, zeta.max_size(), cursor, side);
}

std::map<int, std::pair<Label, Label>> Reconstruction::consumed(int max_size) const {
  std::map<int, std::pair<Label, Label>> out;
  for (int k = 1; k <= max_size; ++k) out[k] = {cursor.lowest_left(k), cursor.next_right(k) - 1};
  return out;
}

Reconstruction reconstruct(const ComponentSource& zeta, int max_size, std::size_t n_right, std::size_t n_left) {
  Reconstruction out;
  std::vector<BuiltExcursion> left;
  left.reserve(n_left);
  for (std::size_t j = 0; j < n_left; ++j) left.push_back(reconstruct_excursion(zeta, max_size, out.cursor, Side::left));
  std::vector<BuiltExcursion> right;
  right.reserve(n_right);
  for (std::size_t j = 0; j < n_right; ++j) right.push_back(reconstruct_excursion(zeta, max_size, out.cursor, Side::right));

  std::vector<std::uint8_t> bits;
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    bits.push_back(0);
    bits.insert(bits.end(), it->bits.begin(), it->bits.end());
  }
  out.origin = static_cast<Site>(bits.size());
  for (const BuiltExcursion& e : right) {
    bits.push_back(0);
    bits.insert(bits.end(), e.bits.begin(), e.bits.end());
  }
  out.config = BallConfig(std::move(bits));
  return out;
}

Reconstruction reconstruct(const SlotComponents& zeta, std::size_t n_right, std::size_t n_left) {
  return reconstruct([&zeta](int k, Label i) { return zeta.at(k, i); }, zeta.max_size(), n_right, n_left);
}

std::pair<Label, Label> natural_extent(const BallConfig& config) {
  const BallConfig ext = config.record_terminated();
  const RecordIndex index = records(ext);
  if (!index.is_record(0)) throw PreconditionError("natural_extent: site 0 is not a record");
  return {0, static_cast<Label>(index.count())};
}

std::int64_t offset_from_components(const SlotComponents& zeta, int k, std::size_t t, std::size_t n_left,
                                    std::size_t n_right) {
  const Reconstruction larger = reconstruct(zeta.above(k), n_right, n_left);
  const FlowReport flow = soliton_flow(larger.config, t, larger.origin);
  return flow.o(k, t);
}

}  // namespace bbs
