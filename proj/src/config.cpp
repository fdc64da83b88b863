#include "bbs/config.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace bbs {

BallConfig::BallConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) throw std::invalid_argument("BallConfig: value other than 0/1 at site " + std::to_string(i));
  }
}

BallConfig::BallConfig(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::invalid_argument("BallConfig: value other than 0/1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

void BallConfig::set(Site x, int value) {
  if (x < 0) throw std::out_of_range("BallConfig::set: negative site");
  if (value != 0 && value != 1) throw std::invalid_argument("BallConfig::set: value other than 0/1");
  if (static_cast<std::size_t>(x) >= bits_.size()) pad_to(static_cast<std::size_t>(x) + 1);
  bits_[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(value);
}

std::size_t BallConfig::ball_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

double BallConfig::density() const noexcept {
  return bits_.empty() ? 0.0 : static_cast<double>(ball_count()) / static_cast<double>(bits_.size());
}

void BallConfig::pad_to(std::size_t length) {
  if (length > bits_.size()) bits_.resize(length, 0);
}

BallConfig BallConfig::window(Site from, std::size_t length) const {
  std::vector<std::uint8_t> out(length, 0);
  for (std::size_t i = 0; i < length; ++i) out[i] = static_cast<std::uint8_t>((*this)[from + static_cast<Site>(i)]);
  return BallConfig(std::move(out));
}

bool BallConfig::ends_at_record() const {
  if (bits_.empty()) return true;
  // Last site is a record iff it is empty and the walk there is a new minimum.
  Level level = 0;
  Level lowest = 0;
  for (std::size_t i = 0; i + 1 < bits_.size(); ++i) {
    level += bits_[i] ? 1 : -1;
    lowest = std::min(lowest, level);
  }
  return bits_.back() == 0 && level - 1 < lowest;
}

BallConfig BallConfig::record_terminated() const {
  if (ends_at_record()) return *this;
  Level level = 0;
  Level lowest = 0;
  for (auto b : bits_) {
    level += b ? 1 : -1;
    lowest = std::min(lowest, level);
  }
  BallConfig out = *this;
  // level - 1 - d must drop below lowest: d = level - lowest zeros after the first.
  out.pad_to(bits_.size() + static_cast<std::size_t>(level - lowest + 1));
  return out;
}

std::string BallConfig::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BallConfig parse_config(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '0' || c == '1') {
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw ParseError(i, "invalid character '" + std::string(1, c) + "' at index " + std::to_string(i));
    }
  }
  return BallConfig(std::move(bits));
}

Level WalkLift::at(Site x) const noexcept {
  if (x < 0) return -1 - x;
  const auto n = static_cast<Site>(values_.size());
  if (x < n) return values_[static_cast<std::size_t>(x)];
  const Level end = values_.empty() ? 0 : values_.back();
  return end - (x - n + 1);
}

Level WalkLift::running_min(Site x) const noexcept {
  if (x < 0) return at(x);
  Level m = 0;
  const auto n = static_cast<Site>(values_.size());
  const Site last = std::min(x, n - 1);
  for (Site y = 0; y <= last; ++y) m = std::min(m, values_[static_cast<std::size_t>(y)]);
  return std::min(m, at(x));
}

BallConfig WalkLift::project() const {
  std::vector<std::uint8_t> bits(values_.size());
  Level prev = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const Level step = values_[i] - prev;
    if (step != 1 && step != -1) throw ConsistencyError("WalkLift: non-unit step at site " + std::to_string(i));
    bits[i] = step == 1 ? 1 : 0;
    prev = values_[i];
  }
  return BallConfig(std::move(bits));
}

WalkLift lift(const BallConfig& config) {
  std::vector<Level> values(config.size());
  Level level = 0;
  const auto bits = config.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    level += bits[i] ? 1 : -1;
    values[i] = level;
  }
  return WalkLift(std::move(values));
}

Site RecordIndex::position_of(Level j) const noexcept {
  if (j <= 0) return j - 1;
  if (static_cast<std::size_t>(j) <= positions_.size()) return positions_[static_cast<std::size_t>(j - 1)];
  // Right padding: xi(window - 1 + d) = end_level - d.
  return static_cast<Site>(window_) - 1 + end_level_ + j;
}

std::optional<Level> RecordIndex::label_of(Site x) const noexcept {
  if (x < 0) return x + 1;
  if (static_cast<std::size_t>(x) < window_) {
    auto it = std::lower_bound(positions_.begin(), positions_.end(), x);
    if (it == positions_.end() || *it != x) return std::nullopt;
    return static_cast<Level>(it - positions_.begin()) + 1;
  }
  const Level value = end_level_ - (x - static_cast<Site>(window_) + 1);
  const auto lowest = -static_cast<Level>(positions_.size());
  if (value < lowest) return -value;
  return std::nullopt;
}

RecordIndex records(const WalkLift& walk) {
  std::vector<Site> positions;
  Level lowest = 0;
  const auto values = walk.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < lowest) {
      lowest = values[i];
      positions.push_back(static_cast<Site>(i));
    }
  }
  return RecordIndex(std::move(positions), values.empty() ? 0 : values.back(), values.size());
}

RecordIndex records(const BallConfig& config) { return records(lift(config)); }

BallConfig apply_T_carrier(const BallConfig& config) {
  const auto bits = config.bits();
  std::vector<std::uint8_t> out(bits.size(), 0);
  std::size_t load = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) {
      ++load;
    } else if (load > 0) {
      out[i] = 1;
      --load;
    }
  }
  out.resize(bits.size() + load, 1);
  return BallConfig(std::move(out));
}

WalkLift apply_T_reflect(const WalkLift& walk) {
  const auto values = walk.values();
  Level lowest = 0;  // running minimum includes the virtual sites, whose minimum is xi(-1) = 0
  std::vector<Level> out;
  out.reserve(values.size());
  for (auto v : values) {
    lowest = std::min(lowest, v);
    out.push_back(2 * lowest - v);
  }
  // Materialize until the padding walk reaches the running minimum again.
  Level v = values.empty() ? 0 : values.back();
  while (v > lowest) {
    --v;
    out.push_back(2 * lowest - v);
  }
  return WalkLift(std::move(out));
}

BallConfig apply_T(const BallConfig& config, std::size_t steps) {
  BallConfig current = config;
  for (std::size_t t = 0; t < steps; ++t) current = apply_T_carrier(current);
  return current;
}

std::vector<Excursion> excursions(const BallConfig& config) {
  const WalkLift walk = lift(config);
  const RecordIndex index = records(walk);
  const auto n = static_cast<Site>(config.size());

  std::vector<Site> bounds;
  bounds.reserve(index.count() + 2);
  bounds.push_back(-1);
  for (Site r : index.positions()) bounds.push_back(r);
  if (bounds.back() != n - 1) {
    // The trailing excursion may only be closed by the first padding site.
    if (!index.is_record(n)) {
      throw PreconditionError("excursions: configuration does not end at a record (window of " +
                              std::to_string(n) + " sites)");
    }
    bounds.push_back(n);
  }

  std::vector<Excursion> out;
  out.reserve(bounds.size() - 1);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Excursion e{bounds[i], bounds[i + 1], 0};
    const Level base = walk.at(e.left_record);
    for (Site x = e.left_record + 1; x < e.right_record; ++x) e.height = std::max(e.height, walk.at(x) - base);
    out.push_back(e);
  }
  return out;
}

}  // namespace bbs
