#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bbs {

/// Integer lattice site. Negative sites are the implicit empty left padding.
using Site = std::int64_t;

/// Height of the walk lift.
using Level = std::int64_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised when a structural precondition on a configuration does not hold
/// (not record-terminated, anchor is not a record, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a consistency check that must hold by theory fails.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite-support 0/1 ball configuration. Sites outside [0, size()) are empty.
class BallConfig {
 public:
  BallConfig() = default;
  explicit BallConfig(std::vector<std::uint8_t> bits);
  BallConfig(std::initializer_list<int> bits);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  /// Value at any site; zero outside the stored window.
  int operator[](Site x) const noexcept {
    return (x >= 0 && static_cast<std::size_t>(x) < bits_.size()) ? bits_[static_cast<std::size_t>(x)] : 0;
  }
  void set(Site x, int value);

  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::size_t ball_count() const noexcept;

  /// Ball count over window length; zero for the empty window.
  double density() const noexcept;

  /// Extends (never shrinks) the stored window to `length` with zeros.
  void pad_to(std::size_t length);

  /// Copy restricted to [from, from + length) and re-indexed to start at 0.
  BallConfig window(Site from, std::size_t length) const;

  /// True iff the last stored site is a record (an empty window counts as terminated).
  bool ends_at_record() const;

  /// Smallest zero-padded extension whose last site is a record.
  BallConfig record_terminated() const;

  std::string to_string() const;

  friend bool operator==(const BallConfig&, const BallConfig&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Parses '0'/'1' characters, ignoring whitespace.
BallConfig parse_config(std::string_view text);

/// Integer walk with unit steps, up at balls. The base value at site -1 is 0
/// and the empty left padding makes every negative site a record.
class WalkLift {
 public:
  WalkLift() = default;
  explicit WalkLift(std::vector<Level> values) : values_(std::move(values)) {}

  std::size_t size() const noexcept { return values_.size(); }

  /// Stored heights xi(0..size-1).
  std::span<const Level> values() const noexcept { return values_; }

  /// xi(x) at any site, continuing downward on both paddings.
  Level at(Site x) const noexcept;

  /// min_{y <= x} xi(y).
  Level running_min(Site x) const noexcept;

  /// Recovers the ball configuration; throws ConsistencyError on a non-unit step.
  BallConfig project() const;

 private:
  std::vector<Level> values_;
};

WalkLift lift(const BallConfig& config);

/// Positions of records r(xi, j): the leftmost site where the walk takes the value -j.
class RecordIndex {
 public:
  RecordIndex() = default;
  RecordIndex(std::vector<Site> positions, Level end_level, std::size_t window)
      : positions_(std::move(positions)), end_level_(end_level), window_(window) {}

  /// In-window record sites, increasing. The j-th entry has level j + 1.
  std::span<const Site> positions() const noexcept { return positions_; }
  std::size_t count() const noexcept { return positions_.size(); }

  /// r(xi, j) for any label; labels <= 0 are the virtual records at j - 1 and
  /// labels past the window continue into the right padding.
  Site position_of(Level j) const noexcept;

  /// Label j of a record site, or nullopt if x is not a record.
  std::optional<Level> label_of(Site x) const noexcept;

  bool is_record(Site x) const noexcept { return label_of(x).has_value(); }

 private:
  std::vector<Site> positions_;
  Level end_level_ = 0;  // xi at the last stored site
  std::size_t window_ = 0;
};

RecordIndex records(const BallConfig& config);
RecordIndex records(const WalkLift& walk);

/// One carrier pass. The window grows by the final carrier load.
BallConfig apply_T_carrier(const BallConfig& config);

/// T as reflection of the walk about its running minimum: 2 min_{y<=x} xi(y) - xi(x).
WalkLift apply_T_reflect(const WalkLift& walk);

BallConfig apply_T(const BallConfig& config, std::size_t steps = 1);

struct Excursion {
  Site left_record = 0;   // y1
  Site right_record = 0;  // y2
  Level height = 0;       // max of xi above xi(y1) on the support

  bool empty() const noexcept { return right_record == left_record + 1; }
  /// Support sites y1+1 .. y2-1.
  std::size_t support_size() const noexcept { return static_cast<std::size_t>(right_record - left_record - 1); }
  /// Excursion length counting its preceding record.
  std::size_t length() const noexcept { return static_cast<std::size_t>(right_record - left_record); }
};

/// Excursions between consecutive records, starting from the virtual record
/// at -1. The last excursion must be closed either by the last stored site or
/// by the first padding site; otherwise PreconditionError.
std::vector<Excursion> excursions(const BallConfig& config);

}  // namespace bbs
