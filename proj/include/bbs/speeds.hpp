#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/soliton.hpp"

namespace bbs {

/// Per-size vectors are indexed by k - 1.
struct SpeedTable {
  int K = 0;
  std::vector<double> rho, alpha, w, s, v, h;
  double w0 = 1.0;
  double v0 = 0.0;
  double h0 = 0.0;
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(const std::string& what, double rcond) : std::runtime_error(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// Downward recursion for w, then s upward, from soliton densities per excursion.
SpeedTable solve_explicit(const std::vector<double>& rho);

/// Same table starting from the densities per k-slot.
SpeedTable solve_explicit_alpha(const std::vector<double>& alpha);

/// Dense solve of the interaction system from densities per site.
std::vector<double> solve_interaction(const std::vector<double>& rho_bar);

struct VerticalSpeeds {
  std::vector<double> h;
  double v0 = 0.0;
  double h0 = 0.0;
  std::vector<double> v;  // h_k w0 - v0
};

VerticalSpeeds solve_vertical(const std::vector<double>& rho);

struct SpeedResiduals {
  double interaction = 0.0;  // max |v_interaction - v|
  double vertical = 0.0;     // max |h_k w0 - v0 - v_k|
  double record_speed = 0.0; // |sum 2 m rho_m v_m - v0|
  double h_system = 0.0;     // max residual of the h_k equations
};

SpeedResiduals speed_residuals(const SpeedTable& table);

/// Tab separated table with header "k rho alpha w s v h" and w0, v0, h0 footers.
std::string format_speed_table(const SpeedTable& table);

struct TaggedSoliton {
  SolitonRef ref;                          // in the initial configuration
  std::vector<Site> x;                     // leftmost site at t = 0..T
  std::vector<Site> slot;                  // site of the k-slot it is appended to
  std::vector<std::int64_t> y;             // records passed, y_k^t
  std::map<int, std::vector<int>> halves;  // half collisions with m-solitons by time t
  std::vector<std::size_t> nested;         // solitons nested with it at time t

  int size() const noexcept { return ref.size; }
  double collisions(int m, std::size_t t) const;
};

struct TaggedRecord {
  Level label = 0;
  std::vector<Site> beta;
};

struct TrajectorySet {
  std::size_t steps = 0;
  std::vector<TaggedSoliton> solitons;
  std::vector<TaggedRecord> records;
};

struct TrackTags {
  std::vector<SolitonRef> solitons;
  std::vector<Level> records;  // record labels
};

/// Largest initial soliton size times (steps + 2).
std::size_t tracking_margin(const BallConfig& initial, std::size_t steps);

/// Up to `per_size` solitons of each size and `n_records` records, evenly
/// spread over [from, to).
TrackTags select_tags(const BallConfig& initial, std::size_t per_size, std::size_t n_records, Site from, Site to);

/// Follows every tag through T^t via pair_one_step. Throws PreconditionError
/// before running if a tag lies within the margin of either window edge.
TrajectorySet track_trajectories(const BallConfig& initial, std::size_t steps, const TrackTags& tags);

struct SpeedEstimate {
  std::size_t samples = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

struct EmpiricalSpeeds {
  std::map<int, SpeedEstimate> v;  // sites per step
  std::map<int, SpeedEstimate> h;  // records per step
  SpeedEstimate v0;                // minus the tagged-record slope
};

/// Least-squares slope of values against t = 0..n-1.
double ls_slope(const std::vector<double>& values);

EmpiricalSpeeds empirical_speeds(const TrajectorySet& traj);

}  // namespace bbs
