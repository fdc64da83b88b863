#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/measures.hpp"
#include "bbs/speeds.hpp"

namespace bbs {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Sampler { iid, components, append };

struct RunParams {
  std::uint64_t seed = 0;
  Sampler sampler = Sampler::iid;
  double lambda = 0.25;
  std::vector<double> rho;
  std::vector<double> alpha;
  std::string law = "bernoulli";  // components sampler marginals
  int K = 0;                      // 0: length of rho / alpha
  std::size_t n = 2000;
  std::size_t steps = 140;
  std::size_t mix_steps = 50;
  std::size_t tags = 20;          // tagged solitons per size and tagged records
  std::size_t repeat = 1;         // raster row repeat
};

/// key=value pairs separated by whitespace or newlines; '#' starts a comment.
/// Unknown keys and malformed values raise UsageError.
RunParams parse_run_params(std::string_view text);

/// Canonical key=value text, one per line, defaults included.
std::string format_run_params(const RunParams& params);

std::vector<double> parse_list(std::string_view text);

/// Draws the initial configuration the parameters describe.
SampleBatch sample_initial(const RunParams& params);

/// rho or alpha from the parameters, or densities estimated from `initial`
/// when neither is given.
SpeedTable predicted_speeds(const RunParams& params, const BallConfig& initial);

/// Writes params.txt, init.cfg, final.cfg, stats.tsv, speeds.tsv,
/// trajectories.tsv, raster.pbm and raster.pgm into `dir`.
void run(const RunParams& params, const std::filesystem::path& dir);

std::string format_trajectories(const TrajectorySet& traj);

}  // namespace bbs
