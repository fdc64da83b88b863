#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bbs/config.hpp"
#include "bbs/reconstruct.hpp"
#include "bbs/slots.hpp"

namespace bbs {

/// Law of a single component zeta_k(0).
struct Marginal {
  enum class Kind { bernoulli, geometric, constant };
  Kind kind = Kind::constant;
  double param = 0.0;  // success probability, mean, or the constant

  static Marginal bernoulli(double p);
  static Marginal geometric(double mean);
  static Marginal constant(std::int64_t c);

  double mean() const noexcept;
  double pmf(std::int64_t n) const;
  /// Inverse-cdf draw from a uniform in [0, 1).
  std::int64_t draw(double u) const;
};

/// Independent components, zeta_k(i) ~ per_k[k] for k <= K and zero above.
struct ComponentLaw {
  std::map<int, Marginal> per_k;
  int K = 0;

  static ComponentLaw bernoulli(const std::vector<double>& alpha);
  static ComponentLaw geometric(const std::vector<double>& alpha);

  double alpha(int k) const noexcept;
  std::vector<double> alphas() const;
};

/// Uniform in [0, 1) determined by (seed, k, i) alone.
double counter_uniform(std::uint64_t seed, int k, Label i) noexcept;

/// Seed for replica `index` derived from a base seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// zeta_k(i) for every k and every label in bounds[k] = [first, last].
SlotComponents sample_components(const ComponentLaw& law, const std::map<int, std::pair<Label, Label>>& bounds,
                                 std::uint64_t seed);

/// The same draws, exposed lazily.
ComponentSource component_source(const ComponentLaw& law, std::uint64_t seed);

/// M^{-1} zeta for i.i.d. zeta: a configuration seen from a typical record,
/// with Record 0 at the returned origin.
Reconstruction sample_hat_mu(const ComponentLaw& law, std::size_t n_right, std::uint64_t seed, std::size_t n_left = 0);

/// The first n sites of M^{-1} zeta built rightward from Record 0 at site 0.
BallConfig sample_hat_mu_sites(const ComponentLaw& law, std::size_t n, std::uint64_t seed);

/// Origin chosen by length-biased excursion selection and a uniform site in
/// the chosen excursion (its record included). Only complete excursions count.
Site inverse_palm_origin(const BallConfig& config, std::uint64_t seed);

struct PalmTarget {
  enum class Kind { records, soliton_leftmost };
  Kind kind = Kind::records;
  int size = 0;  // soliton size for soliton_leftmost

  static PalmTarget records() { return {Kind::records, 0}; }
  static PalmTarget soliton(int k) { return {Kind::soliton_leftmost, k}; }
};

struct PalmSample {
  std::size_t source = 0;  // index into the input configurations
  Site origin = 0;
};

struct PalmBatch {
  std::vector<PalmSample> samples;
  std::size_t skipped = 0;
};

/// Re-centers each configuration at a uniform point of the target set lying
/// in [margin, size - margin). Configurations with no such point are skipped.
PalmBatch palm_condition(const std::vector<BallConfig>& configs, PalmTarget target, std::uint64_t seed,
                         std::size_t margin = 0);

/// Points of the target set of one configuration, increasing.
std::vector<Site> palm_points(const BallConfig& config, PalmTarget target);

BallConfig sample_bernoulli(double lambda, std::size_t n, std::uint64_t seed);

/// One k-soliton after each record with probability rho[k-1], independently
/// over k, followed by `mix_steps` applications of T. Returns the n sites
/// after a left margin of max_size * (mix_steps + 2).
BallConfig sample_append_mix(const std::vector<double>& rho, std::size_t n, std::size_t mix_steps, std::uint64_t seed);

struct DensityEstimate {
  std::map<int, double> rho;      // k-solitons per excursion
  std::map<int, double> rho_bar;  // k-solitons per site
  double w0 = 1.0;                // mean excursion length, record included
  std::size_t excursions = 0;
};

/// Counts over the complete excursions between the first and last record of
/// the window.
DensityEstimate estimate_densities(const BallConfig& config);

struct SampleBatch {
  std::uint64_t seed = 0;
  std::vector<BallConfig> configs;
  std::string provenance;
};

struct ChiSquare {
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// Goodness of fit of counts against probabilities. Cells with expected count
/// below `min_expected` are pooled into their neighbour.
ChiSquare chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probabilities,
                         double min_expected = 5.0);

/// Homogeneity of two count vectors over the same cells (empty cells dropped).
ChiSquare chi_square_homogeneity(const std::vector<double>& a, const std::vector<double>& b);

/// Frequencies of the 2^len words of the non-overlapping length-len blocks of
/// config[from, to).
std::vector<double> block_counts(const BallConfig& config, Site from, Site to, int len);

}  // namespace bbs
