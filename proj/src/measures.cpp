#include "bbs/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

#include "bbs/soliton.hpp"

namespace bbs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double to_unit(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + ": probability outside [0, 1]");
}

}  // namespace

Marginal Marginal::bernoulli(double p) {
  check_probability(p, "Marginal::bernoulli");
  return {Kind::bernoulli, p};
}

Marginal Marginal::geometric(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("Marginal::geometric: bad mean");
  return {Kind::geometric, mean};
}

Marginal Marginal::constant(std::int64_t c) {
  if (c < 0) throw std::invalid_argument("Marginal::constant: negative count");
  return {Kind::constant, static_cast<double>(c)};
}

double Marginal::mean() const noexcept { return param; }

double Marginal::pmf(std::int64_t n) const {
  if (n < 0) return 0.0;
  switch (kind) {
    case Kind::bernoulli:
      return n == 0 ? 1.0 - param : (n == 1 ? param : 0.0);
    case Kind::geometric: {
      const double q = param / (1.0 + param);
      return (1.0 - q) * std::pow(q, static_cast<double>(n));
    }
    case Kind::constant:
      return static_cast<double>(n) == param ? 1.0 : 0.0;
  }
  return 0.0;
}

std::int64_t Marginal::draw(double u) const {
  switch (kind) {
    case Kind::bernoulli:
      return u < param ? 1 : 0;
    case Kind::geometric: {
      if (param == 0.0) return 0;
      const double q = param / (1.0 + param);
      return static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log(q)));
    }
    case Kind::constant:
      return static_cast<std::int64_t>(param);
  }
  return 0;
}

namespace {

ComponentLaw law_from(const std::vector<double>& alpha, Marginal (*make)(double)) {
  ComponentLaw law;
  law.K = static_cast<int>(alpha.size());
  for (std::size_t k = 0; k < alpha.size(); ++k) law.per_k[static_cast<int>(k + 1)] = make(alpha[k]);
  return law;
}

}  // namespace

ComponentLaw ComponentLaw::bernoulli(const std::vector<double>& alpha) { return law_from(alpha, &Marginal::bernoulli); }

ComponentLaw ComponentLaw::geometric(const std::vector<double>& alpha) { return law_from(alpha, &Marginal::geometric); }

double ComponentLaw::alpha(int k) const noexcept {
  if (k > K) return 0.0;
  auto it = per_k.find(k);
  return it == per_k.end() ? 0.0 : it->second.mean();
}

std::vector<double> ComponentLaw::alphas() const {
  std::vector<double> out(static_cast<std::size_t>(K));
  for (int k = 1; k <= K; ++k) out[static_cast<std::size_t>(k - 1)] = alpha(k);
  return out;
}

double counter_uniform(std::uint64_t seed, int k, Label i) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(k));
  h = splitmix64(h ^ static_cast<std::uint64_t>(i));
  return to_unit(h);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

ComponentSource component_source(const ComponentLaw& law, std::uint64_t seed) {
  return [law, seed](int k, Label i) -> std::int64_t {
    if (k > law.K) return 0;
    auto it = law.per_k.find(k);
    if (it == law.per_k.end()) return 0;
    return it->second.draw(counter_uniform(seed, k, i));
  };
}

SlotComponents sample_components(const ComponentLaw& law, const std::map<int, std::pair<Label, Label>>& bounds,
                                 std::uint64_t seed) {
  const ComponentSource source = component_source(law, seed);
  SlotComponents out;
  for (const auto& [k, range] : bounds)
    for (Label i = range.first; i <= range.second; ++i)
      if (const auto c = source(k, i); c > 0) out.set(k, i, c);
  return out;
}

Reconstruction sample_hat_mu(const ComponentLaw& law, std::size_t n_right, std::uint64_t seed, std::size_t n_left) {
  return reconstruct(component_source(law, seed), law.K, n_right, n_left);
}

BallConfig sample_hat_mu_sites(const ComponentLaw& law, std::size_t n, std::uint64_t seed) {
  const ComponentSource source = component_source(law, seed);
  ComponentCursor cursor;
  std::vector<std::uint8_t> bits;
  bits.reserve(n);
  while (bits.size() < n) {
    const BuiltExcursion e = reconstruct_excursion(source, law.K, cursor);
    bits.push_back(0);
    bits.insert(bits.end(), e.bits.begin(), e.bits.end());
  }
  bits.resize(n);
  return BallConfig(std::move(bits));
}

Site inverse_palm_origin(const BallConfig& config, std::uint64_t seed) {
  const RecordIndex index = records(config);
  const auto rec = index.positions();
  if (rec.size() < 2) throw PreconditionError("inverse_palm_origin: no complete excursion");
  // Sites from the first to the last record, excluded: a uniform one of them is
  // a uniform site of a length-biased excursion.
  const auto span = static_cast<std::uint64_t>(rec.back() - rec.front());
  std::mt19937_64 gen(seed);
  const double u = to_unit(gen());
  return rec.front() + static_cast<Site>(std::min<std::uint64_t>(span - 1, static_cast<std::uint64_t>(u * static_cast<double>(span))));
}

std::vector<Site> palm_points(const BallConfig& config, PalmTarget target) {
  if (target.kind == PalmTarget::Kind::records) {
    const RecordIndex index = records(config);
    return {index.positions().begin(), index.positions().end()};
  }
  const SolitonSet set = identify(config);
  std::vector<Site> out;
  auto it = set.by_size.find(target.size);
  if (it != set.by_size.end())
    for (const Soliton& s : it->second)
      if (static_cast<std::size_t>(s.leftmost()) < config.size()) out.push_back(s.leftmost());
  std::sort(out.begin(), out.end());
  return out;
}

PalmBatch palm_condition(const std::vector<BallConfig>& configs, PalmTarget target, std::uint64_t seed,
                         std::size_t margin) {
  PalmBatch batch;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const auto lo = static_cast<Site>(margin);
    const auto hi = static_cast<Site>(configs[c].size()) - static_cast<Site>(margin);
    std::vector<Site> points;
    for (Site x : palm_points(configs[c], target))
      if (x >= lo && x < hi) points.push_back(x);
    if (points.empty()) {
      ++batch.skipped;
      continue;
    }
    std::mt19937_64 gen(derive_seed(seed, c));
    const auto pick = static_cast<std::size_t>(to_unit(gen()) * static_cast<double>(points.size()));
    batch.samples.push_back({c, points[std::min(pick, points.size() - 1)]});
  }
  return batch;
}

BallConfig sample_bernoulli(double lambda, std::size_t n, std::uint64_t seed) {
  if (!(lambda > 0.0 && lambda < 0.5)) throw std::invalid_argument("sample_bernoulli: lambda must lie in (0, 1/2)");
  std::mt19937_64 gen(seed);
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = to_unit(gen()) < lambda ? 1 : 0;
  return BallConfig(std::move(bits));
}

BallConfig sample_append_mix(const std::vector<double>& rho, std::size_t n, std::size_t mix_steps, std::uint64_t seed) {
  for (double p : rho) check_probability(p, "sample_append_mix");
  const auto K = rho.size();
  const std::size_t margin = std::max<std::size_t>(K, 1) * (mix_steps + 2);
  const std::size_t target = n + 2 * margin;
  std::mt19937_64 gen(seed);
  std::vector<std::uint8_t> bits;
  bits.reserve(target + 4 * K * K);
  while (bits.size() < target) {
    bits.push_back(0);
    for (std::size_t k = 1; k <= K; ++k) {
      if (to_unit(gen()) < rho[k - 1]) {
        bits.insert(bits.end(), k, 1);
        bits.insert(bits.end(), k, 0);
      }
    }
  }
  const BallConfig mixed = apply_T(BallConfig(std::move(bits)), mix_steps);
  return mixed.window(static_cast<Site>(margin), n);
}

DensityEstimate estimate_densities(const BallConfig& config) {
  const RecordIndex index = records(config);
  const auto rec = index.positions();
  if (rec.size() < 2) throw PreconditionError("estimate_densities: no complete excursion");
  DensityEstimate est;
  est.excursions = rec.size() - 1;
  const Site first = rec.front();
  const Site last = rec.back();
  est.w0 = static_cast<double>(last - first) / static_cast<double>(est.excursions);

  const SolitonSet set = identify(config);
  for (const auto& [k, list] : set.by_size) {
    std::size_t inside = 0;
    for (const Soliton& s : list)
      if (s.leftmost() > first && s.rightmost() < last) ++inside;
    if (inside == 0) continue;
    est.rho[k] = static_cast<double>(inside) / static_cast<double>(est.excursions);
    est.rho_bar[k] = est.rho[k] / est.w0;
  }
  return est;
}

ChiSquare chi_square_gof(const std::vector<double>& observed, const std::vector<double>& probabilities,
                         double min_expected) {
  if (observed.size() != probabilities.size()) throw std::invalid_argument("chi_square_gof: size mismatch");
  const double n = std::accumulate(observed.begin(), observed.end(), 0.0);
  std::vector<double> obs, expd;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t c = 0; c < observed.size(); ++c) {
    o_acc += observed[c];
    e_acc += n * probabilities[c];
    if (e_acc >= min_expected) {
      obs.push_back(o_acc);
      expd.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (!obs.empty()) {
    obs.back() += o_acc;
    expd.back() += e_acc;
  } else if (e_acc > 0.0) {
    obs.push_back(o_acc);
    expd.push_back(e_acc);
  }
  ChiSquare out;
  for (std::size_t c = 0; c < obs.size(); ++c) out.statistic += (obs[c] - expd[c]) * (obs[c] - expd[c]) / expd[c];
  out.df = static_cast<int>(obs.size()) - 1;
  if (out.df > 0) out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.df), out.statistic));
  return out;
}

ChiSquare chi_square_homogeneity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("chi_square_homogeneity: size mismatch");
  const double na = std::accumulate(a.begin(), a.end(), 0.0);
  const double nb = std::accumulate(b.begin(), b.end(), 0.0);
  ChiSquare out;
  int cells = 0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const double col = a[c] + b[c];
    if (col == 0.0) continue;
    ++cells;
    const double ea = na * col / (na + nb);
    const double eb = nb * col / (na + nb);
    out.statistic += (a[c] - ea) * (a[c] - ea) / ea + (b[c] - eb) * (b[c] - eb) / eb;
  }
  out.df = cells - 1;
  if (out.df > 0) out.p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(out.df), out.statistic));
  return out;
}

std::vector<double> block_counts(const BallConfig& config, Site from, Site to, int len) {
  std::vector<double> counts(std::size_t{1} << len, 0.0);
  for (Site x = from; x + len <= to; x += len) {
    std::size_t word = 0;
    for (int j = 0; j < len; ++j) word = (word << 1) | static_cast<std::size_t>(config[x + j]);
    counts[word] += 1.0;
  }
  return counts;
}

}  // namespace bbs
