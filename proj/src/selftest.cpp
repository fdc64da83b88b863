#include "bbs/selftest.hpp"

#include <cmath>
#include <random>

#include "bbs/config.hpp"
#include "bbs/measures.hpp"
#include "bbs/reconstruct.hpp"
#include "bbs/slots.hpp"
#include "bbs/soliton.hpp"
#include "bbs/speeds.hpp"

namespace bbs {

namespace {

BallConfig random_config(std::mt19937_64& gen, std::size_t max_len, double max_density, bool record_at_zero) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_real_distribution<double> dens(0.0, max_density);
  const std::size_t n = len(gen);
  std::bernoulli_distribution ball(dens(gen));
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = ball(gen) ? 1 : 0;
  if (record_at_zero) bits[0] = 0;
  return BallConfig(std::move(bits)).record_terminated();
}

template <typename F>
CheckResult check(std::string name, int trials, F&& f) {
  CheckResult r{std::move(name), true, {}};
  try {
    for (int i = 0; i < trials && r.pass; ++i) {
      if (std::string why = f(i); !why.empty()) {
        r.pass = false;
        r.detail = why;
      }
    }
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = e.what();
  }
  return r;
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<CheckResult> out;

  out.push_back(check("carrier example", 1, [](int) -> std::string {
    const auto got = apply_T_carrier(parse_config("0010110000110100000")).to_string();
    return got == "0001001100001011000" ? "" : "got " + got;
  }));
  out.push_back(check("carrier equals reflection", 200, [&](int) -> std::string {
    const BallConfig c = random_config(gen, 120, 0.45, false);
    const BallConfig a = apply_T_carrier(c);
    BallConfig b = apply_T_reflect(lift(c)).project();
    b.pad_to(a.size());
    return a == b ? "" : c.to_string();
  }));
  out.push_back(check("stream equals batch", 200, [&](int) -> std::string {
    const BallConfig c = random_config(gen, 120, 0.45, false);
    const SolitonSet a = identify_stream(c), b = identify_batch(c);
    return a.by_size == b.by_size && a.record_sites == b.record_sites ? "" : c.to_string();
  }));
  out.push_back(check("tail to head pairing", 200, [&](int) -> std::string {
    const BallConfig c = random_config(gen, 120, 0.45, false);
    pair_one_step(identify(c), apply_T_carrier(c));
    return "";
  }));
  out.push_back(check("decompose then reconstruct", 200, [&](int) -> std::string {
    const BallConfig c = random_config(gen, 120, 0.45, true);
    const auto [left, right] = natural_extent(c);
    const Reconstruction r = reconstruct(components(c), static_cast<std::size_t>(right), static_cast<std::size_t>(left));
    return r.config == c ? "" : c.to_string();
  }));
  out.push_back(check("component shift", 50, [&](int i) -> std::string {
    const BallConfig c = random_config(gen, 120, 0.45, true);
    const RecordIndex rec = records(c);
    const Site anchor = rec.positions()[rec.count() / 2];
    const ShiftReport rep = verify_component_shift(c, static_cast<std::size_t>(1 + i % 5), anchor);
    return rep.holds ? "" : c.to_string();
  }));
  out.push_back(check("speed identities", 50, [&](int) -> std::string {
    std::uniform_int_distribution<int> kk(1, 6);
    std::vector<double> rho(static_cast<std::size_t>(kk(gen)));
    double load = 0.0;
    for (std::size_t k = 0; k < rho.size(); ++k) {
      rho[k] = std::uniform_real_distribution<double>(0.0, 0.05)(gen);
      load += 2.0 * static_cast<double>(k + 1) * rho[k];
    }
    if (load >= 0.9) return "";
    const SpeedResiduals r = speed_residuals(solve_explicit(rho));
    const double worst = std::max({r.interaction, r.vertical, r.record_speed, r.h_system});
    return worst < 1e-10 ? "" : "residual " + std::to_string(worst);
  }));
  return out;
}

}  // namespace bbs
