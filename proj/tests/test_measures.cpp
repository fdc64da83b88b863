#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bbs/measures.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace bbs;

namespace {

// Copies of the tile closed by one more record.
BallConfig tiled(const std::string& tile, int copies) {
  std::string s;
  for (int i = 0; i < copies; ++i) s += tile;
  return parse_config(s + "0");
}

}  // namespace

TEST_CASE("marginals") {
  const Marginal b = Marginal::bernoulli(0.3);
  CHECK(b.mean() == doctest::Approx(0.3));
  CHECK(b.pmf(0) == doctest::Approx(0.7));
  CHECK(b.pmf(1) == doctest::Approx(0.3));
  CHECK(b.pmf(2) == 0.0);

  const Marginal g = Marginal::geometric(0.5);
  const double q = 0.5 / 1.5;
  CHECK(g.mean() == doctest::Approx(0.5));
  for (int n = 0; n < 6; ++n) CHECK(g.pmf(n) == doctest::Approx((1 - q) * std::pow(q, n)));

  const Marginal c = Marginal::constant(2);
  CHECK(c.draw(0.0) == 2);
  CHECK(c.draw(0.999) == 2);
  CHECK(c.pmf(2) == 1.0);

  double sum_b = 0, sum_g = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = (i + 0.5) / n;
    sum_b += static_cast<double>(b.draw(u));
    sum_g += static_cast<double>(g.draw(u));
  }
  CHECK(sum_b / n == doctest::Approx(0.3).epsilon(0.01));
  CHECK(sum_g / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK_THROWS_AS(Marginal::bernoulli(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Marginal::geometric(-1), std::invalid_argument);
}

TEST_CASE("component laws") {
  const ComponentLaw law = ComponentLaw::geometric({0.2, 0.1});
  CHECK(law.K == 2);
  CHECK(law.alpha(1) == doctest::Approx(0.2));
  CHECK(law.alpha(3) == 0.0);
  CHECK(law.alphas() == std::vector<double>{0.2, 0.1});
}

TEST_CASE("counter uniforms are reproducible and spread") {
  CHECK(counter_uniform(5, 1, 7) == counter_uniform(5, 1, 7));
  CHECK(counter_uniform(5, 1, 7) != counter_uniform(5, 1, 8));
  CHECK(counter_uniform(5, 1, 7) != counter_uniform(5, 2, 7));
  CHECK(counter_uniform(5, 1, 7) != counter_uniform(6, 1, 7));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  double sum = 0;
  for (Label i = -5000; i < 5000; ++i) {
    const double u = counter_uniform(9, 1, i);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("sampled components match their law") {
  const ComponentLaw law = ComponentLaw::geometric({0.3, 0.15, 0.05});
  std::map<int, std::pair<Label, Label>> bounds;
  for (int k = 1; k <= 4; ++k) bounds[k] = {-20000, 19999};
  const SlotComponents z = sample_components(law, bounds, 3);
  CHECK(static_cast<double>(z.total(1)) / 40000 == doctest::Approx(0.3).epsilon(0.05));
  CHECK(static_cast<double>(z.total(2)) / 40000 == doctest::Approx(0.15).epsilon(0.06));
  CHECK(static_cast<double>(z.total(3)) / 40000 == doctest::Approx(0.05).epsilon(0.1));
  CHECK(z.total(4) == 0);
  const ComponentSource src = component_source(law, 3);
  for (Label i = -50; i < 50; ++i) CHECK(src(2, i) == z.at(2, i));
  CHECK(sample_components(law, bounds, 3) == z);
}

TEST_CASE("hat-mu samples") {
  const ComponentLaw law = ComponentLaw::bernoulli({0.2, 0.1});
  const Reconstruction a = sample_hat_mu(law, 50, 7, 10);
  const Reconstruction b = sample_hat_mu(law, 50, 7, 10);
  CHECK(a.config == b.config);
  CHECK(a.origin == b.origin);
  CHECK(records(a.config).is_record(a.origin));
  CHECK(sample_hat_mu(law, 50, 8, 10).config != a.config);
  // The left part does not disturb what is built right of Record 0.
  const Reconstruction right = sample_hat_mu(law, 50, 7);
  CHECK(a.config.window(a.origin, a.config.size() - static_cast<std::size_t>(a.origin)) == right.config);

  const BallConfig s = sample_hat_mu_sites(law, 1000, 7);
  CHECK(s.size() == 1000);
  CHECK(records(s).is_record(0));
  CHECK(s.window(0, right.config.size()) == right.config);
}

TEST_CASE("bernoulli sampler") {
  const BallConfig c = sample_bernoulli(0.25, 100000, 1);
  CHECK(c.size() == 100000);
  CHECK(c.density() == doctest::Approx(0.25).epsilon(0.03));
  CHECK(sample_bernoulli(0.25, 100000, 1) == c);
  CHECK(sample_bernoulli(0.25, 100000, 2) != c);
  CHECK_THROWS_AS(sample_bernoulli(0.5, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_bernoulli(0.0, 10, 1), std::invalid_argument);
}

TEST_CASE("append-mix sampler") {
  const std::vector<double> rho{0.05, 0.02};
  const BallConfig c = sample_append_mix(rho, 5000, 10, 4);
  CHECK(c.size() == 5000);
  CHECK(sample_append_mix(rho, 5000, 10, 4) == c);
  const DensityEstimate d = estimate_densities(c);
  CHECK(d.rho.at(1) == doctest::Approx(0.05).epsilon(0.3));
  CHECK(d.rho.at(2) == doctest::Approx(0.02).epsilon(0.4));
}

TEST_CASE("density estimates") {
  const DensityEstimate d = estimate_densities(tiled("011000", 20));
  CHECK(d.rho.at(2) == doctest::Approx(0.5));
  CHECK(d.w0 == doctest::Approx(3.0));
  CHECK(d.rho_bar.at(2) == doctest::Approx(1.0 / 6));
  CHECK(d.rho.count(1) == 0);

  const DensityEstimate z = estimate_densities(parse_config("00000"));
  CHECK(z.w0 == doctest::Approx(1.0));
  CHECK(z.excursions == 4);
}

TEST_CASE("mean excursion length is one plus twice the weighted soliton density") {
  std::mt19937_64 gen(51);
  for (int i = 0; i < 200; ++i) {
    const BallConfig c = test::random_terminated(gen, 300, 0.45);
    const DensityEstimate d = estimate_densities(c);
    if (d.excursions == 0) continue;
    double w = 1.0, balls = 0.0;
    for (const auto& [k, r] : d.rho) {
      w += 2.0 * k * r;
      balls += k * r;
    }
    CHECK(d.w0 == doctest::Approx(w));
    for (const auto& [k, r] : d.rho) CHECK(d.rho_bar.at(k) == doctest::Approx(r / d.w0));
    // balls per site inside the complete excursions
    const RecordIndex rec = records(c);
    const Site first = rec.positions().front(), last = rec.positions().back();
    const BallConfig inner = c.window(first + 1, static_cast<std::size_t>(last - first));
    CHECK(static_cast<double>(inner.ball_count()) / static_cast<double>(last - first) ==
          doctest::Approx(balls / d.w0));
  }
}

TEST_CASE("inverse palm origin") {
  const BallConfig c = tiled("011000", 50);
  const RecordIndex rec = records(c);
  int balls = 0;
  const int draws = 6000;
  for (int s = 0; s < draws; ++s) {
    const Site o = inverse_palm_origin(c, static_cast<std::uint64_t>(s));
    REQUIRE(o >= rec.positions().front());
    REQUIRE(o < rec.positions().back());
    balls += c[o];
  }
  // Length-biased excursions and a uniform site inside make every site of
  // the tiling equally likely.
  CHECK(static_cast<double>(balls) / draws == doctest::Approx(1.0 / 3).epsilon(0.08));
  CHECK_THROWS_AS(inverse_palm_origin(parse_config("0"), 1), PreconditionError);
}

TEST_CASE("palm conditioning") {
  const BallConfig c = parse_config("0110001000");
  CHECK(palm_points(c, PalmTarget::soliton(2)) == std::vector<Site>{1});
  CHECK(palm_points(c, PalmTarget::soliton(1)) == std::vector<Site>{6});
  const std::vector<Site> recs = palm_points(c, PalmTarget::records());
  const RecordIndex rec = records(c);
  CHECK(recs == std::vector<Site>(rec.positions().begin(), rec.positions().end()));

  const std::vector<BallConfig> configs{c, parse_config("000000"), tiled("011000", 10)};
  const PalmBatch batch = palm_condition(configs, PalmTarget::soliton(2), 3, 1);
  CHECK(batch.skipped == 1);
  REQUIRE(batch.samples.size() == 2);
  for (const PalmSample& s : batch.samples) {
    const auto pts = palm_points(configs[s.source], PalmTarget::soliton(2));
    CHECK(std::find(pts.begin(), pts.end(), s.origin) != pts.end());
    CHECK(s.origin >= 1);
  }
  const PalmBatch again = palm_condition(configs, PalmTarget::soliton(2), 3, 1);
  CHECK(again.samples[1].origin == batch.samples[1].origin);
}

TEST_CASE("chi-square goodness of fit") {
  const ChiSquare perfect = chi_square_gof({50, 50}, {0.5, 0.5});
  CHECK(perfect.statistic == doctest::Approx(0.0));
  CHECK(perfect.df == 1);
  CHECK(perfect.p_value == doctest::Approx(1.0));

  const ChiSquare off = chi_square_gof({10, 20}, {0.5, 0.5});
  CHECK(off.statistic == doctest::Approx(10.0 / 3));
  CHECK(off.p_value == doctest::Approx(0.0679).epsilon(0.01));

  // The last two cells expect 1 and 0.1 counts and are pooled with the second.
  const ChiSquare pooled = chi_square_gof({60, 38, 2, 0}, {0.6, 0.389, 0.01, 0.001});
  CHECK(pooled.df == 1);
}

TEST_CASE("chi-square homogeneity") {
  const ChiSquare same = chi_square_homogeneity({10, 20, 30}, {10, 20, 30});
  CHECK(same.statistic == doctest::Approx(0.0));
  CHECK(same.df == 2);
  const ChiSquare diff = chi_square_homogeneity({100, 0}, {0, 100});
  CHECK(diff.p_value < 1e-10);
  CHECK(chi_square_homogeneity({5, 0, 5}, {5, 0, 5}).df == 1);
}

TEST_CASE("block counts") {
  const std::vector<double> counts = block_counts(parse_config("01101100"), 0, 8, 2);
  REQUIRE(counts.size() == 4);
  double total = 0;
  for (double x : counts) total += x;
  CHECK(total == 4);
  CHECK(counts[0b00] == 1);
  CHECK(counts[0b11] == 1);
  CHECK(counts[0b01] + counts[0b10] == 2);
  CHECK(block_counts(parse_config("0110"), 0, 3, 2)[0] + block_counts(parse_config("0110"), 0, 3, 2)[1] +
            block_counts(parse_config("0110"), 0, 3, 2)[2] + block_counts(parse_config("0110"), 0, 3, 2)[3] ==
        1);
}
