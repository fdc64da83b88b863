#include "bbs/run.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bbs/evolution.hpp"
#include "bbs/raster.hpp"

namespace bbs {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw UsageError("bad value for " + std::string(key) + ": '" + std::string(text) + "'");
  return value;
}

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + shortest(xs[i]);
  return out;
}

std::string sampler_name(Sampler s) {
  switch (s) {
    case Sampler::iid:
      return "iid";
    case Sampler::components:
      return "components";
    case Sampler::append:
      return "append";
  }
  return "iid";
}

std::vector<double> truncated(std::vector<double> xs, int K) {
  if (K > 0) xs.resize(static_cast<std::size_t>(K), 0.0);
  return xs;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<double>("list", text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

RunParams parse_run_params(std::string_view text) {
  RunParams p;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw UsageError("expected key=value, got '" + word + "'");
      const std::string key = word.substr(0, eq);
      const std::string_view value = std::string_view(word).substr(eq + 1);
      if (key == "seed") {
        p.seed = parse_number<std::uint64_t>(key, value);
      } else if (key == "sampler") {
        if (value == "iid") p.sampler = Sampler::iid;
        else if (value == "components") p.sampler = Sampler::components;
        else if (value == "append") p.sampler = Sampler::append;
        else throw UsageError("unknown sampler '" + std::string(value) + "'");
      } else if (key == "lambda") {
        p.lambda = parse_number<double>(key, value);
      } else if (key == "rho") {
        p.rho = parse_list(value);
      } else if (key == "alpha") {
        p.alpha = parse_list(value);
      } else if (key == "law") {
        if (value != "bernoulli" && value != "geometric") throw UsageError("unknown law '" + std::string(value) + "'");
        p.law = std::string(value);
      } else if (key == "K") {
        p.K = parse_number<int>(key, value);
      } else if (key == "n") {
        p.n = parse_number<std::size_t>(key, value);
      } else if (key == "steps") {
        p.steps = parse_number<std::size_t>(key, value);
      } else if (key == "mixSteps") {
        p.mix_steps = parse_number<std::size_t>(key, value);
      } else if (key == "tags") {
        p.tags = parse_number<std::size_t>(key, value);
      } else if (key == "repeat") {
        p.repeat = parse_number<std::size_t>(key, value);
      } else {
        throw UsageError("unknown key '" + key + "'");
      }
    }
  }
  if (p.K < 0) throw UsageError("K must be nonnegative");
  if (p.repeat == 0) throw UsageError("repeat must be positive");
  return p;
}

std::string format_run_params(const RunParams& p) {
  std::string out;
  out += "seed=" + std::to_string(p.seed) + "\n";
  out += "sampler=" + sampler_name(p.sampler) + "\n";
  out += "lambda=" + shortest(p.lambda) + "\n";
  out += "rho=" + join(p.rho) + "\n";
  out += "alpha=" + join(p.alpha) + "\n";
  out += "law=" + p.law + "\n";
  out += "K=" + std::to_string(p.K) + "\n";
  out += "n=" + std::to_string(p.n) + "\n";
  out += "steps=" + std::to_string(p.steps) + "\n";
  out += "mixSteps=" + std::to_string(p.mix_steps) + "\n";
  out += "tags=" + std::to_string(p.tags) + "\n";
  out += "repeat=" + std::to_string(p.repeat) + "\n";
  return out;
}

SampleBatch sample_initial(const RunParams& p) {
  SampleBatch batch;
  batch.seed = p.seed;
  switch (p.sampler) {
    case Sampler::iid:
      if (!(p.lambda > 0.0 && p.lambda < 0.5)) throw UsageError("lambda must lie in (0, 1/2)");
      batch.configs.push_back(sample_bernoulli(p.lambda, p.n, p.seed));
      batch.provenance = "iid lambda=" + shortest(p.lambda);
      break;
    case Sampler::components: {
      if (p.alpha.empty()) throw UsageError("sampler=components needs alpha");
      const auto alpha = truncated(p.alpha, p.K);
      const ComponentLaw law = p.law == "geometric" ? ComponentLaw::geometric(alpha) : ComponentLaw::bernoulli(alpha);
      batch.configs.push_back(sample_hat_mu_sites(law, p.n, p.seed));
      batch.provenance = "components " + p.law + " alpha=" + join(alpha);
      break;
    }
    case Sampler::append: {
      if (p.rho.empty()) throw UsageError("sampler=append needs rho");
      const auto rho = truncated(p.rho, p.K);
      batch.configs.push_back(sample_append_mix(rho, p.n, p.mix_steps, p.seed));
      batch.provenance = "append rho=" + join(rho) + " mixSteps=" + std::to_string(p.mix_steps);
      break;
    }
  }
  return batch;
}

SpeedTable predicted_speeds(const RunParams& p, const BallConfig& initial) {
  if (!p.rho.empty()) return solve_explicit(truncated(p.rho, p.K));
  if (!p.alpha.empty()) return solve_explicit_alpha(truncated(p.alpha, p.K));
  const DensityEstimate est = estimate_densities(initial);
  std::vector<double> rho(est.rho.empty() ? 0 : static_cast<std::size_t>(est.rho.rbegin()->first), 0.0);
  for (const auto& [k, r] : est.rho) rho[static_cast<std::size_t>(k - 1)] = r;
  return solve_explicit(truncated(rho, p.K));
}

std::string format_trajectories(const TrajectorySet& traj) {
  std::string out = "kind\tid\tk\tt\tx\ty\tcollisions\n";
  char buf[160];
  for (std::size_t g = 0; g < traj.solitons.size(); ++g) {
    const TaggedSoliton& s = traj.solitons[g];
    for (std::size_t t = 0; t <= traj.steps; ++t) {
      double n = 0.0;
      for (const auto& [m, v] : s.halves) n += v[t] / 2.0;
      std::snprintf(buf, sizeof buf, "soliton\t%zu\t%d\t%zu\t%lld\t%lld\t%.1f\n", g, s.size(), t,
                    static_cast<long long>(s.x[t]), static_cast<long long>(s.y[t]), n);
      out += buf;
    }
  }
  for (std::size_t g = 0; g < traj.records.size(); ++g) {
    const TaggedRecord& r = traj.records[g];
    for (std::size_t t = 0; t <= traj.steps; ++t) {
      std::snprintf(buf, sizeof buf, "record\t%zu\t0\t%zu\t%lld\t%lld\t-\n", g, t, static_cast<long long>(r.beta[t]),
                    static_cast<long long>(r.label));
      out += buf;
    }
  }
  return out;
}

void run(const RunParams& p, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const SampleBatch batch = sample_initial(p);
  const BallConfig& initial = batch.configs.front();

  std::string params = format_run_params(p);
  params += "# " + batch.provenance + "\n";
  write_file(dir / "params.txt", params);
  write_file(dir / "init.cfg", initial.to_string() + "\n");

  const Evolution evo(initial, p.steps);
  write_file(dir / "final.cfg", evo.config(p.steps).to_string() + "\n");

  int top = 0;
  for (std::size_t t = 0; t <= p.steps; ++t) top = std::max(top, evo.solitons(t).max_size());
  std::string stats = "t\tlength\tballs\trecords\tdensity\tsupercritical";
  for (int k = 1; k <= top; ++k) stats += "\tn" + std::to_string(k);
  stats += "\n";
  char buf[128];
  for (std::size_t t = 0; t <= p.steps; ++t) {
    const BallConfig& c = evo.config(t);
    std::snprintf(buf, sizeof buf, "%zu\t%zu\t%zu\t%zu\t%.6f\t%d", t, c.size(), c.ball_count(), records(c).count(),
                  c.density(), c.density() >= 0.5 ? 1 : 0);
    stats += buf;
    for (int k = 1; k <= top; ++k) stats += "\t" + std::to_string(evo.solitons(t).count(k));
    stats += "\n";
  }
  write_file(dir / "stats.tsv", stats);

  const SpeedTable table = predicted_speeds(p, initial);
  write_file(dir / "speeds.tsv", format_speed_table(table));

  const auto n = static_cast<Site>(initial.size());
  const auto margin = static_cast<Site>(tracking_margin(initial, p.steps));
  const Site from = std::max(margin, n / 4);
  const Site to = std::min(n - margin, 3 * n / 4);
  TrajectorySet traj;
  traj.steps = p.steps;
  if (from < to) traj = track_trajectories(initial, p.steps, select_tags(initial, p.tags, p.tags, from, to));
  write_file(dir / "trajectories.tsv", format_trajectories(traj));

  SpaceTimeRaster raster = space_time(initial, p.steps);
  std::vector<bool> drawn(static_cast<std::size_t>(table.K) + 1, false);
  for (const TaggedSoliton& s : traj.solitons) {
    const int k = s.size();
    if (k > table.K || drawn[static_cast<std::size_t>(k)]) continue;
    drawn[static_cast<std::size_t>(k)] = true;
    draw_speed_line(raster, s.x.front(), table.v[static_cast<std::size_t>(k - 1)]);
  }
  write_file(dir / "raster.pbm", render(raster, ImageFormat::pbm, p.repeat));
  write_file(dir / "raster.pgm", render(raster, ImageFormat::pgm, p.repeat));
}

}  // namespace bbs
