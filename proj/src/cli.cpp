#include "bbs/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "bbs/config.hpp"
#include "bbs/measures.hpp"
#include "bbs/raster.hpp"
#include "bbs/reconstruct.hpp"
#include "bbs/run.hpp"
#include "bbs/selftest.hpp"
#include "bbs/slots.hpp"
#include "bbs/soliton.hpp"
#include "bbs/speeds.hpp"

namespace bbs {

namespace {

std::string slurp(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::vector<double> sized(std::vector<double> xs, int K) {
  if (K > 0) xs.resize(static_cast<std::size_t>(K), 0.0);
  return xs;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Box-ball system toolkit"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string output;
  std::size_t steps = 1;
  std::uint64_t seed = 0;
  std::string rho_text, alpha_text;
  double lambda = 0.25;
  int K = 0;
  std::size_t n = 1000;
  std::string format = "pbm";

  auto* evolve = app.add_subcommand("evolve", "apply T to a configuration");
  evolve->add_option("input", input, "configuration file, - for stdin");
  evolve->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);

  bool batch = false;
  auto* solitons = app.add_subcommand("solitons", "soliton report");
  solitons->add_option("input", input);
  solitons->add_flag("--batch", batch, "use the run-removal algorithm instead of the stack");

  Site origin = 0;
  auto* decompose = app.add_subcommand("decompose", "slot components of a configuration");
  decompose->add_option("input", input);
  decompose->add_option("--origin", origin, "record used as Record 0");

  std::size_t n_right = 0, n_left = 0;
  auto* recon = app.add_subcommand("reconstruct", "configuration from slot components");
  recon->add_option("input", input);
  recon->add_option("--right", n_right, "excursions right of Record 0 (overrides the extent line)");
  recon->add_option("--left", n_left, "excursions left of Record 0");

  std::string sampler = "iid", law = "bernoulli";
  std::size_t mix_steps = 50;
  auto* sample = app.add_subcommand("sample", "draw a configuration");
  sample->add_option("--sampler", sampler)->check(CLI::IsMember({"iid", "components", "append"}));
  sample->add_option("--law", law)->check(CLI::IsMember({"bernoulli", "geometric"}));
  sample->add_option("--lambda", lambda);
  sample->add_option("--rho", rho_text, "comma separated, k = 1..K");
  sample->add_option("--alpha", alpha_text, "comma separated, k = 1..K");
  sample->add_option("--K", K);
  sample->add_option("--n", n, "sites");
  sample->add_option("--mix-steps", mix_steps);
  sample->add_option("--seed", seed);
  sample->add_option("--out", output);

  auto* speeds = app.add_subcommand("speeds", "speed table from rho or alpha");
  speeds->add_option("--rho", rho_text);
  speeds->add_option("--alpha", alpha_text);
  speeds->add_option("--K", K);

  std::size_t per_size = 20;
  bool summary = false;
  auto* track = app.add_subcommand("track", "tagged soliton and record trajectories");
  track->add_option("input", input);
  track->add_option("--steps", steps);
  track->add_option("--tags", per_size, "tags per size and tagged records");
  track->add_flag("--summary", summary, "print empirical speeds instead of trajectories");

  std::size_t repeat = 1;
  auto* rend = app.add_subcommand("render", "space-time image");
  rend->add_option("input", input);
  rend->add_option("--steps", steps);
  rend->add_option("--format", format)->check(CLI::IsMember({"pbm", "pgm"}));
  rend->add_option("--repeat", repeat, "write every row this many times")->check(CLI::PositiveNumber);
  rend->add_option("--rho", rho_text, "draw predicted slopes from the first soliton of each size");
  rend->add_option("--out", output);

  auto* selftest = app.add_subcommand("selftest", "run the invariant suite");
  selftest->add_option("--seed", seed);

  std::string params_path, out_dir;
  auto* runcmd = app.add_subcommand("run", "full pipeline into a run directory");
  runcmd->add_option("params", params_path, "key=value parameter file")->required();
  runcmd->add_option("--out", out_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (*evolve) {
      out << apply_T(parse_config(slurp(input, in)), steps).to_string() << '\n';
    } else if (*solitons) {
      const BallConfig c = parse_config(slurp(input, in));
      out << soliton_report(batch ? identify_batch(c) : identify_stream(c));
    } else if (*decompose) {
      const BallConfig c = parse_config(slurp(input, in)).record_terminated();
      const RecordIndex rec = records(c);
      const auto label = rec.label_of(origin);
      if (!label || origin < 0) throw PreconditionError("origin " + std::to_string(origin) + " is not a record");
      const Label right = static_cast<Label>(rec.count()) - *label + 1;
      out << format_components(components(c, origin), std::make_pair(*label - 1, right));
    } else if (*recon) {
      const ComponentsFile file = parse_components(slurp(input, in));
      std::size_t left = n_left, right = n_right;
      if (file.extent && recon->count("--right") == 0) {
        left = static_cast<std::size_t>(file.extent->first);
        right = static_cast<std::size_t>(file.extent->second);
      }
      out << reconstruct(file.zeta, right, left).config.to_string() << '\n';
    } else if (*sample) {
      RunParams p;
      p.seed = seed;
      p.sampler = sampler == "iid" ? Sampler::iid : sampler == "components" ? Sampler::components : Sampler::append;
      p.law = law;
      p.lambda = lambda;
      if (!rho_text.empty()) p.rho = parse_list(rho_text);
      if (!alpha_text.empty()) p.alpha = parse_list(alpha_text);
      p.K = K;
      p.n = n;
      p.mix_steps = mix_steps;
      emit(output, sample_initial(p).configs.front().to_string() + "\n", out);
    } else if (*speeds) {
      if (rho_text.empty() == alpha_text.empty()) throw UsageError("give exactly one of --rho and --alpha");
      const SpeedTable t = rho_text.empty() ? solve_explicit_alpha(sized(parse_list(alpha_text), K))
                                            : solve_explicit(sized(parse_list(rho_text), K));
      out << format_speed_table(t);
    } else if (*track) {
      const BallConfig c = parse_config(slurp(input, in));
      const auto size = static_cast<Site>(c.size());
      const auto margin = static_cast<Site>(tracking_margin(c, steps));
      const TrajectorySet traj = track_trajectories(c, steps, select_tags(c, per_size, per_size, margin, size - margin));
      if (summary) {
        const EmpiricalSpeeds e = empirical_speeds(traj);
        out << "k\tsamples\tv\tv_se\th\th_se\n";
        for (const auto& [k, v] : e.v) {
          const SpeedEstimate& h = e.h.at(k);
          out << k << '\t' << v.samples << '\t' << v.mean << '\t' << v.std_error << '\t' << h.mean << '\t' << h.std_error << '\n';
        }
        out << "v0\t" << e.v0.samples << '\t' << e.v0.mean << '\t' << e.v0.std_error << '\n';
      } else {
        out << format_trajectories(traj);
      }
    } else if (*rend) {
      const BallConfig c = parse_config(slurp(input, in));
      SpaceTimeRaster raster = space_time(c, steps);
      if (!rho_text.empty()) {
        const SpeedTable t = solve_explicit(parse_list(rho_text));
        const SolitonSet set = identify(c);
        for (const auto& [k, list] : set.by_size)
          if (k <= t.K && !list.empty()) draw_speed_line(raster, list.front().leftmost(), t.v[static_cast<std::size_t>(k - 1)]);
      }
      emit(output, render(raster, parse_image_format(format), repeat), out);
    } else if (*selftest) {
      bool ok = true;
      for (const CheckResult& r : run_selftest(seed)) {
        out << (r.pass ? "PASS " : "FAIL ") << r.name;
        if (!r.detail.empty()) out << ": " << r.detail;
        out << '\n';
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    } else if (*runcmd) {
      run(parse_run_params(slurp(params_path, in)), out_dir);
    }
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << '\n';
    return 1;
  } catch (const SingularSystemError& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const ParseError& e) {
    err << "parse error at " << e.position() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace bbs
