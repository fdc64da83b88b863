#include "bbs/speeds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include <Eigen/Dense>

#include "bbs/evolution.hpp"
#include "bbs/slots.hpp"

namespace bbs {

namespace {

void check_nonnegative(const std::vector<double>& x, const char* what) {
  for (double v : x)
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": entries must be finite and nonnegative");
}

std::size_t idx(int k) { return static_cast<std::size_t>(k - 1); }

void fill_heads(SpeedTable& t) {
  t.s.assign(static_cast<std::size_t>(t.K), 0.0);
  t.v.assign(static_cast<std::size_t>(t.K), 0.0);
  for (int k = 1; k <= t.K; ++k) {
    double s = k;
    for (int m = 1; m < k; ++m) s += 2.0 * (k - m) * t.s[idx(m)] * t.alpha[idx(m)];
    t.s[idx(k)] = s;
    t.v[idx(k)] = s / t.w[idx(k)];
  }
  t.w0 = 1.0;
  for (int m = 1; m <= t.K; ++m) t.w0 += 2.0 * m * t.rho[idx(m)];
  const VerticalSpeeds vert = solve_vertical(t.rho);
  t.h = vert.h;
  t.v0 = vert.v0;
  t.h0 = vert.h0;
}

}  // namespace

SpeedTable solve_explicit(const std::vector<double>& rho) {
  check_nonnegative(rho, "solve_explicit");
  SpeedTable t;
  t.K = static_cast<int>(rho.size());
  t.rho = rho;
  t.w.assign(rho.size(), 1.0);
  t.alpha.assign(rho.size(), 0.0);
  for (int k = t.K; k >= 1; --k) {
    double w = 1.0;
    for (int m = k + 1; m <= t.K; ++m) w += 2.0 * (m - k) * rho[idx(m)];
    t.w[idx(k)] = w;
    t.alpha[idx(k)] = rho[idx(k)] / w;
  }
  fill_heads(t);
  return t;
}

SpeedTable solve_explicit_alpha(const std::vector<double>& alpha) {
  check_nonnegative(alpha, "solve_explicit_alpha");
  SpeedTable t;
  t.K = static_cast<int>(alpha.size());
  t.alpha = alpha;
  t.w.assign(alpha.size(), 1.0);
  t.rho.assign(alpha.size(), 0.0);
  for (int k = t.K; k >= 1; --k) {
    double w = 1.0;
    for (int m = k + 1; m <= t.K; ++m) w += 2.0 * (m - k) * t.w[idx(m)] * alpha[idx(m)];
    t.w[idx(k)] = w;
    t.rho[idx(k)] = alpha[idx(k)] * w;
  }
  fill_heads(t);
  return t;
}

std::vector<double> solve_interaction(const std::vector<double>& rho_bar) {
  check_nonnegative(rho_bar, "solve_interaction");
  const int K = static_cast<int>(rho_bar.size());
  if (K == 0) return {};
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(K, K);
  Eigen::VectorXd b(K);
  for (int k = 1; k <= K; ++k) {
    double diag = 1.0;
    for (int m = 1; m <= K; ++m) {
      if (m == k) continue;
      const double c = m < k ? 2.0 * m * rho_bar[idx(m)] : 2.0 * k * rho_bar[idx(m)];
      diag -= c;
      A(k - 1, m - 1) = c;
    }
    A(k - 1, k - 1) = diag;
    b(k - 1) = k;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream os;
    os << "solve_interaction: singular system (rcond " << rcond << ")";
    throw SingularSystemError(os.str(), rcond);
  }
  const Eigen::VectorXd v = lu.solve(b);
  return {v.data(), v.data() + K};
}

VerticalSpeeds solve_vertical(const std::vector<double>& rho) {
  check_nonnegative(rho, "solve_vertical");
  const int K = static_cast<int>(rho.size());
  VerticalSpeeds out;
  out.h.assign(rho.size(), 0.0);
  for (int k = K; k >= 1; --k) {
    double num = k;
    double w = 1.0;
    for (int m = k + 1; m <= K; ++m) {
      num += 2.0 * (m - k) * rho[idx(m)] * out.h[idx(m)];
      w += 2.0 * (m - k) * rho[idx(m)];
    }
    out.h[idx(k)] = num / w;
  }
  double w0 = 1.0;
  for (int m = 1; m <= K; ++m) {
    out.v0 += 2.0 * m * rho[idx(m)] * out.h[idx(m)];
    w0 += 2.0 * m * rho[idx(m)];
  }
  out.h0 = out.v0 / w0;
  out.v.resize(rho.size());
  for (int k = 1; k <= K; ++k) out.v[idx(k)] = out.h[idx(k)] * w0 - out.v0;
  return out;
}

SpeedResiduals speed_residuals(const SpeedTable& t) {
  SpeedResiduals r;
  std::vector<double> rho_bar(t.rho.size());
  for (std::size_t i = 0; i < t.rho.size(); ++i) rho_bar[i] = t.rho[i] / t.w0;
  const std::vector<double> vi = solve_interaction(rho_bar);
  double v0 = 0.0;
  for (int k = 1; k <= t.K; ++k) {
    r.interaction = std::max(r.interaction, std::abs(vi[idx(k)] - t.v[idx(k)]));
    r.vertical = std::max(r.vertical, std::abs(t.h[idx(k)] * t.w0 - t.v0 - t.v[idx(k)]));
    v0 += 2.0 * k * t.rho[idx(k)] * t.v[idx(k)];
    double rhs = k;
    for (int m = k + 1; m <= t.K; ++m) rhs += 2.0 * (m - k) * (t.h[idx(m)] - t.h[idx(k)]) * t.rho[idx(m)];
    r.h_system = std::max(r.h_system, std::abs(t.h[idx(k)] - rhs));
  }
  r.record_speed = std::abs(v0 - t.v0);
  return r;
}

std::string format_speed_table(const SpeedTable& t) {
  std::string out = "k\trho\talpha\tw\ts\tv\th\n";
  char buf[256];
  for (int k = 1; k <= t.K; ++k) {
    const auto i = idx(k);
    std::snprintf(buf, sizeof buf, "%d\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\n", k, t.rho[i], t.alpha[i], t.w[i], t.s[i],
                  t.v[i], t.h[i]);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "w0\t%.6f\nv0\t%.6f\nh0\t%.6f\n", t.w0, t.v0, t.h0);
  out += buf;
  return out;
}

double TaggedSoliton::collisions(int m, std::size_t t) const {
  auto it = halves.find(m);
  return it == halves.end() ? 0.0 : it->second.at(t) / 2.0;
}

std::size_t tracking_margin(const BallConfig& initial, std::size_t steps) {
  return static_cast<std::size_t>(std::max(identify(initial).max_size(), 1)) * (steps + 2);
}

TrackTags select_tags(const BallConfig& initial, std::size_t per_size, std::size_t n_records, Site from, Site to) {
  TrackTags tags;
  const SolitonSet set = identify(initial);
  auto spread = [](std::size_t available, std::size_t wanted) {
    std::vector<std::size_t> picks;
    const std::size_t n = std::min(available, wanted);
    for (std::size_t i = 0; i < n; ++i) picks.push_back((2 * i + 1) * available / (2 * n));
    return picks;
  };
  for (const auto& [k, list] : set.by_size) {
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].leftmost() >= from && list[i].rightmost() < to) inside.push_back(i);
    for (std::size_t p : spread(inside.size(), per_size)) tags.solitons.push_back({k, inside[p]});
  }
  const RecordIndex index = records(initial);
  std::vector<Level> labels;
  for (std::size_t j = 0; j < index.count(); ++j) {
    const Site x = index.positions()[j];
    if (x >= from && x < to) labels.push_back(static_cast<Level>(j + 1));
  }
  for (std::size_t p : spread(labels.size(), n_records)) tags.records.push_back(labels[p]);
  return tags;
}

namespace {

enum class Half : char { none = 'N', left = 'L', right = 'R' };

// Nesting at one time: each soliton's parent is the owner of the slot it is
// appended to, and `half` tells in which half of the parent that slot lies.
struct Nesting {
  std::vector<int> parent;  // persistent id or -1
  std::vector<Half> half;
  std::vector<Site> slot;
};

Nesting nesting_at(const BallConfig& config, const SolitonSet& set, const std::map<int, std::vector<int>>& id_of) {
  const SlotConfig slots = slot_configuration(config, set);
  const SlotTable table(slots, set.record_sites.front());
  std::size_t total = 0;
  for (const auto& [k, ids] : id_of) total += ids.size();

  Nesting out;
  out.parent.assign(total, -1);
  out.half.assign(total, Half::none);
  out.slot.assign(total, 0);

  std::vector<int> owner(set.window, -1);
  std::vector<Site> split(total, 0);  // first site of the second half
  for (const auto& [k, list] : set.by_size) {
    const auto& ids = id_of.at(k);
    for (std::size_t j = 0; j < list.size(); ++j) {
      std::vector<Site> sites = list[j].head;
      sites.insert(sites.end(), list[j].tail.begin(), list[j].tail.end());
      std::sort(sites.begin(), sites.end());
      for (Site x : sites) owner[static_cast<std::size_t>(x)] = ids[j];
      split[static_cast<std::size_t>(ids[j])] = sites[static_cast<std::size_t>(k)];
    }
  }
  for (const auto& [k, list] : set.by_size) {
    const auto& ids = id_of.at(k);
    for (std::size_t j = 0; j < list.size(); ++j) {
      const auto id = static_cast<std::size_t>(ids[j]);
      const Site slot = table.site_of(k, appended_label(table, list[j]));
      out.slot[id] = slot;
      if (slots.at(slot) == kRecordOrder) continue;
      const int p = owner[static_cast<std::size_t>(slot)];
      out.parent[id] = p;
      out.half[id] = slot < split[static_cast<std::size_t>(p)] ? Half::left : Half::right;
    }
  }
  return out;
}

}  // namespace

TrajectorySet track_trajectories(const BallConfig& initial, std::size_t steps, const TrackTags& tags) {
  const SolitonSet set0 = identify(initial);
  const auto margin = static_cast<Site>(tracking_margin(initial, steps));
  const auto n = static_cast<Site>(initial.size());
  for (const SolitonRef& ref : tags.solitons) {
    const Soliton& s = set0.by_size.at(ref.size).at(ref.index);
    if (s.leftmost() < margin || s.rightmost() >= n - margin)
      throw PreconditionError("track_trajectories: tagged soliton at " + std::to_string(s.leftmost()) +
                              " is within the margin " + std::to_string(margin));
  }
  const RecordIndex rec0 = records(initial);
  for (Level j : tags.records) {
    const Site x = rec0.position_of(j);
    if (j < 1 || static_cast<std::size_t>(j) > rec0.count() || x < margin || x >= n - margin)
      throw PreconditionError("track_trajectories: tagged record " + std::to_string(j) + " is within the margin");
  }

  const Evolution evo(initial, steps);

  // Persistent ids of the initial solitons and their current list positions.
  std::map<int, int> base;
  int total = 0;
  for (const auto& [k, list] : set0.by_size) {
    base[k] = total;
    total += static_cast<int>(list.size());
  }
  std::map<int, std::vector<std::size_t>> index_of;
  for (const auto& [k, list] : set0.by_size) {
    auto& v = index_of[k];
    v.resize(list.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  }
  std::vector<int> tag_of(static_cast<std::size_t>(total), -1);
  std::vector<int> size_of(static_cast<std::size_t>(total), 0);
  for (const auto& [k, list] : set0.by_size)
    for (std::size_t i = 0; i < list.size(); ++i) size_of[static_cast<std::size_t>(base[k]) + i] = k;

  TrajectorySet traj;
  traj.steps = steps;
  for (std::size_t g = 0; g < tags.solitons.size(); ++g) {
    TaggedSoliton ts;
    ts.ref = tags.solitons[g];
    traj.solitons.push_back(std::move(ts));
    tag_of[static_cast<std::size_t>(base[tags.solitons[g].size]) + tags.solitons[g].index] = static_cast<int>(g);
  }
  for (Level j : tags.records) traj.records.push_back({j, {}});

  std::vector<std::map<int, Half>> previous(tags.solitons.size());
  std::vector<Level> label0(tags.solitons.size(), 0);

  for (std::size_t t = 0; t <= steps; ++t) {
    if (t > 0) {
      for (auto& [k, v] : index_of) {
        const auto& image = evo.pairing(t - 1).after.at(k);
        for (auto& i : v) i = image[i];
      }
    }
    const BallConfig& config = evo.config(t);
    const SolitonSet& set = evo.solitons(t);
    std::map<int, std::vector<int>> id_of;
    for (const auto& [k, v] : index_of) {
      auto& ids = id_of[k];
      ids.assign(v.size(), -1);
      for (std::size_t i = 0; i < v.size(); ++i) ids[v[i]] = base[k] + static_cast<int>(i);
    }
    const Nesting nest = nesting_at(config, set, id_of);
    const WalkLift walk = lift(config);
    const RecordIndex rec = records(config);

    for (auto& r : traj.records) r.beta.push_back(rec.position_of(r.label));

    // Relation of every other soliton to each tag: the half of the tag's
    // ancestor it sits in, or the half of the tag a descendant sits in.
    std::vector<std::map<int, Half>> current(tags.solitons.size());
    for (int d = 0; d < total; ++d) {
      int c = d;
      while (nest.parent[static_cast<std::size_t>(c)] >= 0) {
        const int a = nest.parent[static_cast<std::size_t>(c)];
        const Half h = nest.half[static_cast<std::size_t>(c)];
        if (const int g = tag_of[static_cast<std::size_t>(a)]; g >= 0) current[static_cast<std::size_t>(g)][d] = h;
        if (const int g = tag_of[static_cast<std::size_t>(d)]; g >= 0) current[static_cast<std::size_t>(g)][a] = h;
        c = a;
      }
    }

    for (std::size_t g = 0; g < traj.solitons.size(); ++g) {
      TaggedSoliton& ts = traj.solitons[g];
      const int k = ts.ref.size;
      const auto id = static_cast<std::size_t>(base[k]) + ts.ref.index;
      const Soliton& s = set.by_size.at(k).at(index_of[k][ts.ref.index]);
      ts.x.push_back(s.leftmost());
      const Site slot = nest.slot[id];
      ts.slot.push_back(slot);
      const Level label = -walk.running_min(slot);
      if (t == 0) label0[g] = label;
      ts.y.push_back(std::max<Level>(0, label - label0[g]));

      ts.nested.push_back(current[g].size());
      for (auto& [m, v] : ts.halves) v.push_back(t == 0 ? 0 : v.back());
      if (t > 0) {
        std::map<int, Half> merged = previous[g];
        for (const auto& [d, h] : current[g]) merged.emplace(d, Half::none);
        for (const auto& [d, ignored] : merged) {
          const Half before = previous[g].contains(d) ? previous[g].at(d) : Half::none;
          const Half after = current[g].contains(d) ? current[g].at(d) : Half::none;
          int add = 0;
          if (before == Half::right && after == Half::left) add = 1;
          if (before == Half::left && after == Half::none) add = 1;
          if (before == Half::right && after == Half::none) add = 2;
          if (add == 0) continue;
          const int m = size_of[static_cast<std::size_t>(d)];
          auto [it, fresh] = ts.halves.try_emplace(m, std::vector<int>(t + 1, 0));
          it->second.back() += add;
        }
      }
      previous[g] = std::move(current[g]);
    }
  }
  return traj;
}

double ls_slope(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 2) return 0.0;
  const double tbar = (n - 1.0) / 2.0;
  double ybar = 0.0;
  for (double y : values) ybar += y;
  ybar /= n;
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    num += (static_cast<double>(t) - tbar) * (values[t] - ybar);
    den += (static_cast<double>(t) - tbar) * (static_cast<double>(t) - tbar);
  }
  return num / den;
}

namespace {

SpeedEstimate summarize(const std::vector<double>& xs) {
  SpeedEstimate e;
  e.samples = xs.size();
  if (xs.empty()) return e;
  for (double x : xs) e.mean += x;
  e.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return e;
}

template <typename T>
std::vector<double> as_double(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

EmpiricalSpeeds empirical_speeds(const TrajectorySet& traj) {
  std::map<int, std::vector<double>> vs, hs;
  for (const TaggedSoliton& s : traj.solitons) {
    vs[s.size()].push_back(ls_slope(as_double(s.x)));
    hs[s.size()].push_back(ls_slope(as_double(s.y)));
  }
  std::vector<double> r;
  for (const TaggedRecord& rec : traj.records) r.push_back(-ls_slope(as_double(rec.beta)));
  EmpiricalSpeeds out;
  for (const auto& [k, xs] : vs) out.v[k] = summarize(xs);
  for (const auto& [k, xs] : hs) out.h[k] = summarize(xs);
  out.v0 = summarize(r);
  return out;
}

}  // namespace bbs
