#include "bbs/slots.hpp"

#include <algorithm>
#include <sstream>

#include "bbs/evolution.hpp"

namespace bbs {

SlotConfig slot_configuration(const BallConfig& config, const SolitonSet& solitons) {
  (void)config;
  SlotConfig out;
  out.order.assign(solitons.window, -1);
  for (Site r : solitons.record_sites) out.order[static_cast<std::size_t>(r)] = kRecordOrder;
  for (const auto& [k, list] : solitons.by_size) {
    for (const Soliton& s : list) {
      for (int j = 0; j < k; ++j) {
        out.order[static_cast<std::size_t>(s.head[static_cast<std::size_t>(j)])] = j;
        out.order[static_cast<std::size_t>(s.tail[static_cast<std::size_t>(j)])] = j;
      }
    }
  }
  for (std::size_t x = 0; x < out.order.size(); ++x) {
    if (out.order[x] < 0) throw ConsistencyError("slot_configuration: site " + std::to_string(x) + " unclassified");
  }
  return out;
}

namespace {

// Position of `site` in the bi-infinite enumeration of slots of one level:
// negative sites are virtual records, sites past the window are padding records.
Label global_index(const std::vector<Site>& level, std::size_t window, Site site) {
  if (site < 0) return site;
  if (static_cast<std::size_t>(site) >= window) {
    return static_cast<Label>(level.size()) + (site - static_cast<Site>(window));
  }
  auto it = std::upper_bound(level.begin(), level.end(), site);
  return static_cast<Label>(it - level.begin()) - 1;
}

Site site_at(const std::vector<Site>& level, std::size_t window, Label g) {
  if (g < 0) return g;
  const auto n = static_cast<Label>(level.size());
  if (g < n) return level[static_cast<std::size_t>(g)];
  return static_cast<Site>(window) + (g - n);
}

}  // namespace

SlotTable::SlotTable(const SlotConfig& slots, Site record_zero)
    : record_zero_(record_zero), window_(slots.order.size()) {
  if (slots.at(record_zero) != kRecordOrder) {
    throw PreconditionError("enumerate_slots: site " + std::to_string(record_zero) + " is not a record");
  }
  int top = 0;
  for (int o : slots.order)
    if (o != kRecordOrder) top = std::max(top, o);
  per_k_.resize(static_cast<std::size_t>(top));
  for (std::size_t x = 0; x < window_; ++x) {
    const int o = slots.order[x];
    if (o == kRecordOrder) {
      records_.push_back(static_cast<Site>(x));
      for (auto& level : per_k_) level.push_back(static_cast<Site>(x));
    } else {
      for (int k = 1; k <= o; ++k) per_k_[static_cast<std::size_t>(k - 1)].push_back(static_cast<Site>(x));
    }
  }
}

const std::vector<Site>& SlotTable::level(int k) const {
  if (k < 1) throw std::out_of_range("SlotTable: k must be positive");
  if (static_cast<std::size_t>(k) <= per_k_.size()) return per_k_[static_cast<std::size_t>(k - 1)];
  return records_;
}

const std::vector<Site>& SlotTable::sites(int k) const { return level(k); }

Site SlotTable::site_of(int k, Label i) const {
  const auto& lv = level(k);
  return site_at(lv, window_, global_index(lv, window_, record_zero_) + i);
}

Label SlotTable::label_at_or_before(int k, Site x) const {
  const auto& lv = level(k);
  return global_index(lv, window_, x) - global_index(lv, window_, record_zero_);
}

Label SlotTable::first_label(int k) const {
  const auto& lv = level(k);
  return -global_index(lv, window_, record_zero_);
}

Label SlotTable::last_label(int k) const {
  const auto& lv = level(k);
  return static_cast<Label>(lv.size()) - 1 - global_index(lv, window_, record_zero_);
}

SlotTable enumerate_slots(const SlotConfig& slots, Site record_zero) { return SlotTable(slots, record_zero); }

std::int64_t SlotComponents::at(int k, Label i) const noexcept {
  auto it = entries_.find(k);
  if (it == entries_.end()) return 0;
  auto jt = it->second.find(i);
  return jt == it->second.end() ? 0 : jt->second;
}

void SlotComponents::set(int k, Label i, std::int64_t count) {
  if (k < 1) throw std::invalid_argument("SlotComponents: size must be positive");
  if (count < 0) throw std::invalid_argument("SlotComponents: negative count");
  if (count == 0) {
    auto it = entries_.find(k);
    if (it != entries_.end()) {
      it->second.erase(i);
      if (it->second.empty()) entries_.erase(it);
    }
    return;
  }
  entries_[k][i] = count;
}

void SlotComponents::add(int k, Label i, std::int64_t count) { set(k, i, at(k, i) + count); }

int SlotComponents::max_size() const noexcept { return entries_.empty() ? 0 : entries_.rbegin()->first; }

std::int64_t SlotComponents::total(int k) const noexcept {
  auto it = entries_.find(k);
  if (it == entries_.end()) return 0;
  std::int64_t sum = 0;
  for (const auto& [i, c] : it->second) sum += c;
  return sum;
}

SlotComponents SlotComponents::above(int k) const {
  SlotComponents out;
  for (auto it = entries_.upper_bound(k); it != entries_.end(); ++it) out.entries_.insert(*it);
  return out;
}

SlotComponents SlotComponents::restricted(const std::map<int, std::pair<Label, Label>>& bounds) const {
  SlotComponents out;
  for (const auto& [k, row] : entries_) {
    auto b = bounds.find(k);
    if (b == bounds.end()) continue;
    for (const auto& [i, c] : row)
      if (i >= b->second.first && i <= b->second.second) out.entries_[k][i] = c;
  }
  return out;
}

Label appended_label(const SlotTable& table, const Soliton& soliton) {
  const Label i = table.label_at_or_before(soliton.size, soliton.leftmost() - 1);
  if (table.site_of(soliton.size, i + 1) <= soliton.rightmost()) {
    throw ConsistencyError("appended_label: " + std::to_string(soliton.size) + "-soliton at " +
                           std::to_string(soliton.leftmost()) + " straddles a slot");
  }
  return i;
}

SlotComponents components(const BallConfig& config, Site record_zero) {
  const SolitonSet solitons = identify_stream(config);
  const SlotConfig slots = slot_configuration(config, solitons);
  if (slots.at(record_zero) != kRecordOrder) {
    throw PreconditionError("components: site " + std::to_string(record_zero) + " is not a record");
  }
  const SlotTable table(slots, record_zero);
  SlotComponents zeta;
  for (const auto& [k, list] : solitons.by_size)
    for (const Soliton& s : list) zeta.add(k, appended_label(table, s));
  return zeta;
}

std::string format_components(const SlotComponents& zeta, std::optional<std::pair<Label, Label>> extent) {
  std::ostringstream os;
  os << "slots v1\n";
  if (extent) os << "extent " << extent->first << ' ' << extent->second << '\n';
  for (const auto& [k, row] : zeta.entries())
    for (const auto& [i, c] : row) os << k << ' ' << i << ' ' << c << '\n';
  return os.str();
}

ComponentsFile parse_components(std::string_view text) {
  ComponentsFile out;
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    if (!header) {
      std::string a, b;
      ls >> a >> b;
      if (a != "slots" || b != "v1") throw ParseError(line_no, "components: expected header 'slots v1'");
      header = true;
      continue;
    }
    if (line.rfind("extent", 0) == 0) {
      std::string word;
      Label left = 0, right = 0;
      if (!(ls >> word >> left >> right) || left < 0 || right < 0)
        throw ParseError(line_no, "components: malformed extent line " + std::to_string(line_no));
      out.extent = std::make_pair(left, right);
      continue;
    }
    int k = 0;
    Label i = 0;
    std::int64_t c = 0;
    std::string rest;
    if (!(ls >> k >> i >> c) || (ls >> rest) || k < 1 || c < 0)
      throw ParseError(line_no, "components: malformed entry on line " + std::to_string(line_no));
    if (out.zeta.at(k, i) != 0) throw ParseError(line_no, "components: duplicate entry on line " + std::to_string(line_no));
    out.zeta.set(k, i, c);
  }
  if (!header) throw ParseError(0, "components: missing header 'slots v1'");
  return out;
}

std::int64_t FlowReport::J(int m, std::size_t t) const {
  auto it = crossings.find(m);
  return it == crossings.end() ? 0 : it->second.at(t);
}

std::int64_t FlowReport::o(int k, std::size_t t) const {
  auto it = offsets.find(k);
  return it == offsets.end() ? 0 : it->second.at(t);
}

Site record_zero_after(const Evolution& evolution, Site record_zero, std::size_t t) {
  const RecordIndex initial = records(evolution.config(0));
  const auto label = initial.label_of(record_zero);
  if (!label) throw PreconditionError("site " + std::to_string(record_zero) + " is not a record");
  return records(evolution.config(t)).position_of(*label);
}

FlowReport soliton_flow(const Evolution& evolution, Site record_zero, std::optional<Site> window_end) {
  FlowReport report;
  report.steps = evolution.steps();
  const SolitonSet& initial = evolution.solitons(0);

  std::vector<SolitonRef> tracked;
  for (const auto& [m, list] : initial.by_size)
    for (std::size_t i = 0; i < list.size(); ++i)
      if (list[i].rightmost() < record_zero) tracked.push_back({m, i});

  const int top = initial.max_size();
  for (int m = 1; m <= top; ++m) report.crossings[m].assign(report.steps + 1, 0);
  for (int k = 1; k <= top; ++k) report.offsets[k].assign(report.steps + 1, 0);

  for (std::size_t t = 1; t <= report.steps; ++t) {
    const Site r0 = record_zero_after(evolution, record_zero, t);
    for (const SolitonRef& ref : tracked) {
      const Soliton& s = evolution.at(ref, t);
      if (window_end && s.rightmost() >= *window_end) {
        throw PreconditionError("soliton_flow: tracked " + std::to_string(ref.size) + "-soliton left the window");
      }
      if (s.leftmost() >= r0) ++report.crossings[ref.size][t];
    }
    for (int k = 1; k <= top; ++k) {
      std::int64_t o = 0;
      for (int m = k + 1; m <= top; ++m) o += 2 * (m - k) * report.crossings[m][t];
      report.offsets[k][t] = o;
    }
  }
  return report;
}

FlowReport soliton_flow(const BallConfig& config, std::size_t steps, Site record_zero, std::optional<Site> window_end) {
  return soliton_flow(Evolution(config, steps), record_zero, window_end);
}

ShiftReport verify_component_shift(const Evolution& evolution, std::size_t t, Site record_zero) {
  ShiftReport report;
  report.flow = soliton_flow(evolution, record_zero);
  const SlotComponents before = components(evolution.config(0), record_zero);
  const SlotComponents after = components(evolution.config(t), record_zero_after(evolution, record_zero, t));

  const int top = std::max(before.max_size(), after.max_size());
  for (int k = 1; k <= top && report.holds; ++k) {
    const Label shift = report.flow.o(k, t) + static_cast<Label>(k) * static_cast<Label>(t);
    // Compare supports in both directions; all other entries are zero on both sides.
    auto check = [&](Label i) {
      const std::int64_t expected = before.at(k, i - shift);
      const std::int64_t actual = after.at(k, i);
      if (expected != actual) {
        report.holds = false;
        report.mismatch = ShiftMismatch{k, i, expected, actual};
      }
    };
    if (auto it = before.entries().find(k); it != before.entries().end())
      for (const auto& [i, c] : it->second) {
        check(i + shift);
        if (!report.holds) break;
      }
    if (!report.holds) break;
    if (auto it = after.entries().find(k); it != after.entries().end())
      for (const auto& [i, c] : it->second) {
        check(i);
        if (!report.holds) break;
      }
  }
  return report;
}

ShiftReport verify_component_shift(const BallConfig& config, std::size_t t, Site record_zero) {
  return verify_component_shift(Evolution(config, t), t, record_zero);
}

Site tagged_slot(const Evolution& evolution, int k, Label j, std::size_t t, Site record_zero) {
  const SolitonSet& s0 = evolution.solitons(0);
  const SlotTable table0(slot_configuration(evolution.config(0), s0), record_zero);
  if (j < table0.first_label(k) || j > table0.last_label(k)) {
    throw std::out_of_range("tagged_slot: label " + std::to_string(j) + " outside enumerated range");
  }
  const FlowReport flow = soliton_flow(evolution, record_zero);
  const Site r0t = record_zero_after(evolution, record_zero, t);
  const SlotTable table_t(slot_configuration(evolution.config(t), evolution.solitons(t)), r0t);
  return table_t.site_of(k, flow.o(k, t) + static_cast<Label>(k) * static_cast<Label>(t) + j);
}

Site tagged_slot(const BallConfig& config, int k, Label j, std::size_t t, Site record_zero) {
  return tagged_slot(Evolution(config, t), k, j, t, record_zero);
}

}  // namespace bbs
