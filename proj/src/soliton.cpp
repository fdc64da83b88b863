#include "bbs/soliton.hpp"

#include <sstream>
#include <unordered_map>
#include <utility>

namespace bbs {

std::size_t SolitonSet::count() const noexcept {
  std::size_t n = 0;
  for (const auto& [k, list] : by_size) n += list.size();
  return n;
}

std::size_t SolitonSet::count(int size) const noexcept {
  auto it = by_size.find(size);
  return it == by_size.end() ? 0 : it->second.size();
}

std::vector<const Soliton*> SolitonSet::ordered() const {
  std::vector<const Soliton*> out;
  out.reserve(count());
  for (const auto& [k, list] : by_size)
    for (const auto& s : list) out.push_back(&s);
  std::sort(out.begin(), out.end(), [](const Soliton* a, const Soliton* b) {
    if (a->leftmost() != b->leftmost()) return a->leftmost() < b->leftmost();
    return a->size < b->size;
  });
  return out;
}

namespace {

void finalize(SolitonSet& set) {
  for (auto& [k, list] : set.by_size) {
    std::sort(list.begin(), list.end(),
              [](const Soliton& a, const Soliton& b) { return a.leftmost() < b.leftmost(); });
  }
}

struct Letter {
  Site site;
  std::uint8_t bit;
};

// Runs of the word as [begin, end) index pairs.
std::vector<std::pair<std::size_t, std::size_t>> runs_of(const std::vector<Letter>& word) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i + 1;
    while (j < word.size() && word[j].bit == word[i].bit) ++j;
    runs.emplace_back(i, j);
    i = j;
  }
  return runs;
}

void identify_excursion(std::vector<Letter> word, SolitonSet& out) {
  while (!word.empty()) {
    const auto runs = runs_of(word);
    std::size_t pick = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
      if (runs[r].second - runs[r].first >= runs[r - 1].second - runs[r - 1].first) {
        pick = r;
        break;
      }
    }
    if (pick == 0) throw ConsistencyError("identify_batch: no removable run in excursion");
    const auto [pb, pe] = runs[pick - 1];
    const std::size_t k = pe - pb;
    Soliton s;
    s.size = static_cast<int>(k);
    for (std::size_t i = pb; i < pe + k; ++i) (word[i].bit ? s.head : s.tail).push_back(word[i].site);
    std::sort(s.head.begin(), s.head.end());
    std::sort(s.tail.begin(), s.tail.end());
    out.by_size[s.size].push_back(std::move(s));
    word.erase(word.begin() + static_cast<std::ptrdiff_t>(pb), word.begin() + static_cast<std::ptrdiff_t>(pe + k));
  }
}

}  // namespace

SolitonSet identify_batch(const BallConfig& config) {
  const BallConfig ext = config.record_terminated();
  SolitonSet out;
  out.window = ext.size();
  const RecordIndex index = records(ext);
  out.record_sites.assign(index.positions().begin(), index.positions().end());

  for (const Excursion& e : excursions(ext)) {
    if (e.empty()) continue;
    std::vector<Letter> word;
    word.reserve(e.support_size());
    for (Site x = e.left_record + 1; x < e.right_record; ++x) word.push_back({x, static_cast<std::uint8_t>(ext[x])});
    identify_excursion(std::move(word), out);
  }
  finalize(out);
  return out;
}

SolitonSet identify_stream(const BallConfig& config) {
  struct Run {
    std::uint8_t bit;
    std::vector<Site> sites;
  };

  const BallConfig ext = config.record_terminated();
  SolitonSet out;
  out.window = ext.size();

  std::vector<Run> stack;
  const auto bits = ext.bits();
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const auto bit = bits[i];
    const auto x = static_cast<Site>(i);
    if (stack.empty()) {
      if (bit == 0) {
        out.record_sites.push_back(x);  // absorbed into the empty prefix
        continue;
      }
      stack.push_back({bit, {x}});
    } else if (stack.back().bit == bit) {
      stack.back().sites.push_back(x);
    } else {
      stack.push_back({bit, {x}});
    }

    const std::size_t n = stack.size();
    if (n >= 2 && stack[n - 1].sites.size() == stack[n - 2].sites.size()) {
      Soliton s;
      s.size = static_cast<int>(stack[n - 1].sites.size());
      Run& a = stack[n - 2];
      Run& b = stack[n - 1];
      s.head = std::move(a.bit ? a.sites : b.sites);
      s.tail = std::move(a.bit ? b.sites : a.sites);
      std::sort(s.head.begin(), s.head.end());
      std::sort(s.tail.begin(), s.tail.end());
      out.by_size[s.size].push_back(std::move(s));
      stack.resize(n - 2);
    }
  }
  if (!stack.empty()) throw ConsistencyError("identify_stream: unterminated run stack");
  finalize(out);
  return out;
}

Pairing pair_one_step(const SolitonSet& before, const SolitonSet& after) {
  Pairing pairing;
  for (const auto& [k, list] : before.by_size) {
    auto it = after.by_size.find(k);
    const std::size_t n_after = it == after.by_size.end() ? 0 : it->second.size();
    if (n_after != list.size()) {
      throw ConsistencyError("pair_one_step: " + std::to_string(list.size()) + " " + std::to_string(k) +
                             "-solitons before, " + std::to_string(n_after) + " after");
    }
    std::unordered_map<Site, std::size_t> by_first_head;
    by_first_head.reserve(n_after);
    for (std::size_t j = 0; j < n_after; ++j) by_first_head.emplace(it->second[j].head.front(), j);

    auto& image = pairing.after[k];
    image.resize(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto hit = by_first_head.find(list[i].tail.front());
      if (hit == by_first_head.end() || it->second[hit->second].head != list[i].tail) {
        throw ConsistencyError("pair_one_step: tail of " + std::to_string(k) + "-soliton at " +
                               std::to_string(list[i].leftmost()) + " has no matching head");
      }
      image[i] = hit->second;
      by_first_head.erase(hit);
    }
  }
  for (const auto& [k, list] : after.by_size) {
    if (!before.by_size.contains(k) && !list.empty()) {
      throw ConsistencyError("pair_one_step: " + std::to_string(k) + "-solitons appeared from nowhere");
    }
  }
  return pairing;
}

Pairing pair_one_step(const SolitonSet& before, const BallConfig& after_config) {
  return pair_one_step(before, identify_stream(after_config));
}

std::string soliton_report(const SolitonSet& set) {
  std::ostringstream os;
  auto join = [&os](const std::vector<Site>& sites) {
    for (std::size_t i = 0; i < sites.size(); ++i) os << (i ? "," : "") << sites[i];
  };
  for (const Soliton* s : set.ordered()) {
    os << "k=" << s->size << " head=";
    join(s->head);
    os << " tail=";
    join(s->tail);
    os << '\n';
  }
  return os.str();
}

}  // namespace bbs
