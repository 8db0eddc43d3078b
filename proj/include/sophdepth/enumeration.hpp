#pragma once

// Exhaustive enumeration of one-part programs w = E(p)·d: halting records in
// computation-time order, Busy Beaver values, marker sequences and Ω bounds.
//
// Programs are not run one input at a time. Each raw program p is explored once
// over all data tails d with |E(p)| + |d| ≤ maxLen (see explore()); a leaf of
// that tree stands for every tail that follows its path.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "sophdepth/vm.hpp"

namespace sophdepth {

inline constexpr std::size_t kDefaultMaxLenCeiling = 26;

/// Hard ceiling on enumerated program length; SOPHDEPTH_MAX_LEN_CEILING overrides.
inline std::size_t max_len_ceiling() {
  if (const char* env = std::getenv("SOPHDEPTH_MAX_LEN_CEILING")) {
    try {
      return static_cast<std::size_t>(std::stoul(env));
    } catch (const std::exception&) {
    }
  }
  return kDefaultMaxLenCeiling;
}

inline void check_ceiling(std::size_t max_len) {
  if (max_len > max_len_ceiling()) {
    throw std::out_of_range("maxLen " + std::to_string(max_len) + " exceeds ceiling " +
                            std::to_string(max_len_ceiling()));
  }
}

inline std::size_t default_workers() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs fn(i) for i in [0, n) on `workers` threads (0 = all cores). Work is
/// handed out dynamically; callers write results into per-index slots.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  if (workers == 0) workers = default_workers();
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = n;
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct HaltRecord {
  BitString w;
  BitString output;
  std::uint64_t steps = 0;
  friend bool operator==(const HaltRecord&, const HaltRecord&) = default;
};

/// (steps, |w|, lex w)
inline bool time_order(const HaltRecord& a, const HaltRecord& b) {
  if (a.steps != b.steps) return a.steps < b.steps;
  return a.w < b.w;
}

/// One node of the program space: a raw program with its header and tree.
struct IndexedProgram {
  BitString program;
  BitString header;  // E(program)
  std::size_t data_limit = 0;
  std::shared_ptr<const Exploration> tree;
};

struct LeafRef {
  std::uint32_t program = 0;
  std::uint32_t leaf = 0;
};

/// Every one-part program w with |w| ≤ maxLen, explored under one budget.
class ProgramIndex {
 public:
  /// Trees with more leaves are cut off and count as undecided.
  static constexpr std::size_t kLeafCap = std::size_t{1} << 18;

  ProgramIndex(std::size_t max_len, Budget budget, std::size_t workers = 0)
      : max_len_(max_len), budget_(budget) {
    struct Job {
      std::uint64_t code;
      std::size_t ops;
      std::size_t data_limit;
    };
    struct TreeResult {
      std::shared_ptr<const Exploration> tree;
      std::uint64_t exceeded = 0;
    };
    // Raw lengths L whose headers fit; raw programs differing only in the trailing
    // partial group share a tree.
    std::vector<Job> jobs;
    std::vector<std::size_t> lengths;
    for (std::size_t len = 0; self_delim_length(len) <= max_len; ++len) lengths.push_back(len);
    std::vector<std::size_t> first_job;
    for (std::size_t len : lengths) {
      first_job.push_back(jobs.size());
      const std::size_t n = len / 3;
      const std::uint64_t count = std::uint64_t{1} << (3 * n);
      for (std::uint64_t code = 0; code < count; ++code) {
        jobs.push_back({code, n, max_len - self_delim_length(len)});
      }
    }
    std::vector<TreeResult> results(jobs.size());
    std::vector<char> valid(jobs.size(), 0);
    parallel_for(jobs.size(), workers, [&](std::size_t j) {
      const DecodedProgram prog = decode(BitString::from_uint(jobs[j].code, 3 * jobs[j].ops));
      if (!prog.valid()) return;
      valid[j] = 1;
      auto tree = std::make_shared<Exploration>(
          explore_bounded(prog, jobs[j].data_limit, budget_, kLeafCap));
      std::uint64_t exceeded = 0;
      for (const Leaf& leaf : tree->leaves) {
        if (leaf.outcome.status == Status::BudgetExceeded) {
          exceeded += covered_input_count(leaf, jobs[j].data_limit);
        } else if (leaf.outcome.status == Status::ProvenDivergent) {
          // Shortened tails take the same path but may repeat a configuration later.
          const std::size_t lo = minimal_input(leaf).size();
          for (std::size_t m = lo; m < leaf.read.size(); ++m) {
            if (run(prog, leaf.read.substr(0, m), budget_).status == Status::BudgetExceeded) {
              ++exceeded;
            }
          }
        }
      }
      results[j] = TreeResult{std::move(tree), exceeded};
    });
    for (std::size_t li = 0; li < lengths.size(); ++li) {
      const std::size_t len = lengths[li];
      const std::size_t n = len / 3;
      const std::size_t junk = len % 3;
      const std::size_t end = li + 1 < lengths.size() ? first_job[li + 1] : jobs.size();
      for (std::size_t j = first_job[li]; j < end; ++j) {
        const std::uint64_t variants = std::uint64_t{1} << junk;
        if (!valid[j]) continue;
        exceeded_ += results[j].exceeded * variants;
        if (results[j].tree->truncated) truncated_ += variants;
        const BitString ops = BitString::from_uint(jobs[j].code, 3 * n);
        for (std::uint64_t v = 0; v < variants; ++v) {
          BitString p = ops + BitString::from_uint(v, junk);
          BitString header = encode_self_delim(p);
          programs_.push_back({std::move(p), std::move(header), jobs[j].data_limit, results[j].tree});
        }
      }
    }
    for (std::uint32_t i = 0; i < programs_.size(); ++i) {
      const auto& leaves = programs_[i].tree->leaves;
      for (std::uint32_t k = 0; k < leaves.size(); ++k) {
        if (!leaves[k].outcome.halted()) continue;
        producers_[leaves[k].outcome.output].push_back({i, k});
        halted_.push_back({i, k});
      }
    }
  }

  [[nodiscard]] std::size_t max_len() const { return max_len_; }
  [[nodiscard]] const Budget& budget() const { return budget_; }
  [[nodiscard]] const std::vector<IndexedProgram>& programs() const { return programs_; }
  [[nodiscard]] const std::vector<LeafRef>& halted() const { return halted_; }

  /// Number of w that ran out of budget without a divergence certificate.
  [[nodiscard]] std::uint64_t budget_exceeded_count() const { return exceeded_; }
  [[nodiscard]] std::uint64_t truncated_trees() const { return truncated_; }
  /// Every w either halted or was proven divergent (or is invalid).
  [[nodiscard]] bool decided() const { return exceeded_ == 0 && truncated_ == 0; }

  [[nodiscard]] const IndexedProgram& program(LeafRef r) const { return programs_[r.program]; }
  [[nodiscard]] const Leaf& leaf(LeafRef r) const {
    return programs_[r.program].tree->leaves[r.leaf];
  }

  /// Shortest w following this leaf.
  [[nodiscard]] BitString shortest_w(LeafRef r) const {
    return programs_[r.program].header + minimal_input(leaf(r));
  }

  /// Halted leaves with output x.
  [[nodiscard]] const std::vector<LeafRef>& producers(const BitString& x) const {
    static const std::vector<LeafRef> none;
    auto it = producers_.find(x);
    return it == producers_.end() ? none : it->second;
  }

  /// Calls fn(w) on each w of this leaf in (|w|, lex) order until fn returns false.
  template <class Fn>
  void for_each_w(LeafRef r, Fn&& fn) const {
    const IndexedProgram& p = programs_[r.program];
    for_each_covered_input(leaf(r), p.data_limit,
                           [&](const BitString& d) { return fn(p.header + d); });
  }

 private:
  std::size_t max_len_;
  Budget budget_;
  std::vector<IndexedProgram> programs_;
  std::unordered_map<BitString, std::vector<LeafRef>> producers_;
  std::vector<LeafRef> halted_;
  std::uint64_t exceeded_ = 0;
  std::uint64_t truncated_ = 0;
};

/// Shared, lazily built indexes keyed by (maxLen, budget). Results do not depend
/// on the worker count, so it is not part of the key.
inline std::shared_ptr<const ProgramIndex> program_index(std::size_t max_len, Budget budget,
                                                         std::size_t workers = 0) {
  check_ceiling(max_len);
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>,
                  std::shared_ptr<const ProgramIndex>>
      cache;
  const auto key = std::make_tuple(max_len, budget.max_steps,
                                   budget.max_excursion.value_or(UINT64_MAX));
  std::lock_guard lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::make_shared<const ProgramIndex>(max_len, budget, workers);
  return slot;
}

struct EnumerationStats {
  std::uint64_t halted = 0;
  std::uint64_t budget_exceeded = 0;
  std::uint64_t truncated_trees = 0;
};

/// Every w with |w| ≤ maxLen halting within b, ordered by (steps, |w|, lex w).
inline std::vector<HaltRecord> enumerate_halting(std::size_t max_len, Budget budget,
                                                 std::size_t workers = 0,
                                                 EnumerationStats* stats = nullptr) {
  check_ceiling(max_len);
  const ProgramIndex index(max_len, budget, workers);
  std::vector<HaltRecord> records;
  for (LeafRef r : index.halted()) {
    const ExecOutcome& o = index.leaf(r).outcome;
    index.for_each_w(r, [&](const BitString& w) {
      records.push_back({w, o.output, o.steps});
      return true;
    });
  }
  std::sort(records.begin(), records.end(), time_order);
  if (stats) *stats = {records.size(), index.budget_exceeded_count(), index.truncated_trees()};
  return records;
}

/// `steps<TAB>program<TAB>output`, '-' for the empty string.
inline void write_record(std::ostream& os, const HaltRecord& r) {
  os << r.steps << '\t' << r.w.field() << '\t' << r.output.field() << '\n';
}

enum class BBKind { ExactUnderBudget, LowerBound };

inline std::string_view bb_kind_name(BBKind k) {
  return k == BBKind::ExactUnderBudget ? "ExactUnderBudget" : "LowerBound";
}

struct BBValue {
  std::uint64_t argument = 0;
  std::uint64_t value = 0;
  BBKind kind = BBKind::ExactUnderBudget;
  BitString witness;
};

/// BB(l): the longest halting time among |w| ≤ l. Ties go to the shortest, then
/// lex-least, w.
inline BBValue busy_beaver(std::size_t l, Budget budget, std::size_t workers = 0) {
  BBValue out{l, 0, BBKind::ExactUnderBudget, {}};
  if (l < 3) return out;
  const auto index = program_index(l, budget, workers);
  bool found = false;
  for (LeafRef r : index->halted()) {
    const std::uint64_t steps = index->leaf(r).outcome.steps;
    const BitString w = index->shortest_w(r);
    if (!found || steps > out.value || (steps == out.value && w < out.witness)) {
      out.value = steps;
      out.witness = w;
      found = true;
    }
  }
  if (!index->decided()) out.kind = BBKind::LowerBound;
  return out;
}

/// bb(n): the length of a shortest w (|w| ≤ maxLen) halting after ≥ n steps.
inline BBValue inverse_bb(std::uint64_t n, Budget budget, std::size_t max_len,
                          std::size_t workers = 0) {
  BBValue out{n, max_len + 1, BBKind::LowerBound, {}};
  const auto index = program_index(max_len, budget, workers);
  for (LeafRef r : index->halted()) {
    if (index->leaf(r).outcome.steps < n) continue;
    const BitString w = index->shortest_w(r);
    if (out.kind == BBKind::LowerBound || w < out.witness) {
      out.value = w.size();
      out.witness = w;
      out.kind = BBKind::ExactUnderBudget;
    }
  }
  return out;
}

struct MarkerItem {
  bool marker = false;
  std::uint64_t steps = 0;
  BitString value;    // the output (strings only)
  BitString program;  // the w that produced it (or the length-l program, for markers)
};

struct MarkerSequence {
  std::size_t l = 0;
  std::size_t k = 0;
  Budget budget;
  std::vector<MarkerItem> items;

  [[nodiscard]] std::size_t marker_count() const {
    return static_cast<std::size_t>(
        std::count_if(items.begin(), items.end(), [](const MarkerItem& m) { return m.marker; }));
  }
  [[nodiscard]] std::size_t string_count() const { return items.size() - marker_count(); }

  /// Position of the last marker, or items.size() if there is none.
  [[nodiscard]] std::size_t last_marker() const {
    for (std::size_t i = items.size(); i > 0; --i) {
      if (items[i - 1].marker) return i - 1;
    }
    return items.size();
  }
};

/// Outputs of all w of length exactly l or k in time order; after the strings of
/// each step count, one marker per length-l program halting at that count.
inline MarkerSequence marker_sequence(std::size_t l, std::size_t k, Budget budget,
                                      std::size_t workers = 0) {
  if (l > k) throw std::invalid_argument("marker_sequence: need l ≤ k");
  MarkerSequence seq{l, k, budget, {}};
  if (k < 3) return seq;
  const auto index = program_index(k, budget, workers);
  std::vector<HaltRecord> records;
  for (LeafRef r : index->halted()) {
    const ExecOutcome& o = index->leaf(r).outcome;
    index->for_each_w(r, [&](const BitString& w) {
      if (w.size() == l || w.size() == k) records.push_back({w, o.output, o.steps});
      return true;
    });
  }
  std::sort(records.begin(), records.end(), time_order);
  for (std::size_t i = 0; i < records.size();) {
    std::size_t j = i;
    while (j < records.size() && records[j].steps == records[i].steps) ++j;
    for (std::size_t t = i; t < j; ++t) {
      seq.items.push_back({false, records[t].steps, records[t].output, records[t].w});
    }
    for (std::size_t t = i; t < j; ++t) {
      if (records[t].w.size() == l) seq.items.push_back({true, records[t].steps, {}, records[t].w});
    }
    i = j;
  }
  return seq;
}

/// Strings as `steps<TAB>program<TAB>output`, markers as `M<TAB>steps`.
inline void write_marker_sequence(std::ostream& os, const MarkerSequence& seq) {
  for (const auto& item : seq.items) {
    if (item.marker) {
      os << "M\t" << item.steps << '\n';
    } else {
      write_record(os, {item.program, item.value, item.steps});
    }
  }
}

/// numerator / 2^exponent
struct Dyadic {
  std::uint64_t numerator = 0;
  std::size_t exponent = 0;

  [[nodiscard]] double value() const {
    return static_cast<double>(numerator) / static_cast<double>(std::uint64_t{1} << exponent);
  }
  [[nodiscard]] std::string to_string() const {
    return std::to_string(numerator) + "/2^" + std::to_string(exponent);
  }
  friend auto operator<=>(const Dyadic& a, const Dyadic& b) {
    const std::size_t e = std::max(a.exponent, b.exponent);
    return (a.numerator << (e - a.exponent)) <=> (b.numerator << (e - b.exponent));
  }
  friend bool operator==(const Dyadic& a, const Dyadic& b) { return (a <=> b) == 0; }
};

/// Σ 2^−|E(p)| over raw p with |E(p)| ≤ ceiling and run(p, ε, t) halted.
inline Dyadic omega_lower_bound(std::uint64_t t, std::size_t ceiling = max_len_ceiling(),
                                std::size_t workers = 0) {
  std::vector<std::size_t> lengths;
  for (std::size_t len = 0; self_delim_length(len) <= ceiling; ++len) lengths.push_back(len);
  std::vector<std::uint64_t> sums(lengths.size(), 0);
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    const std::size_t len = lengths[li];
    const std::size_t n = len / 3;
    const std::uint64_t count = std::uint64_t{1} << (3 * n);
    std::vector<char> halts(count, 0);
    parallel_for(count, workers, [&](std::size_t code) {
      halts[code] = run(BitString::from_uint(code, 3 * n), {}, Budget::steps(t)).halted();
    });
    const std::uint64_t weight = std::uint64_t{1} << (ceiling - self_delim_length(len));
    const std::uint64_t variants = std::uint64_t{1} << (len % 3);
    for (char h : halts) sums[li] += h ? weight * variants : 0;
  }
  Dyadic out{0, ceiling};
  for (auto s : sums) out.numerator += s;
  return out;
}

}  // namespace sophdepth
