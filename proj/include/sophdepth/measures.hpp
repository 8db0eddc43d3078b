#pragma once

// Budgeted measures over the reference machine: complexity, conditional
// complexity, logical depth (plain, Busy Beaver, Bennett), sophistication, set
// sophistication, typicality and the structure set.
//
// Every value carries the budget it was computed under and a bound kind. A value
// found by exhaustive search below maxLen is an UpperBound (more budget can only
// reveal more halting programs); when nothing is found the result is a LowerBound
// one past the searched range.

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "sophdepth/codegen.hpp"
#include "sophdepth/enumeration.hpp"
#include "sophdepth/vm.hpp"

namespace sophdepth {

enum class BoundKind { UpperBound, LowerBound, BudgetStable, Undefined };

inline std::string_view bound_kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::UpperBound: return "UpperBound";
    case BoundKind::LowerBound: return "LowerBound";
    case BoundKind::BudgetStable: return "BudgetStable";
    case BoundKind::Undefined: return "Undefined";
  }
  return "?";
}

struct MeasureValue {
  std::uint64_t value = 0;
  BoundKind kind = BoundKind::Undefined;
  Budget budget;
  std::optional<BitString> witness;  // w, or p of a pair
  std::optional<BitString> second;   // d of a (p, d) pair, q of an ld^bb pair
  std::uint64_t witness_steps = 0;

  [[nodiscard]] bool defined() const { return kind != BoundKind::Undefined; }
  [[nodiscard]] bool lower() const { return kind == BoundKind::LowerBound; }
  [[nodiscard]] bool upper() const {
    return kind == BoundKind::UpperBound || kind == BoundKind::BudgetStable;
  }

  /// "w", "p/d", or "-".
  [[nodiscard]] std::string witness_text() const {
    if (!witness) return "-";
    std::string s = witness->field();
    if (second) s += "/" + second->field();
    return s;
  }

  static MeasureValue undefined(Budget b) { return MeasureValue{0, BoundKind::Undefined, b}; }
};

enum class SophMode { Bounded, Extended };

struct MeasureOptions {
  Budget budget = Budget::steps(10000);
  std::size_t max_len = 20;             // one-part programs searched for C, ld, bb
  std::size_t workers = 0;              // 0 = all cores
  bool seeded = false;                  // add synthesized witnesses as upper bounds
  bool doubling_test = false;           // upgrade stable values to BudgetStable
  std::size_t max_soph_len = 17;        // raw program lengths searched by sophistication
  std::size_t conditional_max_len = 15; // raw programs searched for C(x|y)
  SophMode soph_mode = SophMode::Bounded;
  std::size_t extended_len = 0;         // totality domain added in Extended mode
};

namespace detail {

/// READ LOOP READ OUT READ END: reads flag/bit pairs and prints each bit while
/// the flag is 1. Halts on every input.
inline BitString pair_reader() {
  return assemble({Op::Read, Op::Loop, Op::Read, Op::Out, Op::Read, Op::End});
}

inline BitString pair_reader_data(const BitString& x) {
  BitString d;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d.push_back(true);
    d.push_back(x[i]);
  }
  return d;
}

/// Synthesized two-part codes (p, d) with run(p, d) = x.
inline std::vector<std::pair<BitString, BitString>> seed_pairs(const BitString& x) {
  return {{synth_print(x).program, {}},
          {synth_copy_n(x.size(), CopyStrategy::Shortest).program, x},
          {pair_reader(), pair_reader_data(x)}};
}

/// Totality of a seed on |d| ≤ domain: the full input tree when it fits under the
/// leaf cap, else a capped check that must show the program never reads past it.
inline bool seed_total_on(const BitString& p, std::size_t domain, Budget budget) {
  const Exploration tree = explore_bounded(decode(p), domain, budget, ProgramIndex::kLeafCap);
  if (!tree.truncated) {
    return std::all_of(tree.leaves.begin(), tree.leaves.end(),
                       [](const Leaf& l) { return l.outcome.halted(); });
  }
  const auto t = is_total_on(p, std::min<std::size_t>(domain, kCopierCertifyCap), budget);
  return t.verdict == Totality::TotalVerified && t.total_everywhere;
}

/// The seeds as one-part programs, shortest first.
inline std::vector<BitString> seed_programs(const BitString& x) {
  std::vector<BitString> seeds;
  for (const auto& [p, d] : seed_pairs(x)) seeds.push_back(encode_self_delim(p) + d);
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

}  // namespace detail

inline MeasureValue with_doubling(const MeasureOptions& opts,
                                  MeasureValue (*fn)(const BitString&, const MeasureOptions&),
                                  const BitString& x) {
  MeasureOptions plain = opts;
  plain.doubling_test = false;
  MeasureValue v = fn(x, plain);
  if (!opts.doubling_test || v.kind != BoundKind::UpperBound) return v;
  plain.budget = opts.budget.doubled();
  const MeasureValue again = fn(x, plain);
  if (again.kind == BoundKind::UpperBound && again.value == v.value) v.kind = BoundKind::BudgetStable;
  return v;
}

/// C(x) = min |w| with U1(w) = x; witness is the lex-least shortest w.
inline MeasureValue complexity(const BitString& x, const MeasureOptions& opts) {
  if (opts.doubling_test) {
    return with_doubling(opts, [](const BitString& y, const MeasureOptions& o) { return complexity(y, o); }, x);
  }
  const auto index = program_index(opts.max_len, opts.budget, opts.workers);
  MeasureValue out{opts.max_len + 1, BoundKind::LowerBound, opts.budget};
  for (LeafRef r : index->producers(x)) {
    const BitString w = index->shortest_w(r);
    if (!out.witness || w < *out.witness) {
      out.value = w.size();
      out.kind = BoundKind::UpperBound;
      out.witness = w;
      out.witness_steps = index->leaf(r).outcome.steps;
    }
  }
  if (opts.seeded) {
    for (const BitString& w : detail::seed_programs(x)) {
      if (out.witness && out.witness->size() <= w.size()) continue;
      const auto r = run_one_part(w, opts.budget);
      if (!r.halted() || r.output != x) continue;
      out = MeasureValue{w.size(), BoundKind::UpperBound, opts.budget, w, std::nullopt, r.steps};
    }
  }
  return out;
}

inline MeasureValue complexity(const BitString& x, Budget b, std::size_t max_len) {
  MeasureOptions o;
  o.budget = b;
  o.max_len = max_len;
  return complexity(x, o);
}

/// C(x|y) = min |p| with run(p, y) = x over raw programs |p| ≤ max_len.
inline MeasureValue conditional_complexity(const BitString& x, const BitString& y, Budget b,
                                           std::size_t max_len) {
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::optional<BitString> found;
    for_each_of_length(len, [&](const BitString& p) {
      if (found) return;
      const auto r = run(p, y, b);
      if (r.halted() && r.output == x) found = p;
    });
    if (found) return MeasureValue{len, BoundKind::UpperBound, b, found};
  }
  return MeasureValue{max_len + 1, BoundKind::LowerBound, b};
}

/// ld_c(x) = min steps over w with |w| ≤ C(x)+c and U1(w) = x. Ties go to (|w|, lex).
inline MeasureValue logical_depth(const BitString& x, std::size_t c, const MeasureOptions& opts) {
  const MeasureValue cx = complexity(x, opts);
  if (cx.lower() || !cx.defined()) return MeasureValue::undefined(opts.budget);
  const std::size_t cap = cx.value + c;
  const auto index = program_index(opts.max_len, opts.budget, opts.workers);
  MeasureValue out = MeasureValue::undefined(opts.budget);
  auto consider = [&](const BitString& w, std::uint64_t steps) {
    if (w.size() > cap) return;
    if (!out.witness || steps < out.value || (steps == out.value && w < *out.witness)) {
      out = MeasureValue{steps, BoundKind::UpperBound, opts.budget, w, std::nullopt, steps};
    }
  };
  for (LeafRef r : index->producers(x)) consider(index->shortest_w(r), index->leaf(r).outcome.steps);
  if (opts.seeded) {
    for (const BitString& w : detail::seed_programs(x)) {
      const auto r = run_one_part(w, opts.budget);
      if (r.halted() && r.output == x) consider(w, r.steps);
    }
  }
  if (cx.witness) consider(*cx.witness, cx.witness_steps);
  return out;
}

/// ld^bb_c(x) = bb(ld_c(x)). The ld witness itself runs ≥ ld_c(x) steps, so it
/// bounds the search when no shorter program is found below maxLen.
inline MeasureValue bb_logical_depth(const BitString& x, std::size_t c, const MeasureOptions& opts) {
  const MeasureValue ld = logical_depth(x, c, opts);
  if (!ld.defined()) return ld;
  const BBValue inv = inverse_bb(ld.value, opts.budget, opts.max_len, opts.workers);
  MeasureValue out{ld.witness->size(), BoundKind::UpperBound, opts.budget, ld.witness, ld.witness};
  if (inv.kind == BBKind::ExactUnderBudget && inv.value <= out.value) {
    out.value = inv.value;
    out.second = inv.witness;
  }
  return out;
}

/// Bennett's variant: min steps over w with U1(w) = x and C(w) ≥ |w| − c. A w
/// with no program found below maxLen counts as incompressible.
inline MeasureValue bennett_depth(const BitString& x, std::size_t c, const MeasureOptions& opts) {
  const auto index = program_index(opts.max_len, opts.budget, opts.workers);
  auto incompressible = [&](const BitString& w) {
    std::size_t best = opts.max_len + 1;
    for (LeafRef r : index->producers(w)) best = std::min(best, index->shortest_w(r).size());
    return best + c >= w.size();
  };
  std::vector<LeafRef> refs = index->producers(x);
  std::sort(refs.begin(), refs.end(), [&](LeafRef a, LeafRef b) {
    return index->leaf(a).outcome.steps < index->leaf(b).outcome.steps;
  });
  MeasureValue out = MeasureValue::undefined(opts.budget);
  for (LeafRef r : refs) {
    const std::uint64_t steps = index->leaf(r).outcome.steps;
    if (out.witness && steps > out.value) break;
    index->for_each_w(r, [&](const BitString& w) {
      if (out.witness && steps == out.value && !(w < *out.witness)) return false;
      if (!incompressible(w)) return true;
      out = MeasureValue{steps, BoundKind::UpperBound, opts.budget, w, std::nullopt, steps};
      return false;
    });
  }
  return out;
}

// ---------------------------------------------------------------- sophistication

namespace detail {

struct SophVerdict {
  bool qualifies = false;
  bool inconclusive_candidate = false;
  BitString data;
};

/// Classifies one raw program for every data limit in `limits` (nondecreasing):
/// total on |d| ≤ limit (plus `extra` in Extended mode), and producing x from
/// some d with |d| ≤ limit.
inline std::vector<SophVerdict> soph_verdicts(const DecodedProgram& prog, const BitString& x,
                                              const std::vector<std::ptrdiff_t>& limits,
                                              std::size_t extra, Budget budget) {
  std::vector<SophVerdict> out(limits.size());
  if (!prog.valid() || limits.empty() || limits.back() < 0) return out;
  const auto fork = static_cast<std::size_t>(std::max<std::ptrdiff_t>(
      limits.back(), static_cast<std::ptrdiff_t>(extra)));
  const Exploration tree = explore_bounded(prog, fork, budget, ProgramIndex::kLeafCap);
  for (std::size_t i = 0; i < limits.size(); ++i) {
    if (limits[i] < 0) continue;
    const auto limit = static_cast<std::size_t>(limits[i]);
    const std::size_t domain = std::max(limit, extra);
    std::optional<BitString> data;
    bool all_halt = !tree.truncated;
    bool divergent = false;
    for (const Leaf& leaf : tree.leaves) {
      const BitString dmin = minimal_input(leaf);
      if (dmin.size() > domain) continue;
      if (leaf.outcome.halted()) {
        if (leaf.outcome.output == x && dmin.size() <= limit && (!data || dmin < *data)) data = dmin;
        continue;
      }
      all_halt = false;
      if (divergent) continue;
      if (leaf.read.size() <= domain && leaf.outcome.status == Status::ProvenDivergent) {
        divergent = true;
        continue;
      }
      for (std::size_t m = dmin.size(); m < leaf.read.size() && m <= domain && !divergent; ++m) {
        divergent = run(prog, leaf.read.substr(0, m), budget).status == Status::ProvenDivergent;
      }
    }
    if (!data) continue;
    if (all_halt) {
      out[i] = {true, false, *data};
    } else if (!divergent) {
      out[i] = {false, true, {}};
    }
  }
  return out;
}

}  // namespace detail

/// soph_c(x) for every c in `cs` at once. One exploration per candidate program,
/// at the largest data limit, serves every smaller c.
inline std::vector<MeasureValue> sophistication_curve(const BitString& x,
                                                      const std::vector<std::size_t>& cs,
                                                      const MeasureOptions& opts) {
  std::vector<MeasureValue> out(cs.size(), MeasureValue::undefined(opts.budget));
  const MeasureValue cx = complexity(x, opts);
  if (!cx.defined() || cx.lower() || cs.empty()) return out;
  std::vector<std::size_t> order(cs.size());
  for (std::size_t i = 0; i < cs.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cs[a] < cs[b]; });
  const std::size_t extra = opts.soph_mode == SophMode::Extended ? opts.extended_len : 0;

  std::vector<bool> done(cs.size(), false);
  std::vector<std::optional<std::size_t>> blocked(cs.size());
  std::size_t remaining = cs.size();
  const std::size_t k_max = cx.value + cs[order.back()];
  const std::size_t top = std::min(opts.max_soph_len, k_max);
  for (std::size_t len = 0; len <= top && remaining > 0; ++len) {
    std::vector<std::ptrdiff_t> limits;
    for (std::size_t i : order) {
      limits.push_back(done[i] ? -1
                               : static_cast<std::ptrdiff_t>(cx.value + cs[i]) -
                                     static_cast<std::ptrdiff_t>(len));
    }
    const std::size_t n = len / 3;
    const std::uint64_t count = std::uint64_t{1} << (3 * n);
    std::vector<std::vector<detail::SophVerdict>> verdicts(count);
    parallel_for(count, opts.workers, [&](std::size_t code) {
      verdicts[code] = detail::soph_verdicts(decode(BitString::from_uint(code, 3 * n)), x, limits,
                                             extra, opts.budget);
    });
    // Lex order over raw programs: the partial trailing group is all zeros in
    // the least program of each behaviour.
    for (std::size_t j = 0; j < order.size(); ++j) {
      const std::size_t i = order[j];
      if (done[i]) continue;
      for (std::uint64_t code = 0; code < count; ++code) {
        const auto& v = verdicts[code][j];
        if (v.inconclusive_candidate && !blocked[i] && len > 0) blocked[i] = len;
        if (!v.qualifies) continue;
        const BitString p = BitString::from_uint(code, 3 * n) + BitString::zeros(len % 3);
        out[i] = MeasureValue{len, BoundKind::UpperBound, opts.budget, p, v.data};
        if (blocked[i] && *blocked[i] < len) {
          out[i].kind = BoundKind::LowerBound;
          out[i].value = *blocked[i];
        }
        done[i] = true;
        --remaining;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (done[i]) continue;
    const std::size_t k = cx.value + cs[i];
    const std::size_t searched = std::min(opts.max_soph_len, k);
    // Nothing at any length ≤ K qualifies exactly when the search covered all of them.
    out[i] = MeasureValue{blocked[i].value_or(searched + 1), BoundKind::LowerBound, opts.budget};
    if (opts.seeded) {
      for (const auto& [p, d] : detail::seed_pairs(x)) {
        if (p.size() + d.size() > k) continue;
        if (out[i].upper() && out[i].value <= p.size()) continue;
        const auto r = run(p, d, opts.budget);
        if (!r.halted() || r.output != x) continue;
        const std::size_t domain = std::max(k - p.size(), extra);
        if (!detail::seed_total_on(p, domain, opts.budget)) continue;
        out[i] = MeasureValue{p.size(), BoundKind::UpperBound, opts.budget, p, d};
      }
    }
  }
  return out;
}

inline MeasureValue sophistication(const BitString& x, std::size_t c, const MeasureOptions& opts) {
  return sophistication_curve(x, {c}, opts).front();
}

// ---------------------------------------------------------------- set models

/// Concatenation of E(element) over the elements in length-lex order.
inline BitString encode_set(std::vector<BitString> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  BitString out;
  for (const auto& e : elements) out.append(encode_self_delim(e));
  return out;
}

/// Inverse of encode_set; nullopt unless the string is exactly such a
/// concatenation with strictly increasing elements.
inline std::optional<std::vector<BitString>> decode_set(const BitString& s) {
  std::vector<BitString> elements;
  std::size_t pos = 0;
  while (pos < s.size()) {
    auto split = split_one_part(s.substr(pos));
    if (!split) return std::nullopt;
    if (!elements.empty() && !(elements.back() < split->program)) return std::nullopt;
    pos += self_delim_length(split->program.size());
    elements.push_back(std::move(split->program));
  }
  return elements;
}

struct SetModel {
  BitString describing_program;
  std::vector<BitString> elements;  // length-lex sorted
  BitString encoded_form;

  [[nodiscard]] bool contains(const BitString& x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  [[nodiscard]] std::size_t log_size() const { return ceil_log2(elements.size()); }
};

/// One model per distinct nonempty set printed by some w with |w| ≤ i_max, with
/// its lex-least shortest describing program; sorted by that program.
inline std::shared_ptr<const std::vector<SetModel>> set_models(std::size_t i_max, Budget budget,
                                                               std::size_t workers = 0) {
  static std::mutex mutex;
  static std::map<std::tuple<std::size_t, std::uint64_t, std::uint64_t>,
                  std::shared_ptr<const std::vector<SetModel>>>
      cache;
  const auto index = program_index(i_max, budget, workers);
  std::lock_guard lock(mutex);
  auto& slot = cache[{i_max, budget.max_steps, budget.max_excursion.value_or(UINT64_MAX)}];
  if (slot) return slot;
  std::map<BitString, BitString> best;  // encoded form -> shortest w
  for (LeafRef r : index->halted()) {
    const BitString& o = index->leaf(r).outcome.output;
    if (o.empty()) continue;
    const BitString w = index->shortest_w(r);
    auto it = best.find(o);
    if (it == best.end()) {
      if (decode_set(o)) best.emplace(o, w);
    } else if (w < it->second) {
      it->second = w;
    }
  }
  auto models = std::make_shared<std::vector<SetModel>>();
  for (auto& [form, w] : best) models->push_back({w, *decode_set(form), form});
  std::sort(models->begin(), models->end(), [](const SetModel& a, const SetModel& b) {
    return a.describing_program < b.describing_program;
  });
  slot = models;
  return slot;
}

/// A model whose describing program is E(synth_print(encoded form)).
inline SetModel synthesized_set_model(std::vector<BitString> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  BitString form = encode_set(elements);
  return {encode_self_delim(synth_print(form).program), std::move(elements), std::move(form)};
}

/// min |w| over models S ∋ x with |w| + ⌈log2|S|⌉ ≤ C(x) + c. Seeded mode also
/// offers the synthesized singleton {x}.
inline MeasureValue set_sophistication(const BitString& x, std::size_t c, std::size_t i_max,
                                       const MeasureOptions& opts) {
  const MeasureValue cx = complexity(x, opts);
  if (!cx.defined() || cx.lower()) return MeasureValue::undefined(opts.budget);
  const std::size_t k = cx.value + c;
  MeasureValue out{i_max + 1, BoundKind::LowerBound, opts.budget};
  for (const SetModel& m : *set_models(i_max, opts.budget, opts.workers)) {
    if (!m.contains(x) || m.describing_program.size() + m.log_size() > k) continue;
    out = MeasureValue{m.describing_program.size(), BoundKind::UpperBound, opts.budget,
                       m.describing_program};
    break;
  }
  if (opts.seeded && !out.upper()) {
    const SetModel single = synthesized_set_model({x});
    if (single.describing_program.size() <= k) {
      out = MeasureValue{single.describing_program.size(), BoundKind::UpperBound, opts.budget,
                         single.describing_program};
    }
  }
  return out;
}

/// log|S| − C(x | encodedForm) ≤ c. Programs longer than ⌈log2|S|⌉ cannot change
/// the verdict, so the conditional search stops there.
inline bool is_typical(const BitString& x, const SetModel& s, std::size_t c, Budget budget,
                       std::size_t conditional_max_len = 15) {
  if (!s.contains(x)) throw std::invalid_argument("is_typical: x is not an element of S");
  const auto cond = conditional_complexity(x, s.encoded_form, budget,
                                           std::min(conditional_max_len, s.log_size()));
  return static_cast<std::int64_t>(s.log_size()) - static_cast<std::int64_t>(cond.value) <=
         static_cast<std::int64_t>(c);
}

/// The set {run(p, e) : |e| ≤ |d|} behind a sophistication witness (p, d), with a
/// synthesized describing program. overhead = |describing program| + ⌈log2|S|⌉
/// − (|p| + |d|).
struct SophSetBridge {
  SetModel model;
  bool contains_x = false;
  bool all_halt = false;
  std::int64_t overhead = 0;
};

inline SophSetBridge soph_set_bridge(const BitString& x, const BitString& p, const BitString& d,
                                     Budget budget) {
  SophSetBridge out;
  out.all_halt = true;
  std::vector<BitString> elements;
  for_each_up_to(d.size(), [&](const BitString& e) {
    const auto r = run(p, e, budget);
    if (r.halted()) {
      elements.push_back(r.output);
    } else {
      out.all_halt = false;
    }
  });
  out.model = synthesized_set_model(std::move(elements));
  out.contains_x = out.model.contains(x);
  out.overhead = static_cast<std::int64_t>(out.model.describing_program.size() + out.model.log_size()) -
                 static_cast<std::int64_t>(p.size() + d.size());
  return out;
}

struct StructurePoint {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const StructurePoint&, const StructurePoint&) = default;
};

struct StructureSet {
  std::vector<StructurePoint> staircase;  // (i, h(i)) for each i where h is defined
  std::optional<std::size_t> singleton_anchor;  // |w| of the best {x} model
  std::optional<std::size_t> cube_anchor;       // |w| of the best {0,1}^|x| model
  std::vector<std::string> gaps;
};

/// h(i) = min ⌈log2|S|⌉ over models S ∋ x described by |w| ≤ i, for i ≤ i_max,
/// keeping points with h(i) ≤ j_max.
inline StructureSet structure_set(const BitString& x, Budget budget, std::size_t i_max,
                                  std::size_t j_max, std::size_t workers = 0) {
  StructureSet out;
  std::vector<std::optional<std::size_t>> h(i_max + 1);
  auto offer = [&](const SetModel& m) {
    const std::size_t len = m.describing_program.size();
    for (std::size_t i = len; i <= i_max; ++i) {
      if (!h[i] || m.log_size() < *h[i]) h[i] = m.log_size();
    }
  };
  auto is_cube = [&](const SetModel& m) {
    return m.elements.size() == (std::size_t{1} << x.size()) &&
           std::all_of(m.elements.begin(), m.elements.end(),
                       [&](const BitString& e) { return e.size() == x.size(); });
  };
  // Enumeration stops at the ceiling; the anchors below are synthesized.
  for (const SetModel& m : *set_models(std::min(i_max, max_len_ceiling()), budget, workers)) {
    if (!m.contains(x)) continue;
    offer(m);
    const std::size_t len = m.describing_program.size();
    if (m.elements.size() == 1 && !out.singleton_anchor) out.singleton_anchor = len;
    if (is_cube(m) && !out.cube_anchor) out.cube_anchor = len;
  }
  if (!out.singleton_anchor) {
    const auto single = synthesized_set_model({x});
    if (single.describing_program.size() <= i_max) {
      offer(single);
      out.singleton_anchor = single.describing_program.size();
    }
  }
  if (!out.cube_anchor && x.size() <= 10) {
    std::vector<BitString> cube;
    for_each_of_length(x.size(), [&](const BitString& e) { cube.push_back(e); });
    const auto m = synthesized_set_model(std::move(cube));
    if (m.describing_program.size() <= i_max) {
      offer(m);
      out.cube_anchor = m.describing_program.size();
    }
  }
  for (std::size_t i = 0; i <= i_max; ++i) {
    if (h[i] && *h[i] <= j_max) out.staircase.push_back({i, *h[i]});
  }
  if (!out.singleton_anchor) out.gaps.push_back("singleton {x} not described within iMax");
  if (!out.cube_anchor) out.gaps.push_back("cube {0,1}^|x| not described within iMax");
  return out;
}

// ---------------------------------------------------------------- reports

/// `x,measure,c,value,kind,budget,witness`
inline void write_measure_row(std::ostream& os, const BitString& x, std::string_view measure,
                              std::optional<std::size_t> c, const MeasureValue& v) {
  os << x.field() << ',' << measure << ',';
  if (c) os << *c;
  os << ',';
  if (v.defined()) os << v.value;
  os << ',' << bound_kind_name(v.kind) << ',' << v.budget.to_string() << ',' << v.witness_text()
     << '\n';
}

inline constexpr std::string_view kMeasureCsvHeader = "x,measure,c,value,kind,budget,witness";

}  // namespace sophdepth
