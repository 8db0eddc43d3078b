#pragma once

// Replays of the constructive proofs: one-part codes from two-part codes, the
// segment functions behind the marker-sequence segments, the two-part code that is
// shorter than C(x), deep incompressible strings, the instability marking
// process, and the closeness experiment. Every result is re-verified by running
// the programs it names.

#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sophdepth/codegen.hpp"
#include "sophdepth/enumeration.hpp"
#include "sophdepth/measures.hpp"
#include "sophdepth/vm.hpp"

namespace sophdepth {

struct TwoPartCode {
  SynthesizedProgram p;
  BitString d;
  BitString target;
  std::int64_t significance = 0;  // |p| + |d| − C(target), C as computed by the caller

  [[nodiscard]] std::size_t length() const { return p.program.size() + d.size(); }
};

/// Replays run(p, d) and checks the length invariant against `complexity`.
inline bool verify_two_part(const TwoPartCode& tp, Budget b, std::uint64_t complexity) {
  const auto r = run(tp.p.program, tp.d, b);
  return r.halted() && r.output == tp.target &&
         static_cast<std::int64_t>(tp.length()) <=
             static_cast<std::int64_t>(complexity) + tp.significance;
}

// ---------------------------------------------------------------- one-part codes

struct OnePartCode {
  BitString w;                 // E(p)·d
  std::uint64_t t_bound = 0;   // max steps of E(p)·e over |e| ≤ n
  std::uint64_t steps = 0;     // steps of w itself
  std::size_t n = 0;
};

/// w = E(p)·d, t = max{halttime(E(p)·e) : |e| ≤ n}. Throws if a bounding run does
/// not halt within b or the replay disagrees.
inline OnePartCode one_part_from_two_part(const TwoPartCode& tp, std::size_t n, Budget b) {
  if (tp.d.size() > n) throw std::invalid_argument("one_part_from_two_part: |d| exceeds n");
  OnePartCode out;
  out.n = n;
  out.w = encode_self_delim(tp.p.program) + tp.d;
  const auto total = is_total_on(tp.p.program, n, b);
  if (total.verdict != Totality::TotalVerified) {
    throw std::runtime_error("one_part_from_two_part: run on '" + total.witness.field() +
                             "' does not halt within " + b.to_string());
  }
  out.t_bound = total.max_steps;
  const auto r = run_one_part(out.w, b);
  if (!r.halted() || r.output != tp.target) {
    throw std::runtime_error("one_part_from_two_part: E(p)d does not print the target");
  }
  out.steps = r.steps;
  if (out.steps > out.t_bound) throw std::logic_error("one_part_from_two_part: steps exceed t");
  return out;
}

// ---------------------------------------------------------------- marker segments

struct Segment {
  std::size_t first_item = 0;        // position in seq.items
  std::vector<BitString> entries;    // the strings, in sequence order
  std::size_t closing_marker = 0;    // position of the marker ending it, or items.size()
  std::optional<SynthesizedProgram> program;
  std::string error;                 // set when synthesis failed
};

/// One lookup program per run of strings closed by a marker, plus one for
/// trailing strings after the last marker. An empty segment gets the empty
/// program, which prints ε on every input.
inline std::vector<Segment> segment_programs(const MarkerSequence& seq,
                                             std::size_t size_ceiling = kDefaultTableCeiling) {
  std::vector<Segment> out;
  Segment cur;
  auto close = [&](std::size_t at) {
    cur.closing_marker = at;
    if (cur.entries.empty()) {
      cur.program = SynthesizedProgram{{}, Purpose::TableLookup, true, 0, 0};
    } else {
      try {
        cur.program = synth_table(cur.entries, size_ceiling);
      } catch (const std::length_error& e) {
        cur.error = e.what();
      }
    }
    out.push_back(std::move(cur));
    cur = Segment{};
    cur.first_item = at + 1;
  };
  for (std::size_t i = 0; i < seq.items.size(); ++i) {
    if (seq.items[i].marker) {
      close(i);
    } else {
      cur.entries.push_back(seq.items[i].value);
    }
  }
  if (!cur.entries.empty()) close(seq.items.size());
  return out;
}

/// α·|bin k| + β slack of the marker-sequence segments, α fixed at 1.
struct SegmentConstants {
  std::int64_t alpha = 1;
  std::int64_t beta = std::numeric_limits<std::int64_t>::min();  // max over verified strings
};

struct SegmentCheck {
  bool ok = false;
  std::size_t segment = 0;
  std::size_t position = 0;  // index inside the segment
  TwoPartCode code;
  std::int64_t beta = 0;  // max(|p| − l, |p| + |d| − k) − α·|bin k|
  std::string failure;
};

/// The two-part code (segment program, index string) for the string at
/// seq.items[item], which must precede the last marker.
inline SegmentCheck verify_segment_code(const MarkerSequence& seq, const std::vector<Segment>& segments,
                                  std::size_t item, Budget b, std::uint64_t complexity) {
  SegmentCheck res;
  if (item >= seq.last_marker() || seq.items[item].marker) {
    throw std::invalid_argument("verify_segment_code: item is not a string before the last marker");
  }
  const BitString& x = seq.items[item].value;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const Segment& seg = segments[s];
    if (item < seg.first_item || item >= seg.closing_marker) continue;
    res.segment = s;
    res.position = item - seg.first_item;
    if (!seg.program) {
      res.failure = "segment " + std::to_string(s) + ": " + seg.error;
      return res;
    }
    res.code.p = *seg.program;
    res.code.d = table_index_string(res.position);
    res.code.target = x;
    res.code.significance =
        static_cast<std::int64_t>(res.code.length()) - static_cast<std::int64_t>(complexity);
    const std::size_t size = seg.entries.size();
    const auto r = run(res.code.p.program, res.code.d, b);
    if (!r.halted() || r.output != x) {
      res.failure = "segment program does not reproduce x from its index";
    } else if (!res.code.p.certified_total) {
      res.failure = "segment program not certified total";
    } else if (res.code.d.size() > ceil_log2(size) + 1) {
      res.failure = "index longer than ⌈log2 size⌉ + 1";
    } else if (!verify_two_part(res.code, b, complexity)) {
      res.failure = "two-part invariants fail";
    } else {
      res.ok = true;
    }
    const auto l = static_cast<std::int64_t>(seq.l);
    const auto k = static_cast<std::int64_t>(seq.k);
    const auto p = static_cast<std::int64_t>(res.code.p.program.size());
    const auto d = static_cast<std::int64_t>(res.code.d.size());
    res.beta = std::max(p - l, p + d - k) - static_cast<std::int64_t>(binary_length(seq.k));
    return res;
  }
  res.failure = "item not inside any segment";
  return res;
}

struct SegmentSweep {
  std::size_t checked = 0;
  std::size_t verified = 0;
  std::size_t markers = 0;
  std::size_t segments = 0;
  SegmentConstants constants;
  std::vector<SegmentCheck> failures;
};

/// Every string before the last marker of markerSequence(l, k, b).
inline SegmentSweep segment_sweep(std::size_t l, std::size_t k, Budget b, std::size_t workers = 0) {
  const MarkerSequence seq = marker_sequence(l, k, b, workers);
  const auto segments = segment_programs(seq);
  SegmentSweep out;
  out.markers = seq.marker_count();
  out.segments = segments.size();
  std::map<BitString, std::uint64_t> cx;
  for (std::size_t i = 0; i < seq.last_marker(); ++i) {
    if (seq.items[i].marker) continue;
    const BitString& x = seq.items[i].value;
    auto it = cx.find(x);
    if (it == cx.end()) it = cx.emplace(x, complexity(x, b, k).value).first;
    const auto res = verify_segment_code(seq, segments, i, b, it->second);
    ++out.checked;
    if (res.ok) {
      ++out.verified;
      out.constants.beta = std::max(out.constants.beta, res.beta);
    } else {
      out.failures.push_back(res);
    }
  }
  return out;
}

// ---------------------------------------------------------------- shorter two-part codes

struct TwoPartShorterResult {
  TwoPartCode code;
  std::size_t k = 0;
  std::size_t i = 0;            // 1-based index of the suffix in ε, 0, 1, 00, ...
  std::size_t suffix_len = 0;   // |bin(k)| − 2, the "log k − 1" bits
  std::size_t bound_p = 0;      // 6i + a·log2(|x|+2) + b
  std::size_t bound_total = 0;  // |x| − suffix_len + bound_p
  bool runs = false;
  bool total = false;
  bool p_within = false;
  bool total_within = false;

  [[nodiscard]] bool ok() const { return runs && total && p_within && total_within; }
};

/// Constants: a = copy_a + print_factor (the suffix has < log2|x| bits),
/// b = head_b.
inline std::pair<double, double> two_part_shorter_constants() {
  const auto& c = synthesis_constants();
  return {c.copy_a + static_cast<double>(c.print_factor), c.head_b};
}

inline bool two_part_shorter_admissible(std::size_t n, std::size_t k) {
  return k >= 2 && k + binary_length(k) <= n;
}

/// p prints x₁…x_i, copies d, then prints the last |bin(k)| − 2 bits of x, whose
/// 1-based length-lex index is i.
inline TwoPartShorterResult two_part_shorter(const BitString& x, std::size_t k, Budget b,
                                             std::uint64_t complexity) {
  if (!two_part_shorter_admissible(x.size(), k)) {
    throw std::invalid_argument("two_part_shorter: need k ≥ 2 and k + |bin(k)| ≤ |x|");
  }
  TwoPartShorterResult res;
  res.k = k;
  res.suffix_len = binary_length(k) - 2;
  const std::size_t n = x.size();
  const BitString suffix = x.substr(n - res.suffix_len, res.suffix_len);
  res.i = static_cast<std::size_t>(suffix.rank()) + 1;
  const std::size_t copy = n - res.i - res.suffix_len;
  res.code.p = synth_two_part_head(x.substr(0, res.i), copy, suffix, CopyStrategy::Shortest);
  res.code.d = x.substr(res.i, copy);
  res.code.target = x;
  res.code.significance =
      static_cast<std::int64_t>(res.code.length()) - static_cast<std::int64_t>(complexity);

  const auto [a, c] = two_part_shorter_constants();
  res.bound_p = static_cast<std::size_t>(
      std::floor(6.0 * static_cast<double>(res.i) + a * std::log2(static_cast<double>(n) + 2) + c));
  res.bound_total = n - res.suffix_len + res.bound_p;
  const auto r = run(res.code.p.program, res.code.d, b);
  res.runs = r.halted() && r.output == x;
  res.total = res.code.p.certified_total;
  res.p_within = res.code.p.program.size() <= res.bound_p;
  res.total_within = res.code.length() <= res.bound_total;
  return res;
}

// ---------------------------------------------------------------- deep incompressible strings

struct DeepCertificate {
  std::size_t n = 0;
  std::size_t d = 0;
  BBValue t_star;                  // BB(n − d)
  std::uint64_t time_cap = 0;      // min(T*, budget steps)
  std::size_t producible = 0;      // length-n outputs of |w| < n within the cap
  std::size_t programs = 0;        // one-part programs of length < n scanned
  BitString x;
  bool exhausted = false;
  // Transcript: each lex-smaller length-n string with its fastest shortest producer.
  std::vector<std::pair<BitString, HaltRecord>> smaller;
};

/// The lex-first length-n string that no w with |w| < n prints within BB(n − d) steps.
inline DeepCertificate deep_incompressible(std::size_t n, std::size_t d, Budget b,
                                           std::size_t workers = 0) {
  if (n <= d) throw std::invalid_argument("deep_incompressible: need n > d");
  check_ceiling(n);
  DeepCertificate cert;
  cert.n = n;
  cert.d = d;
  cert.t_star = busy_beaver(n - d, b, workers);
  cert.time_cap = std::min(cert.t_star.value, b.max_steps);
  cert.programs = (std::size_t{1} << n) - 1;
  std::map<BitString, HaltRecord> best;
  if (n >= 1) {
    const auto index = program_index(n - 1, b, workers);
    for (LeafRef r : index->halted()) {
      const ExecOutcome& o = index->leaf(r).outcome;
      if (o.output.size() != n || o.steps > cert.time_cap) continue;
      const HaltRecord rec{index->shortest_w(r), o.output, o.steps};
      auto it = best.find(o.output);
      if (it == best.end() || std::tie(rec.steps, rec.w) < std::tie(it->second.steps, it->second.w)) {
        best[o.output] = rec;
      }
    }
  }
  cert.producible = best.size();
  if (cert.producible >= (std::size_t{1} << n)) {
    cert.exhausted = true;
    return cert;
  }
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const BitString s = BitString::from_uint(v, n);
    auto it = best.find(s);
    if (it == best.end()) {
      cert.x = s;
      break;
    }
    cert.smaller.emplace_back(s, it->second);
  }
  return cert;
}

struct DeepRow {
  std::size_t k = 0;
  TwoPartShorterResult code;
};

struct DeepReport {
  DeepCertificate deep;
  MeasureValue complexity;
  std::vector<DeepRow> rows;  // twoPartShorter for each admissible k
  MeasureValue soph0;
  std::vector<MeasureValue> ld_bb;  // c = 0..c_max
};

/// deepIncompressible composed with twoPartShorter: the short two-part codes give
/// small soph at low significance while ld^bb stays near |x| − O(d).
inline DeepReport deep_experiment(std::size_t n, std::size_t d, std::size_t c_max,
                                          const MeasureOptions& opts) {
  DeepReport rep;
  rep.deep = deep_incompressible(n, d, opts.budget, opts.workers);
  if (rep.deep.exhausted) return rep;
  const BitString& x = rep.deep.x;
  rep.complexity = complexity(x, opts);
  for (std::size_t k = 2; two_part_shorter_admissible(n, k); ++k) {
    rep.rows.push_back({k, two_part_shorter(x, k, opts.budget, rep.complexity.value)});
  }
  rep.soph0 = sophistication(x, 0, opts);
  for (std::size_t c = 0; c <= c_max; ++c) rep.ld_bb.push_back(bb_logical_depth(x, c, opts));
  return rep;
}

// ---------------------------------------------------------------- instability marking

struct UnstableReport {
  std::size_t k = 0;
  std::size_t c = 0;
  std::size_t n = 0;
  Budget budget;
  BitString x;
  std::size_t replacements = 0;
  std::size_t marked_count = 0;
  std::size_t marking_moments = 0;
  std::size_t rounds = 0;
  std::size_t one_part_marks = 0;  // rule (a)
  std::size_t total_marks = 0;     // rule (b)
  std::size_t total_programs = 0;  // programs found total under rule (b)
  bool saturated = false;
  // Post-verification.
  std::size_t pairs_scanned = 0;
  std::size_t violating_pairs = 0;  // (p, d) satisfying both (i) and (ii)
  bool complexity_lower = false;    // C(x) = LowerBound(k − c) over |w| < k − c
  std::vector<std::string> transcript;

  [[nodiscard]] bool verified() const {
    return !saturated && violating_pairs == 0 && complexity_lower;
  }
};

inline std::size_t unstable_length(std::size_t k) { return k + binary_length(k) + 2; }

namespace detail {

/// The marking process. Round r runs with step slice min(2^r, b.max_steps); rule
/// (a) marks the length-n outputs of one-part programs |w| < k − c that halt in
/// the slice, rule (b) marks every length-n output of a raw program |p| < k − c
/// once it is TotalVerified on {y : |p| + |y| < k} within the slice.
inline UnstableReport unstable_marking(std::size_t k, std::size_t c, Budget b, bool transcript) {
  UnstableReport rep;
  rep.k = k;
  rep.c = c;
  rep.n = unstable_length(k);
  rep.budget = b;
  const std::size_t n = rep.n;
  const std::size_t short_len = k - c;  // programs strictly shorter than this
  std::vector<bool> marked(std::size_t{1} << n, false);
  std::uint64_t candidate = 0;
  auto mark = [&](const BitString& s) {
    if (s.size() != n) return false;
    const auto v = s.to_uint();
    if (marked[v]) return false;
    marked[v] = true;
    ++rep.marked_count;
    return true;
  };
  auto moment_done = [&]() {
    ++rep.marking_moments;
    if (!marked[candidate]) return;
    while (candidate < marked.size() && marked[candidate]) ++candidate;
    if (candidate == marked.size()) {
      rep.saturated = true;
      return;
    }
    ++rep.replacements;
    if (transcript) rep.transcript.push_back("replace -> " + BitString::from_uint(candidate, n).field());
  };

  std::set<BitString> halted_one_part;
  std::set<BitString> total_found;
  std::uint64_t slice = std::min<std::uint64_t>(1, b.max_steps);
  for (;; slice = std::min(slice * 2, b.max_steps)) {
    const Budget rb = b.max_excursion ? Budget{slice, b.max_excursion} : Budget::steps(slice);
    ++rep.rounds;
    // (a): newly halting one-part programs, in (steps, w) order.
    std::vector<HaltRecord> fresh;
    for_each_up_to(short_len == 0 ? 0 : short_len - 1, [&](const BitString& w) {
      if (short_len == 0 || halted_one_part.count(w)) return;
      const auto r = run_one_part(w, rb);
      if (r.halted()) fresh.push_back({w, r.output, r.steps});
    });
    std::sort(fresh.begin(), fresh.end(), time_order);
    for (const auto& rec : fresh) {
      halted_one_part.insert(rec.w);
      if (mark(rec.output)) {
        ++rep.one_part_marks;
        if (transcript) rep.transcript.push_back("(a) " + rec.w.field() + " -> " + rec.output.field());
      }
      moment_done();
      if (rep.saturated) return rep;
    }
    // (b): programs newly verified total.
    for_each_up_to(short_len == 0 ? 0 : short_len - 1, [&](const BitString& p) {
      if (short_len == 0 || rep.saturated || total_found.count(p)) return;
      const std::size_t domain = k - 1 - p.size();
      if (is_total_on(p, domain, rb).verdict != Totality::TotalVerified) return;
      total_found.insert(p);
      ++rep.total_programs;
      std::size_t added = 0;
      for_each_up_to(domain, [&](const BitString& y) {
        const auto r = run(p, y, rb);
        if (r.halted() && mark(r.output)) ++added;
      });
      rep.total_marks += added;
      if (transcript && added > 0) {
        rep.transcript.push_back("(b) " + p.field() + " marks " + std::to_string(added));
      }
      moment_done();
    });
    if (rep.saturated || slice >= b.max_steps) break;
  }
  rep.x = BitString::from_uint(candidate, n);
  return rep;
}

}  // namespace detail

/// Runs the marking process, then re-checks conditions (i) and (ii) for the
/// returned x over every raw p with |p| < k − c and d with |p| + |d| < k by
/// direct runs, and checks that no one-part w with |w| < k − c prints x.
inline UnstableReport unstable_string(std::size_t k, std::size_t c, Budget b,
                                      bool transcript = false) {
  if (c >= k) throw std::invalid_argument("unstable_string: need c < k");
  check_ceiling(unstable_length(k));
  UnstableReport rep = detail::unstable_marking(k, c, b, transcript);
  if (rep.saturated) return rep;
  const std::size_t short_len = k - c;
  for (std::size_t len = 0; len < short_len; ++len) {
    for_each_of_length(len, [&](const BitString& p) {
      bool produces = false;
      bool total = true;
      for_each_up_to(k - 1 - len, [&](const BitString& y) {
        ++rep.pairs_scanned;
        const auto r = run(p, y, b);
        if (!r.halted()) total = false;
        if (r.halted() && r.output == rep.x) produces = true;
      });
      if (produces && total) ++rep.violating_pairs;
    });
  }
  const auto cx = complexity(rep.x, b, short_len - 1);
  rep.complexity_lower = cx.lower() && cx.value == short_len;
  return rep;
}

// ---------------------------------------------------------------- closeness

struct ClosenessRow {
  BitString x;
  std::size_t c = 0;
  MeasureValue soph;
  MeasureValue ld_bb;
  bool flagged = false;  // a LowerBound or Undefined value in the row
  // soph -> ld^bb witness for upper-bound soph rows.
  std::optional<OnePartCode> one_part;
  std::int64_t encoding_overhead = 0;  // |E(p)| − |p|
};

struct ClosenessPerString {
  BitString x;
  MeasureValue complexity;
  std::optional<std::size_t> epsilon;  // nullopt when some grid value is undefined
  bool witnessed = false;              // every upper soph row has a replayed one-part code
};

struct ClosenessReport {
  std::size_t max_len = 0;
  std::size_t c_max = 0;
  Budget budget;
  std::vector<ClosenessRow> rows;
  std::vector<ClosenessPerString> strings;
  double fitted_e = 0;  // max ε / log2(|x| + 2)
};

/// Minimal ε with f(c+ε) ≤ g(c) + ε and g(c+ε) ≤ f(c) + ε for every grid c;
/// indices past c_max are read at c_max, which both curves only undercut.
inline std::size_t grid_epsilon(const std::vector<std::uint64_t>& f, const std::vector<std::uint64_t>& g) {
  const std::size_t top = f.size() - 1;
  for (std::size_t e = 0;; ++e) {
    bool ok = true;
    for (std::size_t c = 0; c <= top && ok; ++c) {
      const std::size_t j = std::min(c + e, top);
      ok = f[j] <= g[c] + e && g[j] <= f[c] + e;
    }
    if (ok) return e;
  }
}

inline ClosenessReport closeness_experiment(std::size_t max_len, std::size_t c_max,
                                            const MeasureOptions& opts) {
  ClosenessReport rep;
  rep.max_len = max_len;
  rep.c_max = c_max;
  rep.budget = opts.budget;
  std::vector<std::size_t> cs(c_max + 1);
  for (std::size_t c = 0; c <= c_max; ++c) cs[c] = c;
  for_each_up_to(max_len, [&](const BitString& x) {
    ClosenessPerString per{x, complexity(x, opts)};
    const auto soph = sophistication_curve(x, cs, opts);
    std::vector<std::uint64_t> f;
    std::vector<std::uint64_t> g;
    bool defined = true;
    per.witnessed = true;
    for (std::size_t c = 0; c <= c_max; ++c) {
      ClosenessRow row{x, c, soph[c], bb_logical_depth(x, c, opts)};
      row.flagged = !row.soph.upper() || !row.ld_bb.upper();
      defined = defined && row.soph.defined() && row.ld_bb.defined();
      f.push_back(row.soph.value);
      g.push_back(row.ld_bb.value);
      if (row.soph.upper()) {
        TwoPartCode tp{{*row.soph.witness, Purpose::TwoPartHead, true}, *row.soph.second, x};
        try {
          row.one_part = one_part_from_two_part(tp, std::max(x.size(), tp.d.size()), opts.budget);
          row.encoding_overhead = static_cast<std::int64_t>(row.one_part->w.size()) -
                                  static_cast<std::int64_t>(tp.length());
        } catch (const std::exception&) {
          per.witnessed = false;
        }
      }
      rep.rows.push_back(std::move(row));
    }
    if (defined) {
      per.epsilon = grid_epsilon(f, g);
      rep.fitted_e = std::max(rep.fitted_e, static_cast<double>(*per.epsilon) /
                                                std::log2(static_cast<double>(x.size()) + 2));
    }
    rep.strings.push_back(std::move(per));
  });
  return rep;
}

// ---------------------------------------------------------------- certificates

inline void write_certificate(std::ostream& os, const OnePartCode& c) {
  os << "# one-part code\nw\t" << c.w.field() << "\nn\t" << c.n << "\nsteps\t" << c.steps
     << "\nt_bound\t" << c.t_bound << "\n";
}

inline void write_certificate(std::ostream& os, const TwoPartShorterResult& r) {
  os << "twopart\tk=" << r.k << "\ti=" << r.i << "\tsuffix_len=" << r.suffix_len << "\tx="
     << r.code.target.field() << "\tp=" << r.code.p.program.field() << "\td=" << r.code.d.field()
     << "\t|p|=" << r.code.p.program.size() << "\tbound_p=" << r.bound_p << "\t|p|+|d|="
     << r.code.length() << "\tbound_total=" << r.bound_total << "\truns=" << r.runs
     << "\ttotal=" << r.total << "\tok=" << r.ok() << "\n";
}

inline void write_certificate(std::ostream& os, const SegmentSweep& s, std::size_t l, std::size_t k,
                              Budget b) {
  os << "# marker-sequence segments\nl\t" << l << "\nk\t" << k << "\nbudget\t" << b.to_string()
     << "\nmarkers\t" << s.markers << "\nsegments\t" << s.segments << "\nchecked\t" << s.checked
     << "\nverified\t" << s.verified << "\nalpha\t" << s.constants.alpha << "\nbeta\t"
     << (s.verified ? std::to_string(s.constants.beta) : "-") << "\n";
  for (const auto& f : s.failures) {
    os << "failure\tsegment=" << f.segment << "\tposition=" << f.position << "\t" << f.failure << "\n";
  }
}

inline void write_certificate(std::ostream& os, const DeepCertificate& c) {
  os << "# deep incompressible\nn\t" << c.n << "\nd\t" << c.d << "\nT*\t" << c.t_star.value
     << "\nT*_kind\t" << bb_kind_name(c.t_star.kind) << "\nT*_witness\t" << c.t_star.witness.field()
     << "\ntime_cap\t" << c.time_cap << "\nproducible\t" << c.producible << "\nprograms\t"
     << c.programs << "\nx\t" << (c.exhausted ? "EXHAUSTED" : c.x.field()) << "\n";
  for (const auto& [s, rec] : c.smaller) {
    os << "smaller\t" << s.field() << "\t" << rec.w.field() << "\t" << rec.steps << "\n";
  }
}

inline void write_certificate(std::ostream& os, const DeepReport& r) {
  write_certificate(os, r.deep);
  if (r.deep.exhausted) return;
  os << "complexity\t" << r.complexity.value << "\t" << bound_kind_name(r.complexity.kind) << "\n";
  for (const auto& row : r.rows) write_certificate(os, row.code);
  os << "soph0\t" << r.soph0.value << "\t" << bound_kind_name(r.soph0.kind) << "\t"
     << r.soph0.witness_text() << "\n";
  for (std::size_t c = 0; c < r.ld_bb.size(); ++c) {
    os << "ld_bb\tc=" << c << "\t" << r.ld_bb[c].value << "\t" << bound_kind_name(r.ld_bb[c].kind)
       << "\n";
  }
}

inline void write_certificate(std::ostream& os, const UnstableReport& r) {
  os << "# instability marking\nk\t" << r.k << "\nc\t" << r.c << "\nn\t" << r.n << "\nbudget\t"
     << r.budget.to_string() << "\nrounds\t" << r.rounds << "\nx\t" << r.x.field()
     << "\nreplacements\t" << r.replacements << "\nmarked\t" << r.marked_count << "\nmoments\t"
     << r.marking_moments << "\nmarks_a\t" << r.one_part_marks << "\nmarks_b\t" << r.total_marks
     << "\ntotal_programs\t" << r.total_programs << "\nsaturated\t" << r.saturated
     << "\npairs_scanned\t" << r.pairs_scanned << "\nviolating_pairs\t" << r.violating_pairs
     << "\ncomplexity_lower\t" << r.complexity_lower << "\nverified\t" << r.verified() << "\n";
  for (const auto& line : r.transcript) os << "log\t" << line << "\n";
}

/// Table: `x,c,soph,soph_kind,ld_bb,ld_bb_kind,flag,one_part_w,t_bound`, then one
/// `# eps` line per string and the fitted coefficient.
inline void write_certificate(std::ostream& os, const ClosenessReport& r) {
  os << "x,c,soph,soph_kind,ld_bb,ld_bb_kind,flag,one_part_w,t_bound\n";
  for (const auto& row : r.rows) {
    os << row.x.field() << ',' << row.c << ',' << row.soph.value << ','
       << bound_kind_name(row.soph.kind) << ',' << row.ld_bb.value << ','
       << bound_kind_name(row.ld_bb.kind) << ',' << (row.flagged ? "flagged" : "") << ',';
    if (row.one_part) os << row.one_part->w.field() << ',' << row.one_part->t_bound;
    else os << "-,";
    os << '\n';
  }
  for (const auto& s : r.strings) {
    os << "# eps," << s.x.field() << ',' << (s.epsilon ? std::to_string(*s.epsilon) : "inf") << ','
       << (s.witnessed ? "witnessed" : "unwitnessed") << '\n';
  }
  os << "# fitted_e," << r.fitted_e << '\n';
}

}  // namespace sophdepth
