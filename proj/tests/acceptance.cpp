// Acceptance run: one PASS/FAIL line per criterion, then the measured
// constants. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oracle.hpp"
#include "sophdepth/sophdepth.hpp"

using namespace sophdepth;

namespace {

// Pinned tolerances.
constexpr std::uint64_t kBudget = 10000;
constexpr std::size_t kGoldenMin = 100;
constexpr std::size_t kOracleMaxLen = 12;
constexpr std::size_t kOracleMaxX = 4;
constexpr std::size_t kOracleMaxC = 4;
constexpr std::size_t kSeededMaxLen = 24;
constexpr std::size_t kSmallX = 6;
constexpr std::size_t kCMax = 4;
constexpr std::size_t kMaxMarkers = 256;
constexpr std::size_t kReplacementsBelow = 1U << 7;
constexpr std::size_t kMarkedBelow = 9U << 9;
constexpr std::size_t kPrintMax = 10;
constexpr std::uint64_t kCopyMax = 64;
constexpr double kCopyDeltaMax = 12.0;  // bits, |copy(2m)| − |copy(m)|
constexpr double kRuntimeC1 = 60;
constexpr double kRuntimeC2 = 600;
constexpr double kRuntimeC7 = 1800;

struct Line {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

std::vector<Line> lines;
std::vector<std::string> constants;

void criterion(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << " exception: " << e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  lines.push_back({id, name, ok, detail.str(), s});
  std::printf("[%s] %2d %-28s %7.1fs  %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), s, detail.str().c_str());
  std::fflush(stdout);
}

std::vector<BitString> strings_up_to(std::size_t n) {
  std::vector<BitString> out;
  for_each_up_to(n, [&](const BitString& x) { out.push_back(x); });
  return out;
}

MeasureOptions opts(std::size_t max_len, bool seeded) {
  MeasureOptions o;
  o.budget = Budget::steps(kBudget);
  o.max_len = max_len;
  o.seeded = seeded;
  return o;
}

BitString padded_prefix(const BitString& d, std::size_t m) {
  BitString x = d.substr(0, std::min(m, d.size()));
  while (x.size() < m) x.push_back(false);
  return x;
}

bool same(const MeasureValue& fast, const std::optional<oracle::Value>& slow) {
  if (fast.defined() != slow.has_value()) return false;
  if (!slow) return true;
  if (fast.value != slow->value || fast.upper() != slow->upper) return false;
  return !slow->upper || (fast.witness && *fast.witness == slow->witness);
}

bool c1_vm(std::ostringstream& out) {
  std::ifstream in(SOPHDEPTH_DATA_DIR "/golden_vectors.txt");
  if (!in) {
    out << "golden vectors missing";
    return false;
  }
  std::size_t count = 0;
  std::size_t bad = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    std::string prog, input, budget, outcome, output, steps;
    f >> prog >> input >> budget >> outcome >> output >> steps;
    const auto r = run(BitString::parse_field(prog), BitString::parse_field(input), Budget::parse(budget));
    bool ok = status_name(r.status) == outcome;
    if (r.status != Status::Invalid) ok = ok && r.output.field() == output && std::to_string(r.steps) == steps;
    bad += !ok;
    ++count;
  }
  EnumerationStats s1, s8;
  const auto one = enumerate_halting(12, Budget::steps(kBudget), 1, &s1);
  const auto eight = enumerate_halting(12, Budget::steps(kBudget), 8, &s8);
  const bool det = one == eight && s1.budget_exceeded == s8.budget_exceeded;
  out << "golden " << count - bad << "/" << count << ", halting(12) " << one.size()
      << " records, workers 1 vs 8 " << (det ? "identical" : "DIFFER");
  return count >= kGoldenMin && bad == 0 && det;
}

bool c2_oracle(std::ostringstream& out) {
  const Budget b = Budget::steps(kBudget);
  std::size_t checks = 0;
  std::size_t bad = 0;
  for (std::size_t max_len = 0; max_len <= kOracleMaxLen; ++max_len) {
    const auto o = opts(max_len, false);
    for (const BitString& x : strings_up_to(kOracleMaxX)) {
      ++checks;
      bad += !same(complexity(x, o), oracle::complexity(x, b, max_len));
      for (std::size_t c = 0; c <= kOracleMaxC; ++c) {
        checks += 3;
        bad += !same(logical_depth(x, c, o), oracle::logical_depth(x, c, b, max_len));
        const auto soph = sophistication(x, c, o);
        const auto slow = oracle::sophistication(x, c, b, max_len);
        bad += !same(soph, slow) || (slow && slow->upper && *soph.second != slow->data);
        const auto set = set_sophistication(x, c, max_len, o);
        const auto slow_set = oracle::set_sophistication(x, c, b, max_len);
        bad += set.defined() != slow_set.has_value() ||
               (slow_set && (set.value != slow_set->value || set.upper() != slow_set->upper));
      }
    }
  }
  out << checks - bad << "/" << checks << " agree (maxLen 0.." << kOracleMaxLen << ", |x| <= " << kOracleMaxX
      << ", c <= " << kOracleMaxC << ")";
  return bad == 0;
}

bool c3_cap(std::ostringstream& out) {
  const auto o = opts(kSeededMaxLen, true);
  std::size_t checks = 0;
  std::size_t bad = 0;
  std::size_t tight = 0;
  for (const BitString& x : strings_up_to(kSmallX)) {
    const auto cx = complexity(x, o);
    for (std::size_t c = 0; c <= kCMax; ++c) {
      const auto v = bb_logical_depth(x, c, o);
      ++checks;
      bad += !v.defined() || v.value > cx.value + c;
      tight += v.defined() && v.value == cx.value + c;
    }
  }
  out << bad << " violations in " << checks << " (equality in " << tight << ")";
  constants.push_back("ld_bb cap: equality rows " + std::to_string(tight) + "/" + std::to_string(checks));
  return bad == 0;
}

bool c4_monotone(std::ostringstream& out) {
  const auto o = opts(kSeededMaxLen, true);
  std::vector<std::size_t> cs;
  for (std::size_t c = 0; c <= kCMax; ++c) cs.push_back(c);
  std::size_t checks = 0;
  std::size_t bad = 0;
  for (const BitString& x : strings_up_to(kSmallX)) {
    const auto soph = sophistication_curve(x, cs, o);
    std::vector<MeasureValue> ld, bb, set;
    for (std::size_t c : cs) {
      ld.push_back(logical_depth(x, c, o));
      bb.push_back(bb_logical_depth(x, c, o));
      set.push_back(set_sophistication(x, c, kSeededMaxLen, o));
    }
    for (std::size_t c = 0; c + 1 < cs.size(); ++c) {
      for (const auto* curve : std::initializer_list<const std::vector<MeasureValue>*>{&ld, &bb, &soph, &set}) {
        ++checks;
        bad += (*curve)[c + 1].value > (*curve)[c].value;
      }
    }
    const auto s = structure_set(x, o.budget, 16, 8);
    for (std::size_t i = 0; i + 1 < s.staircase.size(); ++i) {
      ++checks;
      bad += s.staircase[i + 1].i <= s.staircase[i].i || s.staircase[i + 1].j > s.staircase[i].j;
    }
  }
  Dyadic prev = omega_lower_bound(0);
  for (std::uint64_t t = 1; t <= 1024; t *= 2) {
    const auto cur = omega_lower_bound(t);
    ++checks;
    bad += cur < prev;
    prev = cur;
  }
  out << bad << " violations in " << checks << " (ld, ld_bb, soph, set_soph, staircase, omega)";
  constants.push_back("omega lower bound at t=1024: " + prev.to_string());
  return bad == 0;
}

bool c5_two_part(std::ostringstream& out) {
  const Budget b = Budget::steps(100000);
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::int64_t worst_p = std::numeric_limits<std::int64_t>::min();
  std::int64_t worst_total = std::numeric_limits<std::int64_t>::min();
  for (std::size_t n = 4; n <= 8; ++n) {
    for_each_of_length(n, [&](const BitString& x) {
      for (std::size_t k = 2; two_part_shorter_admissible(n, k); ++k) {
        const auto r = two_part_shorter(x, k, b, n);
        ++cases;
        failures += !r.ok();
        worst_p = std::max(worst_p, static_cast<std::int64_t>(r.code.p.program.size()) -
                                        static_cast<std::int64_t>(r.bound_p));
        worst_total = std::max(worst_total, static_cast<std::int64_t>(r.code.length()) -
                                                static_cast<std::int64_t>(r.bound_total));
      }
    });
  }
  const auto k = two_part_shorter_constants();
  out << failures << " failures in " << cases << " (x, k) pairs";
  constants.push_back("twoPartShorter constants a=" + std::to_string(k.first) + " b=" + std::to_string(k.second) +
                      "; max slack |p|-bound " + std::to_string(worst_p) + ", total-bound " +
                      std::to_string(worst_total));
  return failures == 0 && cases > 0;
}

bool c6_segments(std::ostringstream& out) {
  const auto sweep = segment_sweep(8, 10, Budget::steps(1000));
  out << sweep.verified << "/" << sweep.checked << " verified, " << sweep.markers << " markers";
  constants.push_back("segment code alpha=" + std::to_string(sweep.constants.alpha) +
                      " beta=" + std::to_string(sweep.constants.beta));
  return sweep.checked > 0 && sweep.verified == sweep.checked && sweep.markers <= kMaxMarkers;
}

bool c7_unstable(std::ostringstream& out) {
  const auto rep = unstable_string(8, 2, Budget::steps(kBudget));
  out << "x=" << rep.x << " replacements " << rep.replacements << ", marked " << rep.marked_count
      << ", pairs scanned " << rep.pairs_scanned << ", violating " << rep.violating_pairs;
  return rep.replacements < kReplacementsBelow && rep.marked_count < kMarkedBelow && !rep.saturated &&
         rep.verified();
}

bool c8_closeness(std::ostringstream& out) {
  const auto rep = closeness_experiment(6, kCMax, opts(kSeededMaxLen, true));
  std::size_t finite = 0;
  std::size_t witnessed = 0;
  std::size_t worst = 0;
  for (const auto& s : rep.strings) {
    finite += s.epsilon.has_value();
    witnessed += s.witnessed;
    if (s.epsilon) worst = std::max(worst, *s.epsilon);
  }
  out << rep.strings.size() << " strings, eps finite " << finite << ", witnessed " << witnessed
      << ", max eps " << worst << ", fitted e " << rep.fitted_e;
  constants.push_back("closeness fitted e=" + std::to_string(rep.fitted_e) + " (max eps / log2(|x|+2))");
  return !rep.strings.empty() && finite == rep.strings.size() && witnessed == rep.strings.size();
}

bool c9_codegen(std::ostringstream& out) {
  std::size_t bad = 0;
  std::size_t printed = 0;
  for_each_up_to(kPrintMax, [&](const BitString& x) {
    const auto sp = synth_print(x);
    const auto r = run(sp.program, ""_bits, Budget::steps(kBudget));
    bad += !sp.certified_total || !r.halted() || r.output != x || sp.program.size() > sp.length_bound;
    ++printed;
  });
  std::size_t copy_bad = 0;
  for (std::uint64_t m = 0; m <= kCopyMax; ++m) {
    const auto sp = synth_copy_n(m);
    for_each_up_to(std::min<std::uint64_t>(m, 8) + 1, [&](const BitString& d) {
      const auto r = run(sp.program, d, Budget::steps(kBudget));
      copy_bad += !r.halted() || r.output != padded_prefix(d, m);
    });
    const auto full = BitString::from_uint(0x9e3779b97f4a7c15ULL, m);
    const auto r = run(sp.program, full, Budget::steps(kBudget));
    copy_bad += !r.halted() || r.output != full;
  }
  double delta = 0;
  for (std::uint64_t m = 1; m <= kCopyMax; ++m) {
    delta = std::max(delta, static_cast<double>(synth_copy_n(2 * m).program.size()) -
                                static_cast<double>(synth_copy_n(m).program.size()));
  }
  out << "print " << printed - bad << "/" << printed << ", copy mismatches " << copy_bad
      << ", max |copy(2m)|-|copy(m)| " << delta << " <= " << kCopyDeltaMax;
  const auto& c = synthesis_constants();
  constants.push_back("copier a=" + std::to_string(c.copy_a) + " b=" + std::to_string(c.copy_b) +
                      ", max doubling delta m<=64: " + std::to_string(delta));
  return bad == 0 && copy_bad == 0 && delta <= kCopyDeltaMax;
}

bool c10_typicality(std::ostringstream& out) {
  std::size_t models = 0;
  std::size_t checks = 0;
  std::size_t bad = 0;
  for (const SetModel& m : corpus::typicality_models()) {
    ++models;
    for (std::size_t c = 1; c <= 3; ++c) {
      std::size_t atypical = 0;
      for (const BitString& x : m.elements) atypical += !is_typical(x, m, c, Budget::steps(kBudget));
      const auto cap = static_cast<std::size_t>(
          std::ceil(static_cast<double>(m.elements.size()) * std::ldexp(1.0, 1 - static_cast<int>(c))));
      ++checks;
      bad += atypical > cap;
    }
  }
  out << bad << " violations over " << models << " models x c in {1,2,3}";
  return bad == 0 && models > 0;
}

}  // namespace

int main() {
  criterion(1, "vm conformance", c1_vm);
  criterion(2, "oracle equivalence", c2_oracle);
  criterion(3, "ld_bb <= C + c", c3_cap);
  criterion(4, "monotonicity", c4_monotone);
  criterion(5, "two-part shorter replay", c5_two_part);
  criterion(6, "marker segment replay", c6_segments);
  criterion(7, "unstable string", c7_unstable);
  criterion(8, "closeness measurement", c8_closeness);
  criterion(9, "codegen bounds", c9_codegen);
  criterion(10, "typicality counting", c10_typicality);

  const double limits[] = {kRuntimeC1, kRuntimeC2, 0, 0, 0, 0, kRuntimeC7};
  bool all = true;
  for (const auto& l : lines) {
    all = all && l.pass;
    const std::size_t i = static_cast<std::size_t>(l.id - 1);
    if (i < 7 && limits[i] > 0 && l.seconds > limits[i]) {
      std::printf("[FAIL] %2d runtime %.1fs over %.0fs\n", l.id, l.seconds, limits[i]);
      all = false;
    }
  }
  std::printf("\nmeasured constants\n");
  for (const auto& c : constants) std::printf("  %s\n", c.c_str());
  std::printf("\n%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
