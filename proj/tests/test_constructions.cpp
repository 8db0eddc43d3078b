#include <gtest/gtest.h>

#include <sstream>

#include "oracle.hpp"
#include "sophdepth/constructions.hpp"

using namespace sophdepth;

namespace {

TwoPartCode code(const BitString& p, const BitString& d, const BitString& target) {
  return {{p, Purpose::PrintLiteral, true}, d, target};
}

}  // namespace

TEST(OnePartFromTwoPart, Example) {
  const auto c = one_part_from_two_part(code("100"_bits, ""_bits, "0"_bits), 2, Budget::steps(100));
  EXPECT_EQ(c.w, "11011100"_bits);
  EXPECT_GE(c.t_bound, 1U);
  EXPECT_LE(c.steps, c.t_bound);
}

TEST(OnePartFromTwoPart, MatchesDirectRuns) {
  const Budget b = Budget::steps(10000);
  const std::vector<std::pair<BitString, BitString>> pairs{
      {synth_copy_n(3).program, "101"_bits},
      {synth_print("0110"_bits).program, ""_bits},
      {assemble({Op::Read, Op::Loop, Op::Read, Op::Out, Op::Read, Op::End}), "1110"_bits},
      {synth_two_part_head("1"_bits, 2, "0"_bits).program, "01"_bits}};
  for (const auto& [p, d] : pairs) {
    const BitString x = run(p, d, b).output;
    for (std::size_t n = d.size(); n <= d.size() + 2; ++n) {
      const auto c = one_part_from_two_part(code(p, d, x), n, b);
      std::uint64_t t = 0;
      for_each_up_to(n, [&](const BitString& e) {
        t = std::max(t, run_one_part(encode_self_delim(p) + e, b).steps);
      });
      EXPECT_EQ(c.t_bound, t);
      EXPECT_LE(c.steps, c.t_bound);
      EXPECT_LE(c.w.size(), p.size() + 2 * binary_length(p.size()) + 1 + d.size());
    }
  }
  EXPECT_THROW(one_part_from_two_part(code("100"_bits, "1"_bits, "0"_bits), 0, b),
               std::invalid_argument);
  // FLIP LOOP END never halts.
  EXPECT_THROW(one_part_from_two_part(code(assemble({Op::Flip, Op::Loop, Op::End}), ""_bits, ""_bits), 1, b),
               std::runtime_error);
}

TEST(SegmentPrograms, Examples) {
  const auto seq = marker_sequence(3, 3, Budget::steps(10));
  const auto segs = segment_programs(seq);
  ASSERT_EQ(segs.size(), 1U);
  ASSERT_TRUE(segs[0].program);
  EXPECT_EQ(run(segs[0].program->program, ""_bits, Budget::steps(100)).output, ""_bits);
  EXPECT_TRUE(segs[0].program->certified_total);
}

TEST(SegmentPrograms, StructureAndTails) {
  const Budget b = Budget::steps(1000);
  for (std::size_t k = 8; k <= 11; ++k) {
    const auto seq = marker_sequence(k - 2, k, b);
    const auto segs = segment_programs(seq);
    const bool trailing = seq.last_marker() + 1 < seq.items.size() || seq.marker_count() == 0;
    EXPECT_EQ(segs.size(), seq.marker_count() + (trailing && !seq.items.empty() ? 1 : 0));
    for (const auto& s : segs) {
      ASSERT_TRUE(s.program) << s.error;
      EXPECT_TRUE(s.program->certified_total);
      for (std::size_t i = 0; i < s.entries.size(); ++i) {
        EXPECT_EQ(run(s.program->program, table_index_string(i), b).output, s.entries[i]);
      }
      for (std::size_t i = s.entries.size(); i < s.entries.size() + 4; ++i) {
        const BitString d = table_index_string(i);
        if (d.size() > table_width(s.entries.size())) break;  // beyond the verified domain
        EXPECT_EQ(run(s.program->program, d, b).output, ""_bits);
      }
    }
  }
}

TEST(SegmentSweep, FirstStringHasEmptyIndex) {
  const Budget b = Budget::steps(1000);
  const auto seq = marker_sequence(8, 10, b);
  const auto segs = segment_programs(seq);
  ASSERT_FALSE(seq.items.front().marker);
  const auto r = verify_segment_code(seq, segs, 0, b, complexity(seq.items[0].value, b, 10).value);
  EXPECT_TRUE(r.ok) << r.failure;
  EXPECT_EQ(r.code.d, ""_bits);
  EXPECT_EQ(r.code.p.program, segs[0].program->program);
  EXPECT_THROW(verify_segment_code(seq, segs, seq.last_marker(), b, 0), std::invalid_argument);
}

TEST(SegmentSweep, SweepVerifiesEveryString) {
  const Budget b = Budget::steps(1000);
  const auto sweep = segment_sweep(8, 10, b);
  EXPECT_GT(sweep.checked, 0U);
  EXPECT_EQ(sweep.verified, sweep.checked);
  EXPECT_TRUE(sweep.failures.empty());
  EXPECT_LE(sweep.markers, 256U);
}

TEST(TwoPartShorter, Examples) {
  const Budget b = Budget::steps(100000);
  const auto a = two_part_shorter("0110"_bits, 2, b, 0);
  EXPECT_EQ(a.suffix_len, 0U);
  EXPECT_EQ(a.i, 1U);
  EXPECT_EQ(a.code.d, "110"_bits);
  EXPECT_EQ(run(a.code.p.program, a.code.d, b).output, "0110"_bits);
  EXPECT_EQ(run(a.code.p.program, ""_bits, b).output, "0000"_bits);
  EXPECT_TRUE(a.ok());
  const auto z = two_part_shorter("00000000"_bits, 4, b, 0);
  EXPECT_EQ(z.suffix_len, 1U);
  EXPECT_EQ(z.i, 2U);
  EXPECT_EQ(z.code.d, "00000"_bits);
  EXPECT_TRUE(z.ok());
  EXPECT_THROW(two_part_shorter("0110"_bits, 3, b, 0), std::invalid_argument);
  EXPECT_THROW(two_part_shorter("0110"_bits, 1, b, 0), std::invalid_argument);
}

TEST(TwoPartShorter, AllStringsFourToEight) {
  const Budget b = Budget::steps(100000);
  std::size_t cases = 0;
  for (std::size_t n = 4; n <= 8; ++n) {
    for_each_of_length(n, [&](const BitString& x) {
      for (std::size_t k = 2; two_part_shorter_admissible(n, k); ++k) {
        const auto r = two_part_shorter(x, k, b, n);
        ++cases;
        ASSERT_TRUE(r.ok()) << x << " k=" << k << " |p|=" << r.code.p.program.size() << " bound "
                            << r.bound_p;
        ASSERT_LT(r.i, k);
        ASSERT_EQ(BitString::nth(r.i - 1), x.substr(n - r.suffix_len, r.suffix_len));
        ASSERT_LE(is_total_on(r.code.p.program, r.code.d.size() + 1, b).verdict, Totality::TotalVerified);
      }
    });
  }
  EXPECT_GT(cases, 500U);
}

TEST(DeepIncompressible, DefinitionReplay) {
  const Budget b = Budget::steps(10000);
  for (auto [n, d] : {std::pair{6, 2}, {8, 2}, {9, 1}, {10, 3}}) {
    const auto cert = deep_incompressible(n, d, b);
    ASSERT_FALSE(cert.exhausted);
    EXPECT_EQ(cert.t_star.value, busy_beaver(n - d, b).value);
    EXPECT_LT(cert.producible, std::size_t{1} << n);
    // Replay: direct runs of every w shorter than n within T* steps.
    std::set<BitString> made;
    for (auto& [w, r] : oracle::all_runs(n - 1, Budget::steps(cert.time_cap))) {
      if (r.halted() && r.output.size() == static_cast<std::size_t>(n)) made.insert(r.output);
    }
    EXPECT_EQ(made.size(), cert.producible);
    EXPECT_FALSE(made.count(cert.x));
    for (std::uint64_t v = 0; v < cert.x.to_uint(); ++v) {
      EXPECT_TRUE(made.count(BitString::from_uint(v, n)));
    }
    EXPECT_EQ(cert.smaller.size(), cert.x.to_uint());
    const auto cx = complexity(cert.x, Budget::steps(cert.time_cap), n - 1);
    EXPECT_TRUE(cx.lower());
    EXPECT_EQ(cx.value, static_cast<std::size_t>(n));
  }
}

TEST(DeepExperiment, CompositionReport) {
  MeasureOptions o;
  o.max_len = 24;
  o.seeded = true;
  const auto rep = deep_experiment(8, 2, 2, o);
  ASSERT_FALSE(rep.deep.exhausted);
  EXPECT_FALSE(rep.rows.empty());
  for (const auto& row : rep.rows) EXPECT_TRUE(row.code.ok()) << row.k;
  EXPECT_EQ(rep.ld_bb.size(), 3U);
  std::ostringstream os;
  write_certificate(os, rep);
  EXPECT_NE(os.str().find("T*\t"), std::string::npos);
}

TEST(UnstableString, SmallInstance) {
  const Budget b = Budget::steps(10000);
  const auto rep = unstable_string(8, 2, b);
  EXPECT_EQ(rep.n, 14U);
  EXPECT_LT(rep.replacements, 1U << 7);
  EXPECT_LT(rep.marked_count, 9U << 9);
  EXPECT_FALSE(rep.saturated);
  EXPECT_TRUE(rep.verified());
  EXPECT_GT(rep.pairs_scanned, 0U);
  // Fixed point.
  const auto again = unstable_string(8, 2, b);
  EXPECT_EQ(again.x, rep.x);
  EXPECT_EQ(again.replacements, rep.replacements);
  EXPECT_EQ(again.marked_count, rep.marked_count);
}

TEST(UnstableString, ConditionsRecheckedByOracle) {
  for (auto [k, c] : {std::pair{6, 0}, {7, 1}, {8, 2}, {9, 4}}) {
    const Budget b = Budget::steps(2000);
    const auto rep = unstable_string(k, c, b);
    ASSERT_TRUE(rep.verified()) << k << " " << c;
    for (auto& [w, r] : oracle::all_runs(k - c - 1, b)) {
      EXPECT_FALSE(r.halted() && r.output == rep.x) << w;
    }
    // Every lex-smaller string of length n carries a mark: some short program makes it.
    EXPECT_EQ(rep.x.to_uint() == 0, rep.replacements == 0);
  }
  EXPECT_THROW(unstable_string(4, 4, Budget::steps(10)), std::invalid_argument);
}

TEST(Closeness, GridEpsilon) {
  EXPECT_EQ(grid_epsilon({5, 4, 3}, {5, 4, 3}), 0U);
  EXPECT_EQ(grid_epsilon({9, 9, 9}, {3, 3, 3}), 6U);
  EXPECT_EQ(grid_epsilon({8, 3, 3}, {3, 3, 3}), 1U);
}

TEST(Closeness, SmallGrid) {
  MeasureOptions o;
  o.max_len = 24;
  o.seeded = true;
  const auto rep = closeness_experiment(2, 2, o);
  EXPECT_EQ(rep.rows.size(), 7U * 3U);
  EXPECT_EQ(rep.strings.size(), 7U);
  for (const auto& s : rep.strings) {
    ASSERT_TRUE(s.epsilon.has_value()) << s.x;
    EXPECT_TRUE(s.witnessed) << s.x;
  }
  for (const auto& row : rep.rows) {
    if (!row.soph.upper()) continue;
    ASSERT_TRUE(row.one_part);
    const auto r = run_one_part(row.one_part->w, o.budget);
    EXPECT_EQ(r.output, row.x);
    EXPECT_LE(r.steps, row.one_part->t_bound);
  }
  std::ostringstream os;
  write_certificate(os, rep);
  EXPECT_NE(os.str().find("# fitted_e,"), std::string::npos);
}
