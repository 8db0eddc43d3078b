#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sophdepth/codegen.hpp"

using namespace sophdepth;

namespace {

const Budget kBig = Budget::steps(200000);

BitString out(const SynthesizedProgram& sp, const BitString& d) {
  const auto r = run(sp.program, d, kBig);
  EXPECT_TRUE(r.halted()) << sp.program << " on " << d;
  return r.output;
}

BitString padded_prefix(const BitString& d, std::size_t m) {
  BitString x = d.substr(0, std::min(m, d.size()));
  while (x.size() < m) x.push_back(false);
  return x;
}

// Position of the canonical form of d's first `width` bits among the strings
// with no trailing zero, found by walking them in length-lex order.
std::uint64_t oracle_table_index(const BitString& d, std::size_t width) {
  const BitString key = d.substr(0, std::min(width, d.size())).strip_trailing_zeros();
  std::uint64_t index = 0;
  for (std::uint64_t r = 0;; ++r) {
    const BitString s = BitString::nth(r);
    if (!s.empty() && !s[s.size() - 1]) continue;
    if (s == key) return index;
    ++index;
  }
}

}  // namespace

TEST(SynthPrint, Examples) {
  EXPECT_LE(synth_print(""_bits).program.size(), 3U);
  EXPECT_EQ(out(synth_print(""_bits), ""_bits), ""_bits);
  EXPECT_EQ(synth_print("0"_bits).program, "100"_bits);
  const auto p01 = synth_print("01"_bits);
  EXPECT_EQ(p01.program, "100011100"_bits);
  EXPECT_EQ(out(p01, ""_bits), "01"_bits);
  EXPECT_EQ(out(p01, "11"_bits), "01"_bits);
}

TEST(SynthPrint, ExhaustiveUpToTen) {
  for_each_up_to(10, [](const BitString& x) {
    const auto sp = synth_print(x);
    ASSERT_TRUE(sp.certified_total);
    ASSERT_LE(sp.program.size(), sp.length_bound);
    ASSERT_LE(sp.program.size(), 6 * x.size() + 3);
    ASSERT_EQ(out(sp, ""_bits), x);
    ASSERT_EQ(out(sp, "1011"_bits), x);
  });
}

TEST(SynthCopyN, Examples) {
  const auto zero = synth_copy_n(0);
  for_each_up_to(3, [&](const BitString& d) { EXPECT_EQ(out(zero, d), ""_bits); });
  EXPECT_EQ(out(synth_copy_n(1), "1"_bits), "1"_bits);
  const auto five = synth_copy_n(5);
  EXPECT_EQ(out(five, "10110"_bits), "10110"_bits);
  EXPECT_EQ(out(five, "1"_bits), "10000"_bits);
  EXPECT_EQ(synth_copy_n(1, CopyStrategy::Shortest).program, "101100"_bits);
}

TEST(SynthCopyN, CorrectUpTo64) {
  std::mt19937_64 rng(3);
  for (std::uint64_t m = 0; m <= 64; ++m) {
    const auto sp = synth_copy_n(m);
    EXPECT_TRUE(sp.certified_total) << m;
    EXPECT_LE(sp.program.size(), sp.length_bound) << m;
    for (int trial = 0; trial < 12; ++trial) {
      const auto d = BitString::from_uint(rng(), rng() % (m + 6));
      ASSERT_EQ(out(sp, d), padded_prefix(d, m)) << "m=" << m << " d=" << d;
    }
    ASSERT_EQ(out(sp, ""_bits), BitString::zeros(m));
  }
}

TEST(SynthCopyN, ExhaustiveSmall) {
  for (std::uint64_t m = 0; m <= 8; ++m) {
    const auto sp = synth_copy_n(m);
    for_each_up_to(m + 2, [&](const BitString& d) { ASSERT_EQ(out(sp, d), padded_prefix(d, m)); });
  }
}

TEST(SynthCopyN, LogarithmicGrowth) {
  const auto& c = synthesis_constants();
  EXPECT_GT(c.copy_a, 0.0);
  for (std::uint64_t m = 1; m <= 64; m *= 2) {
    const double delta = static_cast<double>(synth_copy_n(2 * m).program.size()) -
                         static_cast<double>(synth_copy_n(m).program.size());
    EXPECT_LE(delta, c.copy_a) << m;
  }
  for (std::uint64_t m = 0; m <= 128; ++m) {
    EXPECT_LE(static_cast<double>(3 * detail::log_copier(m).size()),
              c.copy_a * std::log2(static_cast<double>(m) + 2) + c.copy_b);
  }
  // Far beyond the measured range the bound still holds.
  EXPECT_LE(3 * detail::log_copier(100000).size(), copy_length_bound(100000));
}

TEST(SynthCopyN, UnrolledFallback) {
  const auto sp = synth_copy_n(7, CopyStrategy::Unrolled);
  EXPECT_EQ(sp.program.size(), 6U * 7U);
  EXPECT_EQ(out(sp, "1101"_bits), "1101000"_bits);
}

TEST(SynthTwoPartHead, Examples) {
  EXPECT_EQ(out(synth_two_part_head(""_bits, 0, ""_bits), ""_bits), ""_bits);
  EXPECT_EQ(out(synth_two_part_head("1"_bits, 1, ""_bits), "0"_bits), "10"_bits);
  EXPECT_EQ(out(synth_two_part_head("0"_bits, 2, "1"_bits), "11"_bits), "0111"_bits);
}

TEST(SynthTwoPartHead, Composition) {
  for (auto strategy : {CopyStrategy::Logarithmic, CopyStrategy::Unrolled}) {
    for_each_up_to(3, [&](const BitString& prefix) {
      for_each_up_to(3, [&](const BitString& suffix) {
        for (std::uint64_t c = 0; c <= 4; ++c) {
          const auto sp = synth_two_part_head(prefix, c, suffix, strategy);
          ASSERT_TRUE(sp.certified_total);
          if (strategy == CopyStrategy::Logarithmic) ASSERT_LE(sp.program.size(), sp.length_bound);
          const auto copier = synth_copy_n(c, strategy);
          for_each_up_to(6, [&](const BitString& d) {
            ASSERT_EQ(out(sp, d), out(synth_print(prefix), d) + out(copier, d) +
                                      out(synth_print(suffix), d))
                << prefix << " " << c << " " << suffix << " " << d;
          });
        }
      });
    });
  }
}

TEST(SynthTable, RejectsEmpty) {
  EXPECT_THROW(synth_table({}), std::invalid_argument);
  std::vector<BitString> big(64, BitString::zeros(64));
  EXPECT_THROW(synth_table(big, 1000), std::length_error);
}

TEST(SynthTable, SmallExamples) {
  const auto one = synth_table({"0"_bits});
  EXPECT_TRUE(one.certified_total);
  EXPECT_EQ(out(one, ""_bits), "0"_bits);
  EXPECT_EQ(out(one, "0"_bits), "0"_bits);  // indistinguishable from ε on this machine
  EXPECT_EQ(out(one, "1"_bits), ""_bits);
  const auto two = synth_table({"1"_bits, "11"_bits});
  EXPECT_EQ(out(two, ""_bits), "1"_bits);
  EXPECT_EQ(out(two, "1"_bits), "11"_bits);
  EXPECT_EQ(out(two, "01"_bits), ""_bits);
  EXPECT_EQ(out(two, "11"_bits), ""_bits);
}

TEST(SynthTable, IndexStrings) {
  const char* expected[] = {"", "1", "01", "11", "001", "011", "101", "111", "0001"};
  for (std::uint64_t i = 0; i < 9; ++i) {
    EXPECT_EQ(table_index_string(i), BitString::parse(expected[i]));
    EXPECT_EQ(table_index_of(table_index_string(i), table_width(9)), i);
    EXPECT_EQ(oracle_table_index(table_index_string(i), 8), i);
    EXPECT_LE(table_index_string(i).size(), ceil_log2(i + 1) + 1);
  }
}

TEST(SynthTable, AgreesWithOracleOnAllShortInputs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    std::vector<BitString> entries;
    for (std::size_t i = 0; i < n; ++i) entries.push_back(BitString::from_uint(rng(), rng() % 5));
    const auto sp = synth_table(entries);
    ASSERT_TRUE(sp.certified_total);
    const std::size_t width = table_width(n);
    for_each_up_to(width + 1, [&](const BitString& d) {
      const std::uint64_t idx = oracle_table_index(d, width);
      const BitString want = idx < n ? entries[idx] : BitString{};
      ASSERT_EQ(out(sp, d), want) << "n=" << n << " d=" << d;
    });
  }
}

TEST(Disassembly, OneMnemonicPerLine) {
  EXPECT_EQ(disassemble(synth_print("01"_bits).program), "OUT\nFLIP\nOUT\n");
}
