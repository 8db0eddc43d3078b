#pragma once

// Program synthesis for the reference machine: literal printers, input copiers,
// table lookups and two-part heads.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "sophdepth/bitstring.hpp"
#include "sophdepth/vm.hpp"

namespace sophdepth {

enum class Purpose { PrintLiteral, CopyN, TableLookup, TwoPartHead };

inline std::string_view purpose_name(Purpose p) {
  switch (p) {
    case Purpose::PrintLiteral: return "PrintLiteral";
    case Purpose::CopyN: return "CopyN";
    case Purpose::TableLookup: return "TableLookup";
    case Purpose::TwoPartHead: return "TwoPartHead";
  }
  return "?";
}

struct SynthesizedProgram {
  BitString program;
  Purpose purpose = Purpose::PrintLiteral;
  bool certified_total = false;
  std::size_t length_bound = 0;
  std::size_t certified_domain = 0;  // inputs of length ≤ this were checked
};

/// Copiers fork on every input bit they read, so their totality check is capped.
inline constexpr std::size_t kCopierCertifyCap = 12;

/// How synthCopyN realizes the copy loop.
enum class CopyStrategy {
  Logarithmic,  // binary counter; length grows with log m
  Unrolled,     // READ OUT repeated m times (6m bits)
  Shortest,     // whichever of the two is shorter
};

namespace detail {

struct Emitter {
  std::vector<Op> ops;
  bool cell_one = false;  // known state of the cell under the head, where tracked

  void emit(Op op) { ops.push_back(op); }
  void emit(std::initializer_list<Op> list) { ops.insert(ops.end(), list.begin(), list.end()); }
  void append(const std::vector<Op>& more) { ops.insert(ops.end(), more.begin(), more.end()); }

  /// Prints `bits` using the current cell, starting from its tracked state.
  void print(const BitString& bits) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != cell_one) {
        emit(Op::Flip);
        cell_one = !cell_one;
      }
      emit(Op::Out);
    }
  }

  void clear_cell() {
    if (cell_one) {
      emit(Op::Flip);
      cell_one = false;
    }
  }
};

// Tape layout, relative to the head's starting cell 0:
//   -1: run flag (1 while copying)       0: stopper (always 0)
//    1: data cell                        2+2i: marker M_i (1 for i < K)
//    3+2i: counter bit B_i (LSB first)   2+2K: marker M_K (0)
// The counter starts at 2^K - m and is incremented after each copied bit; the
// overflow into B_K leaves the head on a cleared counter bit, ending the loop.
// Finishes on a zero cell.
inline std::vector<Op> log_copier(std::uint64_t m) {
  using enum Op;
  if (m == 0) return {};
  const std::size_t k = std::max<std::size_t>(1, ceil_log2(m));
  const std::uint64_t start = (std::uint64_t{1} << k) - m;
  std::vector<Op> ops = {Left, Flip, Right, Right, Right};
  for (std::size_t i = 0; i < k; ++i) {
    ops.push_back(Flip);
    ops.push_back(Right);
    if ((start >> i) & 1U) ops.push_back(Flip);
    ops.push_back(Right);
  }
  ops.insert(ops.end(), {Left, Left, Loop, Left, Left, End, Left});
  ops.insert(ops.end(), {Loop, Right, Right, Read, Out, Right, Right, Loop, Flip, Right, Right, End,
                         Flip, Left, Loop, Left, Left, End, Left, End});
  return ops;
}

inline std::vector<Op> unrolled_copier(std::uint64_t m) {
  std::vector<Op> ops;
  for (std::uint64_t i = 0; i < m; ++i) {
    ops.push_back(Op::Read);
    ops.push_back(Op::Out);
  }
  return ops;
}

/// Copier ops and whether they finish on a known-zero cell.
inline std::pair<std::vector<Op>, bool> copier(std::uint64_t m, CopyStrategy strategy) {
  if (m == 0) return {{}, true};
  auto logarithmic = log_copier(m);
  if (strategy == CopyStrategy::Logarithmic) return {std::move(logarithmic), true};
  auto unrolled = unrolled_copier(m);
  if (strategy == CopyStrategy::Unrolled || unrolled.size() < logarithmic.size()) {
    return {std::move(unrolled), false};
  }
  return {std::move(logarithmic), true};
}

}  // namespace detail

/// Measured constants of the synthesizers (bits):
///   |synthPrint(x)|             ≤ print_factor·|x|
///   |synthCopyN(m)|             ≤ copy_a·log2(m+2) + copy_b
///   |synthTwoPartHead(p,c,s)|   ≤ print_factor·(|p|+|s|) + copy_a·log2(c+2) + head_b
struct SynthesisConstants {
  std::size_t print_factor = 6;
  double copy_a = 0;
  double copy_b = 0;
  double head_b = 0;
};

/// Sets certified_total iff the program halts on every input of length ≤ domain.
inline void certify(SynthesizedProgram& sp, std::size_t domain, Budget budget) {
  sp.certified_domain = domain;
  sp.certified_total = is_total_on(sp.program, domain, budget).verdict == Totality::TotalVerified;
}

/// Generous step budget for certifying a copier of m bits.
inline Budget copier_budget(std::uint64_t m, std::size_t program_bits) {
  return Budget::steps(64 * (m + 2) * (binary_length(m) + 2) + program_bits);
}

inline SynthesizedProgram synth_print(const BitString& x) {
  detail::Emitter e;
  e.print(x);
  SynthesizedProgram sp{assemble(e.ops), Purpose::PrintLiteral, false, 6 * x.size() + 3};
  certify(sp, 1, Budget::steps(e.ops.size() + 1));
  return sp;
}

/// Copier measurement over m ∈ [1, 64]: a = max growth per doubling of m, b the
/// smallest intercept covering every m.
inline const SynthesisConstants& synthesis_constants() {
  static const SynthesisConstants constants = [] {
    SynthesisConstants c;
    auto len = [](std::uint64_t m) { return 3.0 * static_cast<double>(detail::log_copier(m).size()); };
    for (std::uint64_t m = 1; m <= 64; m *= 2) c.copy_a = std::max(c.copy_a, len(2 * m) - len(m));
    for (std::uint64_t m = 0; m <= 128; ++m) {
      c.copy_b = std::max(c.copy_b, len(m) - c.copy_a * std::log2(static_cast<double>(m) + 2));
    }
    c.copy_b = std::ceil(c.copy_b);
    c.head_b = c.copy_b + 6;  // prefix-cell reset, or the step off an unrolled copier's cell
    return c;
  }();
  return constants;
}

inline std::size_t copy_length_bound(std::uint64_t m) {
  const auto& c = synthesis_constants();
  return static_cast<std::size_t>(
      std::floor(c.copy_a * std::log2(static_cast<double>(m) + 2) + c.copy_b));
}

/// Outputs the first m bits of the input, zero-padded.
inline SynthesizedProgram synth_copy_n(std::uint64_t m,
                                       CopyStrategy strategy = CopyStrategy::Logarithmic) {
  auto [ops, zero_cell] = detail::copier(m, strategy);
  const std::size_t bound =
      strategy == CopyStrategy::Unrolled ? static_cast<std::size_t>(6 * m) : copy_length_bound(m);
  SynthesizedProgram sp{assemble(ops), Purpose::CopyN, false, bound};
  certify(sp, std::min<std::size_t>(m + 1, kCopierCertifyCap), copier_budget(m, sp.program.size()));
  return sp;
}

/// prefix · (first copy_count input bits, zero-padded) · suffix.
inline SynthesizedProgram synth_two_part_head(const BitString& prefix, std::uint64_t copy_count,
                                              const BitString& suffix,
                                              CopyStrategy strategy = CopyStrategy::Logarithmic) {
  detail::Emitter e;
  e.print(prefix);
  e.clear_cell();
  auto [ops, zero_cell] = detail::copier(copy_count, strategy);
  e.append(ops);
  if (!zero_cell) e.emit(Op::Right);
  e.cell_one = false;
  e.print(suffix);
  const auto& c = synthesis_constants();
  const auto bound = static_cast<std::size_t>(
      std::floor(static_cast<double>(c.print_factor * (prefix.size() + suffix.size())) +
                 c.copy_a * std::log2(static_cast<double>(copy_count) + 2) + c.head_b));
  SynthesizedProgram sp{assemble(e.ops), Purpose::TwoPartHead, false, bound};
  certify(sp, std::min<std::size_t>(copy_count + 1, kCopierCertifyCap), copier_budget(copy_count, sp.program.size()));
  return sp;
}

/// Index strings of a lookup table: ε, 1, 01, 11, 001, 011, 101, 111, ... (the
/// strings without trailing zeros, length-lex). The machine reads a missing input
/// bit as 0, so every input is equivalent to its zero-stripped form.
inline BitString table_index_string(std::uint64_t i) {
  if (i == 0) return {};
  const std::size_t len = binary_length(i);
  return BitString::from_uint(i - (std::uint64_t{1} << (len - 1)), len - 1) + "1"_bits;
}

/// Table index selected by input d when the table reads `width` bits.
inline std::uint64_t table_index_of(const BitString& d, std::size_t width) {
  BitString window = d.substr(0, std::min(width, d.size()));
  window = window.strip_trailing_zeros();
  if (window.empty()) return 0;
  const std::size_t len = window.size();
  return (std::uint64_t{1} << (len - 1)) + window.substr(0, len - 1).to_uint();
}

/// Number of input bits a table over `entries` entries inspects: |bin(N)| + 1, so
/// every input up to the verification bound that is not an index string (up to
/// trailing zeros) prints ε.
inline std::size_t table_width(std::size_t entries) { return binary_length(entries) + 1; }

inline constexpr std::size_t kDefaultTableCeiling = std::size_t{1} << 18;

namespace detail {

struct TableEntry {
  std::uint64_t pattern;  // width-bit zero-padded index string, MSB = first input bit
  const BitString* output;
};

// Head at A = cell 0 of this node, T = cell 1, children start at cell 2.
inline void emit_table_node(Emitter& e, const std::vector<TableEntry>& entries, std::size_t depth,
                            std::size_t width) {
  using enum Op;
  if (entries.empty()) return;
  if (depth == width) {
    e.cell_one = false;
    e.print(*entries.front().output);
    return;
  }
  std::vector<TableEntry> zero;
  std::vector<TableEntry> one;
  for (const auto& entry : entries) {
    ((entry.pattern >> (width - 1 - depth)) & 1U ? one : zero).push_back(entry);
  }
  e.emit(Read);
  if (zero.empty()) {
    e.emit({Loop, Flip, Right, Right});
    emit_table_node(e, one, depth + 1, width);
    e.emit({Left, Left, End});
  } else if (one.empty()) {
    e.emit({Flip, Loop, Flip, Right, Right});
    emit_table_node(e, zero, depth + 1, width);
    e.emit({Left, Left, End});
  } else {
    e.emit({Right, Flip, Left, Loop, Flip, Right, Flip, Right});
    emit_table_node(e, one, depth + 1, width);
    e.emit({Left, Left, End, Right, Loop, Flip, Right});
    emit_table_node(e, zero, depth + 1, width);
    e.emit({Left, End, Left});
  }
}

}  // namespace detail

/// Total program f with f(d) = entries[table_index_of(d, w)] when that index is in
/// range and ε otherwise, w = table_width(|entries|). Branches are emitted only
/// toward non-empty entries.
inline SynthesizedProgram synth_table(const std::vector<BitString>& entries,
                                      std::size_t size_ceiling = kDefaultTableCeiling) {
  if (entries.empty()) throw std::invalid_argument("synth_table: entry list is empty");
  const std::size_t width = table_width(entries.size());
  std::vector<detail::TableEntry> live;
  for (std::uint64_t i = 0; i < entries.size(); ++i) {
    if (entries[i].empty()) continue;
    const BitString index = table_index_string(i);
    const std::uint64_t pattern = index.to_uint() << (width - index.size());
    live.push_back({pattern, &entries[i]});
  }
  std::sort(live.begin(), live.end(),
            [](const auto& a, const auto& b) { return a.pattern < b.pattern; });
  detail::Emitter e;
  detail::emit_table_node(e, live, 0, width);
  if (3 * e.ops.size() > size_ceiling) {
    throw std::length_error("synth_table: program of " + std::to_string(3 * e.ops.size()) +
                            " bits exceeds ceiling " + std::to_string(size_ceiling));
  }
  SynthesizedProgram out{assemble(e.ops), Purpose::TableLookup, false, 3 * e.ops.size()};
  // Every loop body runs at most once, so op count bounds the running time.
  certify(out, binary_length(entries.size()) + 1, Budget::steps(e.ops.size() + 1));
  return out;
}

}  // namespace sophdepth
