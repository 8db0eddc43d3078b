#pragma once

// Reference machine: a deterministic 8-opcode, binary-cell, bracket-loop
// interpreter, its self-delimiting one-part wrapper, and bounded totality checks.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sophdepth/bitstring.hpp"

namespace sophdepth {

enum class Op : std::uint8_t { Halt = 0, Left, Right, Flip, Out, Read, Loop, End };

inline constexpr std::array<std::string_view, 8> kMnemonics = {"HALT", "LEFT", "RIGHT", "FLIP",
                                                               "OUT",  "READ", "LOOP",  "END"};

inline std::string_view mnemonic(Op op) { return kMnemonics[static_cast<std::size_t>(op)]; }

inline BitString op_bits(Op op) { return BitString::from_uint(static_cast<std::uint64_t>(op), 3); }

/// Consecutive 3-bit groups of a program, with LOOP/END pairing.
/// A trailing group of fewer than 3 bits is discarded.
struct DecodedProgram {
  BitString source;
  std::vector<Op> ops;
  std::vector<std::uint32_t> match;  // LOOP <-> END partner index
  bool balanced = true;

  [[nodiscard]] bool valid() const { return balanced; }
};

inline DecodedProgram decode(const BitString& program) {
  DecodedProgram out;
  out.source = program;
  const std::size_t n = program.size() / 3;
  out.ops.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned code = (program[3 * i] ? 4U : 0U) | (program[3 * i + 1] ? 2U : 0U) |
                          (program[3 * i + 2] ? 1U : 0U);
    out.ops.push_back(static_cast<Op>(code));
  }
  out.match.assign(n, 0);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (out.ops[i] == Op::Loop) {
      stack.push_back(i);
    } else if (out.ops[i] == Op::End) {
      if (stack.empty()) {
        out.balanced = false;
        return out;
      }
      out.match[i] = stack.back();
      out.match[stack.back()] = i;
      stack.pop_back();
    }
  }
  out.balanced = stack.empty();
  return out;
}

inline BitString assemble(const std::vector<Op>& ops) {
  BitString out;
  for (Op op : ops) out.append(op_bits(op));
  return out;
}

/// One mnemonic per line.
inline std::string disassemble(const BitString& program) {
  std::string text;
  const DecodedProgram d = decode(program);
  for (Op op : d.ops) {
    text += mnemonic(op);
    text += '\n';
  }
  return text;
}

/// Inverse of disassemble(); blank lines and '#' comments are ignored.
inline BitString assemble_text(std::string_view text) {
  std::vector<Op> ops;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.remove_suffix(1);
    }
    if (!line.empty()) {
      bool found = false;
      for (std::size_t i = 0; i < kMnemonics.size(); ++i) {
        if (kMnemonics[i] == line) {
          ops.push_back(static_cast<Op>(i));
          found = true;
          break;
        }
      }
      if (!found) throw std::invalid_argument("unknown mnemonic: " + std::string(line));
    }
    pos = eol + 1;
  }
  return assemble(ops);
}

struct Budget {
  std::uint64_t max_steps = 0;
  std::optional<std::uint64_t> max_excursion;  // cells left/right of origin

  static Budget steps(std::uint64_t n) { return Budget{n, std::nullopt}; }

  [[nodiscard]] Budget doubled() const { return Budget{max_steps * 2, max_excursion}; }

  /// "1000" or "1000:64" (steps:excursion).
  [[nodiscard]] std::string to_string() const {
    std::string s = std::to_string(max_steps);
    if (max_excursion) s += ":" + std::to_string(*max_excursion);
    return s;
  }

  static Budget parse(std::string_view text) {
    Budget b;
    const auto colon = text.find(':');
    b.max_steps = std::stoull(std::string(text.substr(0, colon)));
    if (colon != std::string_view::npos) {
      b.max_excursion = std::stoull(std::string(text.substr(colon + 1)));
    }
    return b;
  }

  friend bool operator==(const Budget&, const Budget&) = default;
};

enum class Status : std::uint8_t { Halted, BudgetExceeded, ProvenDivergent, Invalid };

inline std::string_view status_name(Status s) {
  switch (s) {
    case Status::Halted: return "Halted";
    case Status::BudgetExceeded: return "BudgetExceeded";
    case Status::ProvenDivergent: return "ProvenDivergent";
    case Status::Invalid: return "Invalid";
  }
  return "?";
}

inline Status parse_status(std::string_view s) {
  if (s == "Halted") return Status::Halted;
  if (s == "BudgetExceeded") return Status::BudgetExceeded;
  if (s == "ProvenDivergent") return Status::ProvenDivergent;
  if (s == "Invalid") return Status::Invalid;
  throw std::invalid_argument("unknown outcome: " + std::string(s));
}

/// A repeated configuration: the one at step `first` recurs at step `repeat`.
struct CycleCertificate {
  std::uint64_t first = 0;
  std::uint64_t repeat = 0;
  friend bool operator==(const CycleCertificate&, const CycleCertificate&) = default;
};

/// Result of a budgeted run. `output` and `steps` describe the state at
/// termination for every status except Invalid; they are the machine's result
/// only when `status == Halted`.
struct ExecOutcome {
  Status status = Status::Invalid;
  BitString output;
  std::uint64_t steps = 0;
  std::uint64_t reads = 0;  // READ instructions executed
  std::optional<CycleCertificate> certificate;

  [[nodiscard]] bool halted() const { return status == Status::Halted; }

  static ExecOutcome invalid() { return ExecOutcome{}; }

  friend bool operator==(const ExecOutcome&, const ExecOutcome&) = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Two-way unbounded tape of binary cells, with an incremental hash of its contents.
class Tape {
 public:
  Tape() : cells_(16, 0), origin_(8) {}

  [[nodiscard]] std::uint8_t get(std::int64_t pos) const {
    const std::int64_t i = pos + origin_;
    if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return 0;
    return cells_[static_cast<std::size_t>(i)];
  }

  void set(std::int64_t pos, std::uint8_t value) {
    std::uint8_t& cell = at(pos);
    if (cell != value) {
      cell = value;
      hash_ ^= splitmix64(static_cast<std::uint64_t>(pos));
    }
  }

  [[nodiscard]] std::uint64_t hash() const { return hash_; }
  [[nodiscard]] std::int64_t lo() const { return lo_; }
  [[nodiscard]] std::int64_t hi() const { return hi_; }

  [[nodiscard]] bool same_contents(const Tape& other) const {
    if (hash_ != other.hash_) return false;
    const std::int64_t from = std::min(lo_, other.lo_);
    const std::int64_t to = std::max(hi_, other.hi_);
    for (std::int64_t p = from; p <= to; ++p) {
      if (get(p) != other.get(p)) return false;
    }
    return true;
  }

 private:
  std::uint8_t& at(std::int64_t pos) {
    std::int64_t i = pos + origin_;
    if (i < 0) {
      const std::size_t grow = std::max<std::size_t>(cells_.size(), static_cast<std::size_t>(-i));
      cells_.insert(cells_.begin(), grow, 0);
      origin_ += static_cast<std::int64_t>(grow);
      i = pos + origin_;
    } else if (i >= static_cast<std::int64_t>(cells_.size())) {
      const std::size_t need = static_cast<std::size_t>(i) + 1;
      cells_.resize(std::max(need, cells_.size() * 2), 0);
    }
    lo_ = std::min(lo_, pos);
    hi_ = std::max(hi_, pos);
    return cells_[static_cast<std::size_t>(i)];
  }

  std::vector<std::uint8_t> cells_;
  std::int64_t origin_;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::uint64_t hash_ = 0;
};

}  // namespace detail

/// Interpreter state. Runs until a terminal status, or (in exploration mode)
/// until a READ needs an input bit that has not been decided yet.
///
/// Divergence certificate: configurations (pc, head, tape, cursor) are compared
/// against a snapshot retaken at steps 0, 1, 2, 4, 8, ... (Brent's scheme). The
/// check at step t precedes the budget check at step t.
class Machine {
 public:
  enum class Event { Terminal, NeedInput };

  Machine(const DecodedProgram& program, Budget budget) : prog_(&program), budget_(budget) {}

  /// `input` holds the decided input bits. A READ at cursor ≥ input.size() reads 0
  /// without advancing, unless cursor < fork_limit, in which case NeedInput is returned
  /// and the caller must extend `input` by one bit and call again.
  Event run(const BitString& input, std::size_t fork_limit) {
    const auto& ops = prog_->ops;
    while (true) {
      if (pc_ >= ops.size()) return finish(Status::Halted);
      const Op op = ops[pc_];
      if (op == Op::Read && cursor_ >= input.size() && cursor_ < fork_limit) {
        return Event::NeedInput;
      }
      if (snap_valid_ && pc_ == snap_.pc && head_ == snap_.head && cursor_ == snap_.cursor &&
          tape_.same_contents(snap_.tape)) {
        cert_ = CycleCertificate{snap_step_, steps_};
        return finish(Status::ProvenDivergent);
      }
      if (steps_ == next_snap_) {
        snap_ = Snapshot{pc_, head_, cursor_, tape_};
        snap_valid_ = true;
        snap_step_ = steps_;
        next_snap_ = steps_ == 0 ? 1 : steps_ * 2;
      }
      if (steps_ >= budget_.max_steps) return finish(Status::BudgetExceeded);
      ++steps_;
      switch (op) {
        case Op::Halt: return finish(Status::Halted);
        case Op::Left:
          --head_;
          if (out_of_range()) return finish(Status::BudgetExceeded);
          ++pc_;
          break;
        case Op::Right:
          ++head_;
          if (out_of_range()) return finish(Status::BudgetExceeded);
          ++pc_;
          break;
        case Op::Flip:
          tape_.set(head_, tape_.get(head_) ^ 1U);
          ++pc_;
          break;
        case Op::Out:
          output_.push_back(tape_.get(head_) != 0);
          ++pc_;
          break;
        case Op::Read:
          ++reads_;
          if (cursor_ < input.size()) {
            tape_.set(head_, input[cursor_] ? 1 : 0);
            ++cursor_;
          } else {
            tape_.set(head_, 0);
          }
          ++pc_;
          break;
        case Op::Loop:
          pc_ = tape_.get(head_) == 0 ? prog_->match[pc_] + 1 : pc_ + 1;
          break;
        case Op::End:
          pc_ = tape_.get(head_) == 1 ? prog_->match[pc_] + 1 : pc_ + 1;
          break;
      }
    }
  }

  [[nodiscard]] std::size_t cursor() const { return cursor_; }

  [[nodiscard]] ExecOutcome outcome() const {
    return ExecOutcome{status_, output_, steps_, reads_, cert_};
  }

 private:
  struct Snapshot {
    std::uint32_t pc = 0;
    std::int64_t head = 0;
    std::size_t cursor = 0;
    detail::Tape tape;
  };

  Event finish(Status s) {
    status_ = s;
    return Event::Terminal;
  }

  [[nodiscard]] bool out_of_range() const {
    return budget_.max_excursion &&
           static_cast<std::uint64_t>(std::llabs(head_)) > *budget_.max_excursion;
  }

  const DecodedProgram* prog_;
  Budget budget_;
  std::uint32_t pc_ = 0;
  std::int64_t head_ = 0;
  std::size_t cursor_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t reads_ = 0;
  detail::Tape tape_;
  BitString output_;
  Status status_ = Status::Invalid;
  std::optional<CycleCertificate> cert_;
  Snapshot snap_;
  bool snap_valid_ = false;
  std::uint64_t snap_step_ = 0;
  std::uint64_t next_snap_ = 0;
};

inline ExecOutcome run(const DecodedProgram& program, const BitString& input, Budget budget) {
  if (!program.valid()) return ExecOutcome::invalid();
  Machine m(program, budget);
  m.run(input, 0);
  return m.outcome();
}

/// U(p, d) under a budget.
inline ExecOutcome run(const BitString& program, const BitString& input, Budget budget) {
  return run(decode(program), input, budget);
}

/// E(p) = 1^|bin(|p|)| 0 bin(|p|) p.
inline BitString encode_self_delim(const BitString& program) {
  const BitString len = BitString::binary(program.size());
  BitString out;
  for (std::size_t i = 0; i < len.size(); ++i) out.push_back(true);
  out.push_back(false);
  out.append(len);
  out.append(program);
  return out;
}

inline std::size_t self_delim_length(std::size_t program_len) {
  return program_len + 2 * binary_length(program_len) + 1;
}

struct OnePartSplit {
  BitString program;
  BitString data;
};

/// Splits w = E(p)·d; nullopt when w does not start with some E(p).
inline std::optional<OnePartSplit> split_one_part(const BitString& w) {
  std::size_t ones = 0;
  while (ones < w.size() && w[ones]) ++ones;
  if (ones == 0 || ones >= w.size()) return std::nullopt;
  const std::size_t len_begin = ones + 1;
  if (len_begin + ones > w.size() || ones > 40) return std::nullopt;
  const BitString numeral = w.substr(len_begin, ones);
  if (ones > 1 && !numeral[0]) return std::nullopt;  // only canonical bin(|p|) is a header
  const std::uint64_t plen = numeral.to_uint();
  const std::size_t prog_begin = len_begin + ones;
  if (prog_begin + plen > w.size()) return std::nullopt;
  return OnePartSplit{w.substr(prog_begin, plen), w.substr(prog_begin + plen)};
}

/// U1(w): decode the header, then run(p, d). Decoding is free.
inline ExecOutcome run_one_part(const BitString& w, Budget budget) {
  auto split = split_one_part(w);
  if (!split) return ExecOutcome::invalid();
  return run(split->program, split->data, budget);
}

/// One path of a program's input-exploration tree.
///
/// `read` holds the input bits this run consumed below the fork limit. The run is
/// exactly the run on every input d (|d| ≤ fork limit) whose zero-padding agrees
/// with `read`; inputs d = read[0..m) with read[m..) all zero are covered too, and
/// share status/output/steps except for the timing of divergence certificates.
struct Leaf {
  BitString read;
  ExecOutcome outcome;
};

struct Exploration {
  std::vector<Leaf> leaves;
  bool truncated = false;  // stopped after max_leaves leaves
};

/// Runs `program` on all inputs of length ≤ fork_limit at once, forking at each
/// READ of a not-yet-decided bit. Leaves come out in lexicographic order of `read`
/// (the 0-branch first).
inline Exploration explore_bounded(const DecodedProgram& program, std::size_t fork_limit,
                                   Budget budget, std::size_t max_leaves) {
  Exploration out;
  if (!program.valid()) return out;
  struct Pending {
    Machine machine;
    BitString read;
  };
  std::vector<Pending> stack;
  stack.push_back(Pending{Machine(program, budget), BitString{}});
  while (!stack.empty()) {
    if (out.leaves.size() >= max_leaves) {
      out.truncated = true;
      break;
    }
    Pending cur = std::move(stack.back());
    stack.pop_back();
    while (true) {
      if (cur.machine.run(cur.read, fork_limit) == Machine::Event::Terminal) {
        out.leaves.push_back(Leaf{std::move(cur.read), cur.machine.outcome()});
        break;
      }
      Pending one{cur.machine, cur.read};
      one.read.push_back(true);
      stack.push_back(std::move(one));
      cur.read.push_back(false);
    }
  }
  return out;
}

inline std::vector<Leaf> explore(const DecodedProgram& program, std::size_t fork_limit,
                                 Budget budget) {
  return explore_bounded(program, fork_limit, budget, SIZE_MAX).leaves;
}

/// Shortest input following this leaf's path.
inline BitString minimal_input(const Leaf& leaf) { return leaf.read.strip_trailing_zeros(); }

/// Calls fn(d) on every input d with |d| ≤ fork_limit that follows this leaf's
/// path, in length-lex order, until fn returns false.
template <class Fn>
void for_each_covered_input(const Leaf& leaf, std::size_t fork_limit, Fn&& fn) {
  const BitString& r = leaf.read;
  for (std::size_t m = minimal_input(leaf).size(); m < r.size(); ++m) {
    if (!fn(r.substr(0, m))) return;
  }
  if (!fn(r)) return;
  if (r.size() >= fork_limit) return;
  for (std::size_t extra = 1; r.size() + extra <= fork_limit; ++extra) {
    const std::uint64_t count = std::uint64_t{1} << extra;
    for (std::uint64_t v = 0; v < count; ++v) {
      if (!fn(r + BitString::from_uint(v, extra))) return;
    }
  }
}

/// Number of inputs for_each_covered_input would visit.
inline std::uint64_t covered_input_count(const Leaf& leaf, std::size_t fork_limit) {
  const std::uint64_t shorter = leaf.read.size() - minimal_input(leaf).size();
  if (leaf.read.size() >= fork_limit) return shorter + 1;
  return shorter + (std::uint64_t{2} << (fork_limit - leaf.read.size())) - 1;
}

enum class Totality { TotalVerified, FoundNonHalting, Inconclusive };

inline std::string_view totality_name(Totality t) {
  switch (t) {
    case Totality::TotalVerified: return "TotalVerified";
    case Totality::FoundNonHalting: return "FoundNonHalting";
    case Totality::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct TotalityResult {
  Totality verdict = Totality::TotalVerified;
  BitString witness;  // the offending input when not TotalVerified
  /// Every run halted without ever reading at a position ≥ the domain bound, so
  /// the program halts on all inputs of any length.
  bool total_everywhere = false;
  std::uint64_t max_steps = 0;  // over the domain, when TotalVerified
};

/// Checks that `program` halts within `budget` on every d with |d| ≤ max_input_len.
/// The reported input is the length-lex first proven-divergent one if any exists,
/// else the first budget-exceeded one. Invalid programs are divergent everywhere.
inline TotalityResult is_total_on(const DecodedProgram& program, std::size_t max_input_len,
                                  Budget budget) {
  TotalityResult result;
  if (!program.valid()) {
    result.verdict = Totality::FoundNonHalting;
    return result;
  }
  const auto leaves = explore(program, max_input_len, budget);
  bool all_halted = true;
  bool bounded_reads = true;
  for (const Leaf& leaf : leaves) {
    if (!leaf.outcome.halted()) all_halted = false;
    if (leaf.read.size() >= max_input_len && leaf.outcome.reads > leaf.read.size()) {
      bounded_reads = false;
    }
    result.max_steps = std::max(result.max_steps, leaf.outcome.steps);
  }
  if (all_halted) {
    result.total_everywhere = bounded_reads;
    return result;
  }
  result.max_steps = 0;
  // Candidates: each non-halted leaf's own input plus its zero-stripped shortenings,
  // which are rerun directly because their certificate timing may differ.
  std::optional<BitString> divergent;
  std::optional<BitString> exceeded;
  auto consider = [&](const BitString& d, Status s) {
    if (s == Status::ProvenDivergent) {
      if (!divergent || d < *divergent) divergent = d;
    } else if (s == Status::BudgetExceeded) {
      if (!exceeded || d < *exceeded) exceeded = d;
    }
  };
  for (const Leaf& leaf : leaves) {
    if (leaf.outcome.halted()) continue;
    consider(leaf.read, leaf.outcome.status);
    for (std::size_t m = leaf.read.size(); m > 0 && !leaf.read[m - 1]; --m) {
      const BitString shorter = leaf.read.substr(0, m - 1);
      consider(shorter, run(program, shorter, budget).status);
    }
  }
  if (divergent) {
    result.verdict = Totality::FoundNonHalting;
    result.witness = *divergent;
  } else {
    result.verdict = Totality::Inconclusive;
    result.witness = exceeded.value_or(BitString{});
  }
  return result;
}

inline TotalityResult is_total_on(const BitString& program, std::size_t max_input_len,
                                  Budget budget) {
  return is_total_on(decode(program), max_input_len, budget);
}

}  // namespace sophdepth
