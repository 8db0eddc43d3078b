// Small tour: measure a few strings, print one two-part code and its
// one-part replay, and show the staircase of a periodic string.

#include <algorithm>
#include <iostream>

#include "sophdepth/sophdepth.hpp"

using namespace sophdepth;

int main() {
  MeasureOptions o;
  o.budget = Budget::steps(10000);
  o.max_len = 24;
  o.seeded = true;

  std::cout << "x         C   ld0  ldbb0 soph0 soph2\n";
  for (const char* s : {"0", "0110", "000000", "010101", "110100"}) {
    const BitString x = BitString::parse(s);
    const auto soph = sophistication_curve(x, {0, 2}, o);
    std::cout << s << std::string(10 - x.size(), ' ') << complexity(x, o).value << "   "
              << logical_depth(x, 0, o).value << "    " << bb_logical_depth(x, 0, o).value << "    "
              << soph[0].value << "    " << soph[1].value << "\n";
  }

  // A two-part code for x, then folded into a single self-delimited program.
  const BitString x = "010101"_bits;
  const auto v = sophistication(x, 2, o);
  if (v.upper()) {
    TwoPartCode tp{{*v.witness, Purpose::PrintLiteral, true}, *v.second, x};
    const auto w = one_part_from_two_part(tp, std::max(x.size(), v.second->size()), o.budget);
    std::cout << "\nmodel for " << x << ":\n" << disassemble(*v.witness) << "data " << v.second->field()
              << "\none-part length " << w.w.size() << ", runs within " << w.t_bound << " steps\n";
  }

  // h(i) only where it drops; the enumerated models stop at the ceiling and
  // the synthesized singleton {x} shows up much later.
  std::cout << "\nstaircase of 01 where it changes (i, log2 of set size):\n";
  const auto st = structure_set("01"_bits, o.budget, 400, 8);
  std::optional<std::size_t> last;
  for (const auto& p : st.staircase) {
    if (!last || p.j != *last) std::cout << p.i << ", " << p.j << "\n";
    last = p.j;
  }
  for (const auto& g : st.gaps) std::cout << "gap: " << g << "\n";
  return 0;
}
