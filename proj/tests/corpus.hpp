#pragma once

// Set models used by the typicality checks: everything set_models() finds at
// maxLen 24, plus synthesized models (cubes, prefixes of the length-lex order,
// and pseudo-random sets). Elements have length ≤ 6, at most 10 per set.

#include <random>
#include <vector>

#include "sophdepth/measures.hpp"

namespace corpus {

inline std::vector<sophdepth::SetModel> typicality_models() {
  using namespace sophdepth;
  std::vector<SetModel> out;
  for (const SetModel& m : *set_models(24, Budget::steps(10000))) {
    bool small = m.elements.size() <= 10;
    for (const auto& e : m.elements) small = small && e.size() <= 6;
    if (small) out.push_back(m);
  }
  for (std::size_t n = 0; n <= 3; ++n) {
    std::vector<BitString> cube;
    for_each_of_length(n, [&](const BitString& e) { cube.push_back(e); });
    out.push_back(synthesized_set_model(cube));
  }
  for (std::uint64_t k = 2; k <= 10; ++k) {
    std::vector<BitString> first;
    for (std::uint64_t i = 0; i < k; ++i) first.push_back(BitString::nth(i));
    out.push_back(synthesized_set_model(first));
  }
  std::mt19937 rng(20240611);
  for (int s = 0; s < 60; ++s) {
    const std::size_t size = 2 + rng() % 9;
    std::vector<BitString> elements;
    while (elements.size() < size) {
      const std::size_t len = rng() % 7;
      const BitString e = BitString::from_uint(rng() & ((1U << len) - 1), len);
      if (std::find(elements.begin(), elements.end(), e) == elements.end()) elements.push_back(e);
    }
    out.push_back(synthesized_set_model(elements));
  }
  return out;
}

}  // namespace corpus
