#pragma once

#include <cstdint>
#include <vector>

#include "rcomp/text_model.hpp"

namespace rcomp::oracle {

// Suffix start positions (0-based) in lexicographic order.
std::vector<std::uint64_t> suffix_order(const SymbolText& text);

std::vector<Symbol> bwt_naive(const SymbolText& text);

// 1-based LF map; result[0] is unused and set to 0.
std::vector<std::uint64_t> lf_naive(const std::vector<Symbol>& L);

struct Extension {
  std::vector<Symbol> bwt;
  std::uint64_t rep = 0;  // 1-based position of the sentinel in the input
  std::uint64_t ins = 0;  // 1-based position of the sentinel in the output
};

Extension extend_bwt_naive(const std::vector<Symbol>& L, Symbol c);

}  // namespace rcomp::oracle
