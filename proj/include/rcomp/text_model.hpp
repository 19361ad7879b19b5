#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace rcomp {

// Internal alphabet: 0 is the sentinel, byte b is stored as b + 1.
using Symbol = std::uint32_t;
inline constexpr Symbol kSentinel = 0;

using SymbolText = std::vector<Symbol>;
using Bytes = std::vector<std::uint8_t>;

struct Run {
  Symbol symbol = 0;
  std::uint64_t length = 0;

  bool operator==(const Run&) const = default;
};

struct Rlbwt {
  std::vector<Run> runs;
  std::uint64_t total_len = 0;

  bool operator==(const Rlbwt&) const = default;
  std::size_t r() const { return runs.size(); }
};

Bytes to_bytes(std::string_view s);

SymbolText sentinelize(const Bytes& bytes);

Rlbwt run_length_encode(const std::vector<Symbol>& symbols);

// Expands runs back into a plain symbol sequence.
std::vector<Symbol> expand_runs(const Rlbwt& rlbwt);

// Throws MalformedRlbwt when the run list breaks maximality, sentinel or
// length bookkeeping.
void check_rlbwt(const Rlbwt& rlbwt);

Bytes invert_rlbwt(const Rlbwt& rlbwt);

// Debug rendering: sentinel as '$', other symbols as their byte value.
std::string render_symbols(const std::vector<Symbol>& symbols);
std::string render_runs(const Rlbwt& rlbwt);

}  // namespace rcomp
