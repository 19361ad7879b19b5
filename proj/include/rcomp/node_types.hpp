#pragma once

#include <cstdint>
#include <limits>

#include "rcomp/text_model.hpp"

namespace rcomp {

// U holds the DBWT repetitions in BWT order, V holds their F-intervals in
// F order.
enum class Side : std::uint8_t { U = 0, V = 1 };

constexpr Side opposite(Side s) { return s == Side::U ? Side::V : Side::U; }
constexpr int idx(Side s) { return static_cast<int>(s); }

using Handle = std::uint32_t;
inline constexpr Handle kNil = std::numeric_limits<Handle>::max();

struct Label {
  Symbol ch = 0;
  std::uint64_t len = 0;

  bool operator==(const Label&) const = default;
};

// A covering edge. For a U node it points at the V node whose F-interval
// contains the start of the repetition; for a V node it points at the U node
// whose repetition contains the start of the interval. The offset is the
// distance from the target's start.
struct Edge {
  Handle target = kNil;
  std::uint64_t offset = 0;

  bool operator==(const Edge&) const = default;
};

struct Pin {
  Side side;
  Handle h;
};

}  // namespace rcomp
