#pragma once

#include <cstdint>

#include "rcomp/lf_graph.hpp"

namespace rcomp {

struct UpdateOutcome {
  bool used_fast = false;
  bool did_split = false;

  // Replacement of the old sentinel repetition and its interval.
  Handle u_new = kNil, v_new = kNil;
  // The new sentinel pair.
  Handle u_sentinel = kNil, v_sentinel = kNil;
  // Halves of the node split at the insertion point (did_split only).
  Handle u_left = kNil, u_right = kNil, v_left = kNil, v_right = kNil;
  // Node produced by merging around u_new (fast path only).
  Handle u_merged = kNil, v_merged = kNil;

  // Tree inserts and erases that needed a search or could rebalance.
  std::uint32_t tree_structural_ops = 0;
};

template <class Store>
bool takes_fast_path(const LfIntervalGraph<Store>& g, Symbol c);

template <class Store>
UpdateOutcome slow_update(LfIntervalGraph<Store>& g, Symbol c);

template <class Store>
UpdateOutcome fast_update(LfIntervalGraph<Store>& g, Symbol c, const UpdateOutcome& prev);

// One left extension by c. Leaves the graph (2 alpha + 1)-balanced with
// accurate heavy arrays.
template <class Store>
UpdateOutcome dispatch(LfIntervalGraph<Store>& g, Symbol c, const UpdateOutcome& prev);

}  // namespace rcomp
