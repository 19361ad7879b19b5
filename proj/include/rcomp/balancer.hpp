#pragma once

#include <cstdint>

#include "rcomp/lf_graph.hpp"

namespace rcomp {

struct SplitPlan {
  Handle target_u = kNil;
  Handle target_v = kNil;
  std::uint64_t split_len = 0;
  int which_case = 0;  // 1: the repetition is heavy, 2: only the interval is
};

struct SplitResult {
  Handle u_left = kNil, u_right = kNil, v_left = kNil, v_right = kNil;
};

template <class Store>
SplitPlan select_split_offset(const LfIntervalGraph<Store>& g, Handle u, Handle v);

template <class Store>
SplitResult split_heavy(LfIntervalGraph<Store>& g, const SplitPlan& plan);

// Splits heavy nodes until both heavy arrays are empty; returns the number
// of splits.
template <class Store>
std::uint64_t balance(LfIntervalGraph<Store>& g);

}  // namespace rcomp
