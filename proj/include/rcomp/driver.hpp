#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "rcomp/balancer.hpp"
#include "rcomp/lf_graph.hpp"
#include "rcomp/text_model.hpp"
#include "rcomp/update_engine.hpp"

namespace rcomp {

enum class Backend { Plain, Grouped };

const char* to_string(Backend b);
Backend parse_backend(const std::string& name);

struct BuildStats {
  std::uint64_t n = 1;  // text length including the sentinel
  std::uint64_t r = 0;
  std::uint64_t k = 0;
  std::uint64_t k_slow = 0;
  std::uint64_t k_fast = 0;
  std::uint64_t k_split = 0;
  std::uint32_t alpha = kDefaultAlpha;
  Backend backend = Backend::Plain;
  // Tree inserts/erases performed on the fast path; expected to stay 0.
  std::uint64_t fast_tree_structural_ops = 0;
  std::uint64_t max_k = 1;

  bool operator==(const BuildStats&) const = default;
};

// Throws CorruptState naming the first stats bound that fails.
void check_stats(const BuildStats& s);

struct BuildOptions {
  std::uint32_t alpha = kDefaultAlpha;
  Backend backend = Backend::Plain;
  int group_size = 16;
  bool validate_steps = false;
};

struct BuildResult {
  Rlbwt rlbwt;
  BuildStats stats;
};

enum class StepPhase { AfterUpdate, AfterBalance };

template <class Store>
class RcompBuilderT {
 public:
  using Graph = LfIntervalGraph<Store>;
  using Observer = std::function<void(const Graph&, StepPhase, const UpdateOutcome&)>;

  explicit RcompBuilderT(std::uint32_t alpha = kDefaultAlpha, Store store = Store());

  void prepend(Symbol c);
  void prepend_byte(std::uint8_t b) { prepend(static_cast<Symbol>(b) + 1); }
  BuildResult finish() const;

  // Runs the validator around every step; failures throw CorruptState.
  void set_validate_steps(bool on) { validate_steps_ = on; }
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  const Graph& graph() const { return graph_; }
  const BuildStats& stats() const { return stats_; }
  const UpdateOutcome& last_outcome() const { return prev_; }

 private:
  Graph graph_;
  UpdateOutcome prev_;
  BuildStats stats_;
  bool validate_steps_ = false;
  Observer observer_;
};

using RcompBuilder = RcompBuilderT<PlainStore>;
using GroupedRcompBuilder = RcompBuilderT<GroupedStore>;

extern template class RcompBuilderT<PlainStore>;
extern template class RcompBuilderT<GroupedStore>;

BuildResult rcomp_build(const Bytes& bytes, const BuildOptions& opts = {});

}  // namespace rcomp
