#include "rcomp/driver.hpp"

namespace rcomp {

const char* to_string(Backend b) { return b == Backend::Plain ? "plain" : "grouped"; }

Backend parse_backend(const std::string& name) {
  if (name == "plain") return Backend::Plain;
  if (name == "grouped") return Backend::Grouped;
  throw RcompError("unknown backend '" + name + "'");
}

void check_stats(const BuildStats& s) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw CorruptState(std::string("stats bound violated: ") + what);
  };
  need(s.k <= s.r + s.k_split, "k <= r + k_split");
  const std::uint64_t half = (s.alpha + 1) / 2;
  need(half > 7 && s.k_split * (half - 7) <= 2 * s.r, "k_split <= 2r/(ceil(alpha/2)-7)");
  need(s.k_slow <= s.r, "k_slow <= r");
  need(s.k_slow + s.k_fast == s.n - 1, "k_slow + k_fast = n - 1");
}

template <class Store>
RcompBuilderT<Store>::RcompBuilderT(std::uint32_t alpha, Store store) : graph_(alpha, std::move(store)) {
  stats_.alpha = alpha;
  stats_.backend = std::is_same_v<Store, GroupedStore> ? Backend::Grouped : Backend::Plain;
}

template <class Store>
void RcompBuilderT<Store>::prepend(Symbol c) {
  if (c == kSentinel) throw SentinelInput("the sentinel cannot be prepended");
  prev_ = dispatch(graph_, c, prev_);
  if (prev_.used_fast) {
    ++stats_.k_fast;
    stats_.fast_tree_structural_ops += prev_.tree_structural_ops;
  } else {
    ++stats_.k_slow;
  }
  if (observer_) observer_(graph_, StepPhase::AfterUpdate, prev_);
  if (validate_steps_) {
    auto rep = graph_.validate(nullptr, BalanceMode::PreBalance);
    if (!rep.ok()) throw CorruptState("after update: " + rep.summary());
  }
  stats_.k_split += balance(graph_);
  stats_.n = graph_.delta();
  stats_.max_k = std::max<std::uint64_t>(stats_.max_k, graph_.k());
  if (observer_) observer_(graph_, StepPhase::AfterBalance, prev_);
  if (validate_steps_) {
    auto rep = graph_.validate(nullptr, BalanceMode::Balanced);
    if (!rep.ok()) throw CorruptState("after balance: " + rep.summary());
  }
}

template <class Store>
BuildResult RcompBuilderT<Store>::finish() const {
  BuildResult res;
  res.rlbwt = graph_.to_rlbwt();
  res.stats = stats_;
  res.stats.n = graph_.delta();
  res.stats.r = res.rlbwt.r();
  res.stats.k = graph_.k();
  check_stats(res.stats);
  return res;
}

template class RcompBuilderT<PlainStore>;
template class RcompBuilderT<GroupedStore>;

namespace {
template <class Builder>
BuildResult run(Builder& b, const Bytes& bytes, bool validate) {
  b.set_validate_steps(validate);
  for (auto it = bytes.rbegin(); it != bytes.rend(); ++it) b.prepend_byte(*it);
  return b.finish();
}
}  // namespace

BuildResult rcomp_build(const Bytes& bytes, const BuildOptions& opts) {
  if (opts.backend == Backend::Grouped) {
    GroupedRcompBuilder b(opts.alpha, GroupedStore(opts.group_size));
    return run(b, bytes, opts.validate_steps);
  }
  RcompBuilder b(opts.alpha);
  return run(b, bytes, opts.validate_steps);
}

}  // namespace rcomp
