#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "rcomp/errors.hpp"
#include "rcomp/grouped_store.hpp"
#include "rcomp/node_types.hpp"
#include "rcomp/order_maintenance.hpp"
#include "rcomp/plain_store.hpp"
#include "rcomp/text_model.hpp"
#include "rcomp/vtree.hpp"

namespace rcomp {

inline constexpr std::uint32_t kMinAlpha = 16;
inline constexpr std::uint32_t kDefaultAlpha = 16;

enum class TreeCondition : std::uint8_t {
  None,
  AdjacentDistinct,        // next node exists, is not the sentinel, other char
  DistinctAcrossSentinel,  // next is the sentinel, the one after has another char
  IsSentinel,              // the partner is the sentinel node
};

const char* to_string(TreeCondition c);

// What the validator expects of in-degrees and heavy arrays.
enum class BalanceMode {
  Balanced,    // between prepends: in-degree < alpha, heavy arrays empty
  PreBalance,  // right after an update: in-degree <= 2 alpha, <= 2 heavy per side
  Structural,  // only structure, edges and BWT content
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

template <class Store>
class LfIntervalGraph {
 public:
  // The single-sentinel graph of the text "$".
  explicit LfIntervalGraph(std::uint32_t alpha = kDefaultAlpha, Store store = Store());

  // Graph for an arbitrary division of a BWT into same-character blocks.
  static LfIntervalGraph from_dbwt(const std::vector<Symbol>& L, const std::vector<std::uint64_t>& lengths,
                                   std::uint32_t alpha = kDefaultAlpha, Store store = Store());

  LfIntervalGraph(LfIntervalGraph&&) noexcept = default;
  LfIntervalGraph& operator=(LfIntervalGraph&&) noexcept = default;

  std::uint32_t alpha() const { return alpha_; }
  std::uint64_t delta() const { return delta_; }
  void set_delta(std::uint64_t d) { delta_ = d; }
  std::size_t k() const { return store_.count(Side::U); }
  Handle sentinel_u() const { return sentinel_u_; }
  void set_sentinel_u(Handle h) { sentinel_u_ = h; }

  Store& store() { return store_; }
  const Store& store() const { return store_; }
  const OrderMaintenance& order() const { return order_; }
  const VTree& tree() const { return tree_; }

  Handle first(Side s) const { return store_.first(s); }
  Handle last(Side s) const { return store_.last(s); }
  Handle next(Side s, Handle h) const { return store_.next(s, h); }
  Handle prev(Side s, Handle h) const { return store_.prev(s, h); }
  const Label& label(Side s, Handle h) const { return store_.label(s, h); }
  Symbol ch(Side s, Handle h) const { return store_.label(s, h).ch; }
  std::uint64_t len(Side s, Handle h) const { return store_.label(s, h).len; }
  Handle partner(Side s, Handle h) const { return store_.partner(s, h); }
  bool live(Side s, Handle h) const { return h != kNil && store_.live(s, h); }
  Edge out_edge(Side s, Handle h) const { return store_.out_edge(s, h); }
  void set_out_edge(Side s, Handle h, Edge e) { store_.set_out_edge(s, h, e); }
  template <class F>
  void for_each_in_edge(Side s, Handle h, F&& f) const {
    store_.for_each_in_edge(s, h, std::forward<F>(f));
  }

  Handle insert_after(Side s, Handle anchor, Label label);
  Handle insert_before(Side s, Handle pos, Label label) {
    return insert_after(s, pos == kNil ? store_.last(s) : store_.prev(s, pos), label);
  }
  void erase(Side s, Handle h);
  void link_partners(Handle u, Handle v) {
    store_.set_partner(Side::U, u, v);
    store_.set_partner(Side::V, v, u);
  }

  void begin_batch(std::initializer_list<Pin> pins) { store_.begin_batch({pins.begin(), pins.size()}); }
  void begin_batch(const std::vector<Pin>& pins) { store_.begin_batch({pins.data(), pins.size()}); }
  void end_batch() { store_.end_batch(); }

  bool order_before(Handle a, Handle b) const { return order_.before(a, b); }

  TreeKey key_of(Handle v) const { return TreeKey{ch(Side::V, v), order_.tag(partner(Side::V, v))}; }
  Handle tree_pred(Handle u, Symbol c) const;
  bool tree_member(Handle v) const { return tree_.member(v); }
  void tree_insert(Handle v);
  void tree_erase(Handle v) { tree_.erase(v); }
  void tree_replace(Handle old_v, Handle new_v) { tree_.replace(old_v, new_v); }
  void tree_set_min(Handle v) { tree_.set_min(v); }
  TreeCondition satisfies_tree_condition(Handle v) const;

  void heavy_mark(Side s, Handle h);
  void heavy_unmark(Side s, Handle h);
  bool heavy_marked(Side s, Handle h) const {
    return h < heavy_pos_[idx(s)].size() && heavy_pos_[idx(s)][h] != kNil;
  }
  const std::vector<Handle>& heavy(Side s) const { return heavy_[idx(s)]; }
  bool is_heavy(Side s, Handle h) const;
  std::size_t in_degree(Side s, Handle h) const { return store_.in_degree(s, h); }

  std::vector<Symbol> bwt() const;
  Rlbwt to_rlbwt() const;
  std::vector<Label> labels(Side s) const;

  ValidationReport validate(const std::vector<Symbol>* expected_bwt = nullptr,
                            BalanceMode mode = BalanceMode::Balanced) const;

 private:
  struct Uninit {};
  LfIntervalGraph(Uninit, std::uint32_t alpha, Store store);

  Store store_;
  OrderMaintenance order_;
  VTree tree_;
  std::vector<Handle> heavy_[2];
  std::vector<Handle> heavy_pos_[2];
  Handle sentinel_u_ = kNil;
  std::uint32_t alpha_ = kDefaultAlpha;
  std::uint64_t delta_ = 0;
};

using PlainGraph = LfIntervalGraph<PlainStore>;
using GroupedGraph = LfIntervalGraph<GroupedStore>;

extern template class LfIntervalGraph<PlainStore>;
extern template class LfIntervalGraph<GroupedStore>;

}  // namespace rcomp
