#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "rcomp/errors.hpp"
#include "rcomp/node_types.hpp"

namespace rcomp {

// Node storage packed into groups of at most g consecutive list nodes.
// Slot records carry only the label, the partner and the node's own handle;
// list order comes from the slot order inside a group plus group links, and
// only the first slot of a group stores an out-edge. Other out-edges are
// recovered by walking the opposite list from the group's head edge, and
// incoming edges are recovered the same way from the node's own out-edge.
//
// Structural changes happen inside a batch. begin_batch() receives the nodes
// whose groups will be reshaped and caches every out-edge in those groups
// while the graph is still consistent; edges written during the batch go to
// the same overlay, and end_batch() moves them into the head slots.
class GroupedStore {
 public:
  static constexpr int kMaxGroup = 64;
  static constexpr const char* kName = "grouped";

  struct SlotRecord {
    Label label;
    Handle partner = kNil;
    Handle self = kNil;
  };

  struct NodeId {
    std::uint32_t group = kNil;
    std::uint8_t local = 0;
  };

  explicit GroupedStore(int g = 16);

  Handle first(Side s) const;
  Handle last(Side s) const;
  Handle next(Side s, Handle h) const;
  Handle prev(Side s, Handle h) const;
  std::size_t count(Side s) const { return count_[idx(s)]; }
  std::size_t capacity(Side s) const { return ids_[idx(s)].size(); }
  bool live(Side s, Handle h) const { return h < ids_[idx(s)].size() && ids_[idx(s)][h].group != kNil; }

  const Label& label(Side s, Handle h) const { return slot(s, h).label; }
  Handle partner(Side s, Handle h) const { return slot(s, h).partner; }
  void set_partner(Side s, Handle h, Handle p) { slot(s, h).partner = p; }

  Edge out_edge(Side s, Handle h) const;
  void set_out_edge(Side s, Handle h, Edge e);

  template <class F>
  void for_each_in_edge(Side s, Handle h, F&& f) const {
    const Side o = opposite(s);
    const std::uint64_t len = label(s, h).len;
    Edge e = out_edge(s, h);
    Handle x = e.target;
    std::uint64_t pos = 0;
    if (e.offset == 0) {
      if (!f(x, std::uint64_t{0})) return;
      pos = label(o, x).len;
    } else {
      pos = label(o, x).len - e.offset;
    }
    for (x = next(o, x); x != kNil && pos < len; x = next(o, x)) {
      if (!f(x, pos)) return;
      pos += label(o, x).len;
    }
  }
  std::size_t in_degree(Side s, Handle h) const {
    std::size_t d = 0;
    for_each_in_edge(s, h, [&](Handle, std::uint64_t) { ++d; return true; });
    return d;
  }

  Handle insert_after(Side s, Handle anchor, Label label);
  void erase(Side s, Handle h);

  void begin_batch(std::span<const Pin> pins);
  void end_batch();

  // Recompute every overlay edge from the committed heads at end_batch()
  // and fail loudly on disagreement.
  void set_verify_batches(bool on) { verify_batches_ = on; }

  int group_size() const { return g_; }
  std::size_t group_count(Side s) const { return group_count_[idx(s)]; }
  NodeId node_id(Side s, Handle h) const { return ids_[idx(s)][h]; }
  // Head edge of the group holding h, as stored.
  Edge head_edge_of(Side s, Handle h) const { return groups_[idx(s)][ids_[idx(s)][h].group].head_edge; }
  bool is_group_head(Side s, Handle h) const { return position(s, h) == 0; }

 private:
  struct Group {
    std::vector<SlotRecord> slots;       // indexed by local id
    std::vector<std::uint8_t> order;     // position -> local id
    std::vector<std::uint8_t> lookup;    // local id -> position
    std::uint64_t free_locals = 0;
    int n = 0;
    Edge head_edge;
    std::uint32_t prev = kNil, next = kNil;
    bool live = false;
  };

  const SlotRecord& slot(Side s, Handle h) const {
    const NodeId id = ids_[idx(s)][h];
    return groups_[idx(s)][id.group].slots[id.local];
  }
  SlotRecord& slot(Side s, Handle h) {
    const NodeId id = ids_[idx(s)][h];
    return groups_[idx(s)][id.group].slots[id.local];
  }
  int position(Side s, Handle h) const {
    const NodeId id = ids_[idx(s)][h];
    return groups_[idx(s)][id.group].lookup[id.local];
  }
  Handle at(Side s, std::uint32_t group, int pos) const {
    const Group& G = groups_[idx(s)][group];
    return G.slots[G.order[pos]].self;
  }

  Edge resolve(Side s, Handle h) const;
  std::uint32_t new_group(Side s, std::uint32_t after);
  void place(Side s, std::uint32_t group, int pos, const SlotRecord& rec);
  std::uint32_t split_group(Side s, std::uint32_t group);
  void materialize(Side s, std::uint32_t group);
  void require_batch_group(Side s, std::uint32_t group) const;

  int g_;
  std::vector<Group> groups_[2];
  std::vector<std::uint32_t> free_groups_[2];
  std::uint32_t head_[2] = {kNil, kNil}, tail_[2] = {kNil, kNil};
  std::size_t count_[2] = {0, 0};
  std::size_t group_count_[2] = {0, 0};
  std::vector<NodeId> ids_[2];
  std::vector<Handle> free_handles_[2];
  std::vector<Handle> parked_[2];

  bool in_batch_ = false;
  bool verify_batches_ = false;
  std::unordered_map<Handle, Edge> overlay_[2];
  std::vector<std::uint8_t> materialized_[2];  // per group, batch-local
  std::vector<std::uint32_t> materialized_list_[2];
};

}  // namespace rcomp
