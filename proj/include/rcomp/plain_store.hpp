#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rcomp/errors.hpp"
#include "rcomp/node_types.hpp"

namespace rcomp {

// Slot arena holding both node families. Every node stores its list links,
// partner, out-edge and the head of an intrusive list of incoming edges.
// The out-edge record doubles as the membership cell in the target's
// incoming list, so re-aiming an edge is two O(1) splices.
//
// Erased slots stay parked until end_batch(): the engine erases nodes
// before it has re-aimed the edges that still point at them.
class PlainStore {
 public:
  struct NodeRecord {
    Label label;
    Handle prev = kNil, next = kNil;
    Handle partner = kNil;
    Edge out;
    Handle in_prev = kNil, in_next = kNil;  // links among sources of out.target
    Handle in_head = kNil;
    std::uint32_t in_count = 0;
    std::uint32_t generation = 0;
    bool live = false;
  };

  static constexpr const char* kName = "plain";

  Handle first(Side s) const { return lists_[idx(s)].head; }
  Handle last(Side s) const { return lists_[idx(s)].tail; }
  Handle next(Side s, Handle h) const { return rec(s, h).next; }
  Handle prev(Side s, Handle h) const { return rec(s, h).prev; }
  std::size_t count(Side s) const { return lists_[idx(s)].count; }
  std::size_t capacity(Side s) const { return nodes_[idx(s)].size(); }
  bool live(Side s, Handle h) const { return h < nodes_[idx(s)].size() && nodes_[idx(s)][h].live; }
  std::uint32_t generation(Side s, Handle h) const { return rec(s, h).generation; }

  const Label& label(Side s, Handle h) const { return rec(s, h).label; }
  Handle partner(Side s, Handle h) const { return rec(s, h).partner; }
  void set_partner(Side s, Handle h, Handle p) { rec(s, h).partner = p; }

  Edge out_edge(Side s, Handle h) const { return rec(s, h).out; }
  void set_out_edge(Side s, Handle h, Edge e);

  // Calls f(source, offset) for every opposite-side node whose out-edge
  // targets h. Returning false from f stops the scan.
  template <class F>
  void for_each_in_edge(Side s, Handle h, F&& f) const {
    const Side o = opposite(s);
    for (Handle x = rec(s, h).in_head; x != kNil;) {
      const auto& r = rec(o, x);
      Handle nx = r.in_next;
      if (!f(x, r.out.offset)) return;
      x = nx;
    }
  }
  std::size_t in_degree(Side s, Handle h) const { return rec(s, h).in_count; }

  Handle insert_after(Side s, Handle anchor, Label label);  // anchor kNil: front
  void erase(Side s, Handle h);

  void begin_batch(std::span<const Pin>) { in_batch_ = true; }
  void end_batch();

 private:
  struct ListHead {
    Handle head = kNil, tail = kNil;
    std::size_t count = 0;
  };

  NodeRecord& rec(Side s, Handle h) { return nodes_[idx(s)][h]; }
  const NodeRecord& rec(Side s, Handle h) const { return nodes_[idx(s)][h]; }
  void unlink_in(Side s, Handle h);

  std::vector<NodeRecord> nodes_[2];
  std::vector<Handle> free_[2];
  std::vector<Handle> parked_[2];
  ListHead lists_[2];
  bool in_batch_ = false;
};

}  // namespace rcomp
