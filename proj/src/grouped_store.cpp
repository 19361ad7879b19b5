#include "rcomp/grouped_store.hpp"

#include <string>

namespace rcomp {

GroupedStore::GroupedStore(int g) : g_(g) {
  if (g < 2 || g > kMaxGroup) throw RcompError("group size must lie in [2, 64]");
}

Handle GroupedStore::first(Side s) const {
  return head_[idx(s)] == kNil ? kNil : at(s, head_[idx(s)], 0);
}

Handle GroupedStore::last(Side s) const {
  std::uint32_t t = tail_[idx(s)];
  return t == kNil ? kNil : at(s, t, groups_[idx(s)][t].n - 1);
}

Handle GroupedStore::next(Side s, Handle h) const {
  const NodeId id = ids_[idx(s)][h];
  const Group& G = groups_[idx(s)][id.group];
  int pos = G.lookup[id.local];
  if (pos + 1 < G.n) return G.slots[G.order[pos + 1]].self;
  return G.next == kNil ? kNil : at(s, G.next, 0);
}

Handle GroupedStore::prev(Side s, Handle h) const {
  const NodeId id = ids_[idx(s)][h];
  const Group& G = groups_[idx(s)][id.group];
  int pos = G.lookup[id.local];
  if (pos > 0) return G.slots[G.order[pos - 1]].self;
  return G.prev == kNil ? kNil : at(s, G.prev, groups_[idx(s)][G.prev].n - 1);
}

Edge GroupedStore::resolve(Side s, Handle h) const {
  const NodeId id = ids_[idx(s)][h];
  const Group& G = groups_[idx(s)][id.group];
  int pos = G.lookup[id.local];
  Edge e = G.head_edge;
  for (int p = 0; p < pos; ++p) e.offset += G.slots[G.order[p]].label.len;
  const Side o = opposite(s);
  while (e.target != kNil && e.offset >= label(o, e.target).len) {
    e.offset -= label(o, e.target).len;
    e.target = next(o, e.target);
  }
  RCOMP_CHECK(e.target != kNil, "grouped store: out-edge walk ran off the list");
  return e;
}

Edge GroupedStore::out_edge(Side s, Handle h) const {
  if (in_batch_) {
    auto it = overlay_[idx(s)].find(h);
    if (it != overlay_[idx(s)].end()) return it->second;
  }
  if (position(s, h) == 0) return groups_[idx(s)][ids_[idx(s)][h].group].head_edge;
  return resolve(s, h);
}

void GroupedStore::set_out_edge(Side s, Handle h, Edge e) {
  if (in_batch_) {
    overlay_[idx(s)][h] = e;
    return;
  }
  // Outside a batch only head slots hold storage; other slots are implied.
  if (position(s, h) == 0) groups_[idx(s)][ids_[idx(s)][h].group].head_edge = e;
}

std::uint32_t GroupedStore::new_group(Side s, std::uint32_t after) {
  auto& groups = groups_[idx(s)];
  std::uint32_t gi;
  if (!free_groups_[idx(s)].empty()) {
    gi = free_groups_[idx(s)].back();
    free_groups_[idx(s)].pop_back();
  } else {
    gi = static_cast<std::uint32_t>(groups.size());
    groups.emplace_back();
  }
  Group& G = groups[gi];
  G.slots.assign(g_, SlotRecord{});
  G.order.assign(g_, 0);
  G.lookup.assign(g_, 0);
  G.free_locals = g_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g_) - 1);
  G.n = 0;
  G.head_edge = Edge{};
  G.live = true;
  std::uint32_t nx = after == kNil ? head_[idx(s)] : groups[after].next;
  G.prev = after;
  G.next = nx;
  if (after == kNil) head_[idx(s)] = gi; else groups[after].next = gi;
  if (nx == kNil) tail_[idx(s)] = gi; else groups[nx].prev = gi;
  ++group_count_[idx(s)];
  if (materialized_[idx(s)].size() < groups.size()) materialized_[idx(s)].resize(groups.size(), 0);
  // A group born inside a batch is covered by the overlay from the start.
  if (in_batch_ && !materialized_[idx(s)][gi]) {
    materialized_[idx(s)][gi] = 1;
    materialized_list_[idx(s)].push_back(gi);
  }
  return gi;
}

void GroupedStore::place(Side s, std::uint32_t gi, int pos, const SlotRecord& rec) {
  Group& G = groups_[idx(s)][gi];
  int local = __builtin_ctzll(G.free_locals);
  G.free_locals &= G.free_locals - 1;
  G.slots[local] = rec;
  for (int p = G.n; p > pos; --p) {
    G.order[p] = G.order[p - 1];
    G.lookup[G.order[p]] = static_cast<std::uint8_t>(p);
  }
  G.order[pos] = static_cast<std::uint8_t>(local);
  G.lookup[local] = static_cast<std::uint8_t>(pos);
  ++G.n;
  ids_[idx(s)][rec.self] = NodeId{gi, static_cast<std::uint8_t>(local)};
}

std::uint32_t GroupedStore::split_group(Side s, std::uint32_t gi) {
  std::uint32_t hi = new_group(s, gi);
  Group& G = groups_[idx(s)][gi];
  int keep = (G.n + 1) / 2;
  int moved = 0;
  for (int p = keep; p < G.n; ++p) {
    int local = G.order[p];
    SlotRecord rec = G.slots[local];
    G.free_locals |= std::uint64_t{1} << local;
    place(s, hi, moved++, rec);
  }
  G.n = keep;
  return hi;
}

void GroupedStore::require_batch_group(Side s, std::uint32_t gi) const {
  RCOMP_CHECK(in_batch_, "grouped store: structural change outside a batch");
  RCOMP_CHECK(gi < materialized_[idx(s)].size() && materialized_[idx(s)][gi],
              "grouped store: reshaping a group that was not pinned");
}

Handle GroupedStore::insert_after(Side s, Handle anchor, Label label) {
  auto& ids = ids_[idx(s)];
  Handle h;
  if (!free_handles_[idx(s)].empty()) {
    h = free_handles_[idx(s)].back();
    free_handles_[idx(s)].pop_back();
  } else {
    h = static_cast<Handle>(ids.size());
    ids.emplace_back();
  }
  SlotRecord rec{label, kNil, h};

  std::uint32_t gi;
  int pos;
  if (head_[idx(s)] == kNil) {
    RCOMP_CHECK(in_batch_, "grouped store: structural change outside a batch");
    gi = new_group(s, kNil);
    pos = 0;
  } else if (anchor == kNil) {
    gi = head_[idx(s)];
    pos = 0;
  } else {
    gi = ids[anchor].group;
    pos = position(s, anchor) + 1;
  }
  require_batch_group(s, gi);
  if (groups_[idx(s)][gi].n == g_) {
    std::uint32_t hi = split_group(s, gi);
    int keep = groups_[idx(s)][gi].n;
    if (pos > keep) {
      gi = hi;
      pos -= keep;
    }
  }
  place(s, gi, pos, rec);
  ++count_[idx(s)];
  return h;
}

void GroupedStore::erase(Side s, Handle h) {
  const NodeId id = ids_[idx(s)][h];
  require_batch_group(s, id.group);
  auto& groups = groups_[idx(s)];
  Group& G = groups[id.group];
  int pos = G.lookup[id.local];
  for (int p = pos; p + 1 < G.n; ++p) {
    G.order[p] = G.order[p + 1];
    G.lookup[G.order[p]] = static_cast<std::uint8_t>(p);
  }
  --G.n;
  G.free_locals |= std::uint64_t{1} << id.local;
  if (G.n == 0) {
    if (G.prev == kNil) head_[idx(s)] = G.next; else groups[G.prev].next = G.next;
    if (G.next == kNil) tail_[idx(s)] = G.prev; else groups[G.next].prev = G.prev;
    G.live = false;
    free_groups_[idx(s)].push_back(id.group);
    --group_count_[idx(s)];
  }
  ids_[idx(s)][h] = NodeId{};
  parked_[idx(s)].push_back(h);
  overlay_[idx(s)].erase(h);
  --count_[idx(s)];
}

void GroupedStore::materialize(Side s, std::uint32_t gi) {
  auto& mark = materialized_[idx(s)];
  if (mark.size() < groups_[idx(s)].size()) mark.resize(groups_[idx(s)].size(), 0);
  if (mark[gi]) return;
  mark[gi] = 1;
  materialized_list_[idx(s)].push_back(gi);
  const Group& G = groups_[idx(s)][gi];
  for (int p = 0; p < G.n; ++p) {
    Handle h = G.slots[G.order[p]].self;
    overlay_[idx(s)].emplace(h, p == 0 ? G.head_edge : resolve(s, h));
  }
}

void GroupedStore::begin_batch(std::span<const Pin> pins) {
  RCOMP_CHECK(!in_batch_, "grouped store: nested batch");
  for (const Pin& pin : pins) {
    if (pin.h == kNil || !live(pin.side, pin.h)) continue;
    materialize(pin.side, ids_[idx(pin.side)][pin.h].group);
  }
  in_batch_ = true;
}

void GroupedStore::end_batch() {
  RCOMP_CHECK(in_batch_, "grouped store: end without begin");
  for (int si = 0; si < 2; ++si) {
    const Side s = static_cast<Side>(si);
    auto& groups = groups_[si];
    for (auto& [h, e] : overlay_[si]) {
      if (position(s, h) == 0) groups[ids_[si][h].group].head_edge = e;
    }
    for (std::uint32_t gi : materialized_list_[si]) {
      if (!groups[gi].live || groups[gi].n == 0) continue;
      Handle head = at(s, gi, 0);
      RCOMP_CHECK(overlay_[si].count(head), "grouped store: group head left without an edge");
    }
  }
  in_batch_ = false;
  if (verify_batches_) {
    for (int si = 0; si < 2; ++si) {
      const Side s = static_cast<Side>(si);
      for (auto& [h, e] : overlay_[si]) {
        Edge got = out_edge(s, h);
        if (!(got == e))
          throw CorruptState("grouped store: derived edge of handle " + std::to_string(h) +
                             " disagrees with the engine's edge");
      }
    }
  }
  for (int si = 0; si < 2; ++si) {
    overlay_[si].clear();
    for (std::uint32_t gi : materialized_list_[si]) materialized_[si][gi] = 0;
    materialized_list_[si].clear();
    for (Handle h : parked_[si]) free_handles_[si].push_back(h);
    parked_[si].clear();
  }
}

}  // namespace rcomp
