#include "rcomp/update_engine.hpp"

#include <vector>

namespace rcomp {

namespace {

struct Fix {
  Handle src;
  Edge old;
};

// Advance along list s from h until offset falls inside a node.
template <class Store>
Edge walk(const LfIntervalGraph<Store>& g, Side s, Edge e) {
  while (e.offset >= g.len(s, e.target)) {
    e.offset -= g.len(s, e.target);
    e.target = g.next(s, e.target);
    RCOMP_CHECK(e.target != kNil, "walk ran off the list");
  }
  return e;
}

template <class Store>
void collect_in(const LfIntervalGraph<Store>& g, Side s, Handle target, Handle skip1, Handle skip2,
                std::vector<Fix>& dst) {
  g.for_each_in_edge(s, target, [&](Handle x, std::uint64_t off) {
    if (x != skip1 && x != skip2) dst.push_back({x, Edge{target, off}});
    return true;
  });
}

template <class Store>
void reconcile(LfIntervalGraph<Store>& g, Handle v, UpdateOutcome& out) {
  if (!g.live(Side::V, v)) return;
  const auto cond = g.satisfies_tree_condition(v);
  const bool member = g.tree_member(v);
  if (cond == TreeCondition::IsSentinel) {
    if (g.tree().min_slot() != v) g.tree_set_min(v);
    return;
  }
  if (cond != TreeCondition::None && !member) {
    g.tree_insert(v);
    ++out.tree_structural_ops;
  } else if (cond == TreeCondition::None && member) {
    g.tree_erase(v);
    ++out.tree_structural_ops;
  }
}

template <class Store>
void mark_if_heavy(LfIntervalGraph<Store>& g, Side s, Handle h) {
  if (g.live(s, h) && !g.heavy_marked(s, h) && g.is_heavy(s, h)) g.heavy_mark(s, h);
}

// Replace, split and insert steps plus edge re-aiming, shared by both
// paths. v_g is the node after which the replacement interval goes.
struct Erased {
  Handle vi = kNil, vj = kNil;
};

template <class Store>
Erased basic_update(LfIntervalGraph<Store>& g, Symbol c, Handle vg, UpdateOutcome& out) {
  constexpr Side U = Side::U, V = Side::V;
  const Handle ui = g.sentinel_u();
  const Handle vi = g.partner(U, ui);
  const Handle vgnext = g.next(V, vg);
  RCOMP_CHECK(vgnext != vi, "insertion point precedes the sentinel interval");

  bool split = false;
  Handle uj = kNil, vj = kNil, ux = kNil;
  std::uint64_t lj = 0;
  if (vgnext != kNil) {
    Edge e = g.out_edge(V, vgnext);
    ux = e.target;
    if (e.offset > 0) {
      split = true;
      uj = ux;
      vj = g.partner(U, uj);
      lj = e.offset;
      RCOMP_CHECK(uj != ui, "split target is the sentinel repetition");
    }
  }

  // Everything below is read before the first mutation.
  std::vector<Fix> fix_u, fix_v;
  collect_in(g, V, vi, ui, uj, fix_u);
  collect_in(g, U, ui, vi, vj, fix_v);
  const Edge out_ui = g.out_edge(U, ui);
  const Edge out_vi = g.out_edge(V, vi);
  Edge out_uj, out_vj, mu;
  if (split) {
    collect_in(g, V, vj, ui, uj, fix_u);
    collect_in(g, U, uj, vi, vj, fix_v);
    out_uj = g.out_edge(U, uj);
    out_vj = g.out_edge(V, vj);
    // Start of the right half of v_j, located in the old U list.
    mu = walk(g, U, Edge{out_vj.target, out_vj.offset + lj});
  }

  std::vector<Pin> pins = {{U, ui}, {V, vi}, {V, vg}, {V, g.first(V)}, {U, g.last(U)}};
  if (split) {
    pins.push_back({U, uj});
    pins.push_back({V, vj});
  } else if (ux != kNil) {
    pins.push_back({U, ux});
    pins.push_back({U, g.prev(U, ux)});
  }
  g.begin_batch(pins);

  const Handle ui2 = g.insert_after(U, ui, Label{c, 1});
  g.erase(U, ui);
  Handle uj1 = kNil, uj2 = kNil, vj1 = kNil, vj2 = kNil;
  if (split) {
    const Symbol cj = g.ch(U, uj);
    const std::uint64_t len_j = g.len(U, uj);
    uj1 = g.insert_after(U, uj, Label{cj, lj});
    uj2 = g.insert_after(U, uj1, Label{cj, len_j - lj});
    g.erase(U, uj);
    vj1 = g.insert_after(V, vj, Label{cj, lj});
    vj2 = g.insert_after(V, vj1, Label{cj, len_j - lj});
    g.erase(V, vj);
  }
  Handle ux2;
  if (split) ux2 = g.insert_after(U, uj1, Label{kSentinel, 1});
  else if (vgnext == kNil) ux2 = g.insert_after(U, g.last(U), Label{kSentinel, 1});
  else ux2 = g.insert_before(U, ux == ui ? ui2 : ux, Label{kSentinel, 1});

  const Handle vx2 = g.insert_after(V, kNil, Label{kSentinel, 1});
  const Handle vi2 = g.insert_after(V, vg == vj ? vj2 : vg, Label{c, 1});
  g.erase(V, vi);

  g.link_partners(ui2, vi2);
  g.link_partners(ux2, vx2);
  if (split) {
    g.link_partners(uj1, vj1);
    g.link_partners(uj2, vj2);
  }
  g.set_sentinel_u(ux2);
  g.set_delta(g.delta() + 1);

  auto map_v = [&](Edge e) -> Edge {
    if (e.target == vi) return Edge{vx2, 0};
    if (split && e.target == vj) return e.offset < lj ? Edge{vj1, e.offset} : Edge{vj2, e.offset - lj};
    return e;
  };
  auto map_u = [&](Edge e) -> Edge {
    if (e.target == ui) return Edge{ui2, 0};
    if (split && e.target == uj) return e.offset < lj ? Edge{uj1, e.offset} : Edge{uj2, e.offset - lj};
    return e;
  };

  for (const Fix& f : fix_u) g.set_out_edge(U, f.src, map_v(f.old));
  for (const Fix& f : fix_v) g.set_out_edge(V, f.src, map_u(f.old));
  g.set_out_edge(U, ui2, map_v(out_ui));
  g.set_out_edge(U, ux2, Edge{vi2, 0});
  g.set_out_edge(V, vi2, Edge{ux2, 0});
  g.set_out_edge(V, vx2, map_u(out_vi));
  if (split) {
    g.set_out_edge(U, uj1, map_v(out_uj));
    g.set_out_edge(U, uj2, map_v(Edge{vgnext, 0}));
    g.set_out_edge(V, vj1, map_u(out_vj));
    g.set_out_edge(V, vj2, map_u(mu));
  }
  g.end_batch();

  out.did_split = split;
  out.u_new = ui2;
  out.v_new = vi2;
  out.u_sentinel = ux2;
  out.v_sentinel = vx2;
  out.u_left = uj1;
  out.u_right = uj2;
  out.v_left = vj1;
  out.v_right = vj2;
  return Erased{vi, vj};
}

// Merge adjacent same-character repetitions a, b (and their adjacent
// intervals) into one node pair. Returns the merged U node.
template <class Store>
Handle merge_pair(LfIntervalGraph<Store>& g, Handle a, Handle b, UpdateOutcome& out) {
  constexpr Side U = Side::U, V = Side::V;
  const Handle va = g.partner(U, a), vb = g.partner(U, b);
  RCOMP_CHECK(g.next(U, a) == b && g.next(V, va) == vb, "merge of non-adjacent nodes");
  RCOMP_CHECK(g.ch(U, a) == g.ch(U, b), "merge of different characters");
  const std::uint64_t la = g.len(U, a);
  const Label merged{g.ch(U, a), la + g.len(U, b)};

  std::vector<Fix> fix_u, fix_v;
  collect_in(g, V, va, a, b, fix_u);
  collect_in(g, V, vb, a, b, fix_u);
  collect_in(g, U, a, va, vb, fix_v);
  collect_in(g, U, b, va, vb, fix_v);
  const Edge out_a = g.out_edge(U, a);
  const Edge out_va = g.out_edge(V, va);

  g.begin_batch({{U, a}, {U, b}, {V, va}, {V, vb}});
  const Handle y = g.insert_after(U, b, merged);
  g.erase(U, a);
  g.erase(U, b);
  const Handle vy = g.insert_after(V, vb, merged);
  g.erase(V, va);
  g.erase(V, vb);
  g.link_partners(y, vy);

  auto map_v = [&](Edge e) -> Edge {
    if (e.target == va) return Edge{vy, e.offset};
    if (e.target == vb) return Edge{vy, e.offset + la};
    return e;
  };
  auto map_u = [&](Edge e) -> Edge {
    if (e.target == a) return Edge{y, e.offset};
    if (e.target == b) return Edge{y, e.offset + la};
    return e;
  };
  for (const Fix& f : fix_u) g.set_out_edge(U, f.src, map_v(f.old));
  for (const Fix& f : fix_v) g.set_out_edge(V, f.src, map_u(f.old));
  g.set_out_edge(U, y, map_v(out_a));
  g.set_out_edge(V, vy, map_u(out_va));
  g.end_batch();

  // The merged pair takes over the tree slot of whichever half held one.
  if (g.tree_member(va)) g.tree_replace(va, vy);
  if (g.tree_member(vb)) {
    if (g.tree_member(vy)) {
      g.tree_erase(vb);
      ++out.tree_structural_ops;
    } else {
      g.tree_replace(vb, vy);
    }
  }
  return y;
}

}  // namespace

template <class Store>
bool takes_fast_path(const LfIntervalGraph<Store>& g, Symbol c) {
  const Handle ui = g.sentinel_u();
  const Handle up = g.prev(Side::U, ui), un = g.next(Side::U, ui);
  return (up != kNil && g.ch(Side::U, up) == c) || (un != kNil && g.ch(Side::U, un) == c);
}

template <class Store>
UpdateOutcome slow_update(LfIntervalGraph<Store>& g, Symbol c) {
  constexpr Side U = Side::U, V = Side::V;
  UpdateOutcome out;
  const Handle ui = g.sentinel_u();
  const Handle up = g.prev(U, ui);
  const Handle v_before = up == kNil ? kNil : g.partner(U, up);
  const Handle vg = g.tree_pred(ui, c);
  RCOMP_CHECK(vg != kNil, "tree predecessor missing");

  const Erased gone = basic_update(g, c, vg, out);

  // Dead members leave first: inserts below compare keys.
  g.tree_set_min(out.v_sentinel);
  if (gone.vj != kNil && g.tree_member(gone.vj)) {
    if (g.satisfies_tree_condition(out.v_right) != TreeCondition::None) {
      g.tree_replace(gone.vj, out.v_right);
    } else {
      g.tree_erase(gone.vj);
      ++out.tree_structural_ops;
    }
  }
  reconcile(g, v_before, out);
  reconcile(g, out.v_new, out);
  if (out.did_split) reconcile(g, out.v_right, out);

  if (out.did_split) {
    mark_if_heavy(g, V, g.out_edge(U, out.u_right).target);
    mark_if_heavy(g, U, g.out_edge(V, out.v_right).target);
  }
  return out;
}

template <class Store>
UpdateOutcome fast_update(LfIntervalGraph<Store>& g, Symbol c, const UpdateOutcome& prev) {
  constexpr Side U = Side::U, V = Side::V;
  UpdateOutcome out;
  out.used_fast = true;
  const Handle ui = g.sentinel_u();
  const Handle up = g.prev(U, ui), un = g.next(U, ui);
  Handle vg;
  if (up != kNil && g.ch(U, up) == c) {
    vg = g.partner(U, up);
  } else {
    RCOMP_CHECK(un != kNil && g.ch(U, un) == c, "fast path without a neighbour carrying c");
    vg = g.prev(V, g.partner(U, un));
    RCOMP_CHECK(vg != kNil, "fast path insertion point missing");
  }

  const Erased gone = basic_update(g, c, vg, out);
  g.tree_set_min(out.v_sentinel);
  if (gone.vj != kNil && g.tree_member(gone.vj)) g.tree_replace(gone.vj, out.v_right);

  Handle y = out.u_new;
  const Handle a = g.prev(U, y), b = g.next(U, y);
  const bool left = a != kNil && g.ch(U, a) == c;
  const bool right = b != kNil && g.ch(U, b) == c;
  RCOMP_CHECK(left || right, "no neighbour of the new repetition carries c");
  if (left && right && prev.did_split) {
    y = merge_pair(g, a, y, out);
    y = merge_pair(g, y, b, out);
  } else if (left) {
    y = merge_pair(g, a, y, out);
  } else {
    y = merge_pair(g, y, b, out);
  }
  const Handle vy = g.partner(U, y);
  out.u_merged = y;
  out.v_merged = vy;

  // The replacements above should already leave every candidate right;
  // anything reconcile still has to do is counted as structural.
  if (out.did_split) reconcile(g, out.v_right, out);
  reconcile(g, vy, out);
  if (Handle p = g.prev(U, y); p != kNil) reconcile(g, g.partner(U, p), out);
  if (Handle n = g.next(U, y); n != kNil) reconcile(g, g.partner(U, n), out);

  if (out.did_split) {
    if (g.live(U, out.u_right)) mark_if_heavy(g, V, g.out_edge(U, out.u_right).target);
    if (g.live(V, out.v_right)) mark_if_heavy(g, U, g.out_edge(V, out.v_right).target);
  }
  mark_if_heavy(g, U, y);
  mark_if_heavy(g, V, vy);
  mark_if_heavy(g, V, g.out_edge(U, y).target);
  mark_if_heavy(g, U, g.out_edge(V, vy).target);
  return out;
}

template <class Store>
UpdateOutcome dispatch(LfIntervalGraph<Store>& g, Symbol c, const UpdateOutcome& prev) {
  if (c == kSentinel) throw SentinelInput("the sentinel cannot be prepended");
  return takes_fast_path(g, c) ? fast_update(g, c, prev) : slow_update(g, c);
}

}  // namespace rcomp

#define RCOMP_INSTANTIATE(S)                                                        \
  template bool takes_fast_path<S>(const LfIntervalGraph<S>&, Symbol);              \
  template UpdateOutcome slow_update<S>(LfIntervalGraph<S>&, Symbol);               \
  template UpdateOutcome fast_update<S>(LfIntervalGraph<S>&, Symbol, const UpdateOutcome&); \
  template UpdateOutcome dispatch<S>(LfIntervalGraph<S>&, Symbol, const UpdateOutcome&);

namespace rcomp {
RCOMP_INSTANTIATE(PlainStore)
RCOMP_INSTANTIATE(GroupedStore)
}  // namespace rcomp
