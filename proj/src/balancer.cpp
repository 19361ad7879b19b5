#include "rcomp/balancer.hpp"

#include <algorithm>
#include <vector>

namespace rcomp {

template <class Store>
SplitPlan select_split_offset(const LfIntervalGraph<Store>& g, Handle u, Handle v) {
  SplitPlan plan{u, v, 0, 0};
  Side side;
  if (g.is_heavy(Side::U, u)) {
    plan.which_case = 1;
    side = Side::U;
  } else if (g.is_heavy(Side::V, v)) {
    plan.which_case = 2;
    side = Side::V;
  } else {
    throw NotHeavy("neither the repetition nor its interval is heavy");
  }
  std::vector<std::uint64_t> offsets;
  g.for_each_in_edge(side, plan.which_case == 1 ? u : v, [&](Handle, std::uint64_t off) {
    offsets.push_back(off);
    return true;
  });
  std::sort(offsets.begin(), offsets.end());
  const std::size_t t = offsets.size();
  plan.split_len = offsets[(t + 1) / 2];
  RCOMP_CHECK(plan.split_len >= 1 && plan.split_len < g.len(Side::U, u), "split offset out of range");
  return plan;
}

template <class Store>
SplitResult split_heavy(LfIntervalGraph<Store>& g, const SplitPlan& plan) {
  constexpr Side U = Side::U, V = Side::V;
  const Handle u = plan.target_u, v = plan.target_v;
  const std::uint64_t l = plan.split_len;
  const Label lab = g.label(U, u);
  RCOMP_CHECK(g.partner(U, u) == v, "split plan pairs unmatched nodes");
  RCOMP_CHECK(l >= 1 && l < lab.len, "split length out of range");

  struct Fix {
    Handle src;
    Edge old;
  };
  std::vector<Fix> fix_u, fix_v;
  g.for_each_in_edge(V, v, [&](Handle x, std::uint64_t off) {
    if (x != u) fix_u.push_back({x, Edge{v, off}});
    return true;
  });
  g.for_each_in_edge(U, u, [&](Handle x, std::uint64_t off) {
    if (x != v) fix_v.push_back({x, Edge{u, off}});
    return true;
  });
  const Edge out_u = g.out_edge(U, u);
  const Edge out_v = g.out_edge(V, v);
  // Where the right halves start, located in the unsplit lists.
  auto walk = [&](Side s, Edge e) {
    while (e.offset >= g.len(s, e.target)) {
      e.offset -= g.len(s, e.target);
      e.target = g.next(s, e.target);
      RCOMP_CHECK(e.target != kNil, "split walk ran off the list");
    }
    return e;
  };
  const Edge w_u = walk(V, Edge{out_u.target, out_u.offset + l});
  const Edge w_v = walk(U, Edge{out_v.target, out_v.offset + l});
  const bool was_member = g.tree_member(v);

  g.begin_batch({{U, u}, {V, v}});
  SplitResult r;
  r.u_left = g.insert_after(U, u, Label{lab.ch, l});
  r.u_right = g.insert_after(U, r.u_left, Label{lab.ch, lab.len - l});
  g.erase(U, u);
  r.v_left = g.insert_after(V, v, Label{lab.ch, l});
  r.v_right = g.insert_after(V, r.v_left, Label{lab.ch, lab.len - l});
  g.erase(V, v);
  g.link_partners(r.u_left, r.v_left);
  g.link_partners(r.u_right, r.v_right);

  auto map_v = [&](Edge e) -> Edge {
    if (e.target != v) return e;
    return e.offset < l ? Edge{r.v_left, e.offset} : Edge{r.v_right, e.offset - l};
  };
  auto map_u = [&](Edge e) -> Edge {
    if (e.target != u) return e;
    return e.offset < l ? Edge{r.u_left, e.offset} : Edge{r.u_right, e.offset - l};
  };
  for (const Fix& f : fix_u) g.set_out_edge(U, f.src, map_v(f.old));
  for (const Fix& f : fix_v) g.set_out_edge(V, f.src, map_u(f.old));
  g.set_out_edge(U, r.u_left, map_v(out_u));
  g.set_out_edge(U, r.u_right, map_v(w_u));
  g.set_out_edge(V, r.v_left, map_u(out_v));
  g.set_out_edge(V, r.v_right, map_u(w_v));
  g.end_batch();

  // The left half is followed by a same-character node, so only the right
  // half can inherit membership.
  if (was_member) g.tree_replace(v, r.v_right);

  auto check = [&](Side s, Handle h) {
    if (!g.heavy_marked(s, h) && g.is_heavy(s, h)) g.heavy_mark(s, h);
  };
  check(U, r.u_left);
  check(U, r.u_right);
  check(V, r.v_left);
  check(V, r.v_right);
  check(V, g.out_edge(U, r.u_left).target);
  check(V, g.out_edge(U, r.u_right).target);
  check(U, g.out_edge(V, r.v_left).target);
  check(U, g.out_edge(V, r.v_right).target);
  return r;
}

template <class Store>
std::uint64_t balance(LfIntervalGraph<Store>& g) {
  std::uint64_t iterations = 0;
  const std::uint64_t guard = 4 * static_cast<std::uint64_t>(g.k());
  while (!g.heavy(Side::U).empty() || !g.heavy(Side::V).empty()) {
    Handle u, v;
    if (!g.heavy(Side::U).empty()) {
      u = g.heavy(Side::U).back();
      v = g.partner(Side::U, u);
    } else {
      v = g.heavy(Side::V).back();
      u = g.partner(Side::V, v);
    }
    split_heavy(g, select_split_offset(g, u, v));
    if (++iterations > guard) throw CorruptState("balancing did not terminate");
  }
  return iterations;
}

#define RCOMP_INSTANTIATE(S)                                                            \
  template SplitPlan select_split_offset<S>(const LfIntervalGraph<S>&, Handle, Handle); \
  template SplitResult split_heavy<S>(LfIntervalGraph<S>&, const SplitPlan&);           \
  template std::uint64_t balance<S>(LfIntervalGraph<S>&);

RCOMP_INSTANTIATE(PlainStore)
RCOMP_INSTANTIATE(GroupedStore)

}  // namespace rcomp
