#include "rcomp/plain_store.hpp"

namespace rcomp {

void PlainStore::unlink_in(Side s, Handle h) {
  auto& r = rec(s, h);
  if (r.out.target == kNil) return;
  const Side o = opposite(s);
  auto& t = rec(o, r.out.target);
  if (r.in_prev == kNil) t.in_head = r.in_next; else rec(s, r.in_prev).in_next = r.in_next;
  if (r.in_next != kNil) rec(s, r.in_next).in_prev = r.in_prev;
  --t.in_count;
  r.in_prev = r.in_next = kNil;
  r.out.target = kNil;
}

void PlainStore::set_out_edge(Side s, Handle h, Edge e) {
  unlink_in(s, h);
  auto& r = rec(s, h);
  r.out = e;
  if (e.target == kNil) return;
  auto& t = rec(opposite(s), e.target);
  r.in_prev = kNil;
  r.in_next = t.in_head;
  if (t.in_head != kNil) rec(s, t.in_head).in_prev = h;
  t.in_head = h;
  ++t.in_count;
}

Handle PlainStore::insert_after(Side s, Handle anchor, Label label) {
  auto& pool = nodes_[idx(s)];
  Handle h;
  if (!free_[idx(s)].empty()) {
    h = free_[idx(s)].back();
    free_[idx(s)].pop_back();
  } else {
    h = static_cast<Handle>(pool.size());
    pool.emplace_back();
  }
  auto& r = pool[h];
  std::uint32_t gen = r.generation;
  r = NodeRecord{};
  r.generation = gen;
  r.label = label;
  r.live = true;

  auto& list = lists_[idx(s)];
  Handle nx = anchor == kNil ? list.head : rec(s, anchor).next;
  r.prev = anchor;
  r.next = nx;
  if (anchor == kNil) list.head = h; else rec(s, anchor).next = h;
  if (nx == kNil) list.tail = h; else rec(s, nx).prev = h;
  ++list.count;
  return h;
}

void PlainStore::erase(Side s, Handle h) {
  auto& r = rec(s, h);
  RCOMP_CHECK(r.live, "plain store: erase of dead node");
  auto& list = lists_[idx(s)];
  if (r.prev == kNil) list.head = r.next; else rec(s, r.prev).next = r.next;
  if (r.next == kNil) list.tail = r.prev; else rec(s, r.next).prev = r.prev;
  --list.count;
  unlink_in(s, h);
  r.live = false;
  r.prev = r.next = kNil;
  if (in_batch_) {
    parked_[idx(s)].push_back(h);
  } else {
    RCOMP_CHECK(r.in_head == kNil, "plain store: erased node still has incoming edges");
    ++r.generation;
    free_[idx(s)].push_back(h);
  }
}

void PlainStore::end_batch() {
  in_batch_ = false;
  for (int s = 0; s < 2; ++s) {
    for (Handle h : parked_[s]) {
      auto& r = nodes_[s][h];
      RCOMP_CHECK(r.in_head == kNil, "plain store: erased node still has incoming edges");
      ++r.generation;
      free_[s].push_back(h);
    }
    parked_[s].clear();
  }
}

}  // namespace rcomp
