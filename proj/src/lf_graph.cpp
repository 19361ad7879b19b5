#include "rcomp/lf_graph.hpp"

#include <algorithm>
#include <sstream>

#include "rcomp/oracle.hpp"

namespace rcomp {

const char* to_string(TreeCondition c) {
  switch (c) {
    case TreeCondition::None: return "none";
    case TreeCondition::AdjacentDistinct: return "adjacent-distinct";
    case TreeCondition::DistinctAcrossSentinel: return "distinct-across-sentinel";
    case TreeCondition::IsSentinel: return "is-sentinel";
  }
  return "?";
}

std::string ValidationReport::summary() const {
  if (violations.empty()) return "ok";
  std::ostringstream os;
  os << violations.size() << " violation(s):";
  for (std::size_t i = 0; i < violations.size() && i < 12; ++i) os << "\n  " << violations[i];
  return os.str();
}

template <class Store>
LfIntervalGraph<Store>::LfIntervalGraph(Uninit, std::uint32_t alpha, Store store)
    : store_(std::move(store)), alpha_(alpha) {
  if (alpha < kMinAlpha) throw InvalidAlpha("alpha must be at least 16, got " + std::to_string(alpha));
}

template <class Store>
LfIntervalGraph<Store>::LfIntervalGraph(std::uint32_t alpha, Store store)
    : LfIntervalGraph(from_dbwt({kSentinel}, {1}, alpha, std::move(store))) {}

template <class Store>
LfIntervalGraph<Store> LfIntervalGraph<Store>::from_dbwt(const std::vector<Symbol>& L,
                                                         const std::vector<std::uint64_t>& lengths,
                                                         std::uint32_t alpha, Store store) {
  LfIntervalGraph g(Uninit{}, alpha, std::move(store));
  const std::size_t k = lengths.size();
  std::vector<std::uint64_t> start(k);  // 1-based repetition starts
  std::uint64_t pos = 1;
  for (std::size_t b = 0; b < k; ++b) {
    if (lengths[b] == 0) throw CorruptState("from_dbwt: empty block");
    start[b] = pos;
    for (std::uint64_t j = 1; j < lengths[b]; ++j)
      if (L[pos - 1 + j] != L[pos - 1]) throw CorruptState("from_dbwt: block mixes characters");
    pos += lengths[b];
  }
  if (pos - 1 != L.size()) throw CorruptState("from_dbwt: block lengths do not cover the BWT");
  auto lf = oracle::lf_naive(L);

  std::vector<std::size_t> by_f(k);
  for (std::size_t b = 0; b < k; ++b) by_f[b] = b;
  std::sort(by_f.begin(), by_f.end(), [&](auto a, auto b) { return lf[start[a]] < lf[start[b]]; });
  std::vector<std::uint64_t> fstart(k);
  for (std::size_t i = 0; i < k; ++i) fstart[i] = lf[start[by_f[i]]];

  g.begin_batch({});
  std::vector<Handle> uh(k), vh(k);  // vh indexed by block, not F rank
  Handle anchor = kNil;
  for (std::size_t b = 0; b < k; ++b) {
    anchor = g.insert_after(Side::U, anchor, Label{L[start[b] - 1], lengths[b]});
    uh[b] = anchor;
    if (L[start[b] - 1] == kSentinel) g.sentinel_u_ = anchor;
  }
  anchor = kNil;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t b = by_f[i];
    anchor = g.insert_after(Side::V, anchor, Label{L[start[b] - 1], lengths[b]});
    vh[b] = anchor;
    g.link_partners(uh[b], vh[b]);
  }
  for (std::size_t b = 0; b < k; ++b) {
    // V interval containing position start[b].
    std::size_t i = std::upper_bound(fstart.begin(), fstart.end(), start[b]) - fstart.begin() - 1;
    g.set_out_edge(Side::U, uh[b], Edge{vh[by_f[i]], start[b] - fstart[i]});
    // Repetition containing position lf[start[b]].
    std::uint64_t f = lf[start[b]];
    std::size_t c = std::upper_bound(start.begin(), start.end(), f) - start.begin() - 1;
    g.set_out_edge(Side::V, vh[b], Edge{uh[c], f - start[c]});
  }
  g.end_batch();
  g.delta_ = L.size();

  for (Handle v = g.first(Side::V); v != kNil; v = g.next(Side::V, v)) {
    auto cond = g.satisfies_tree_condition(v);
    if (cond == TreeCondition::IsSentinel) g.tree_set_min(v);
    else if (cond != TreeCondition::None) g.tree_insert(v);
  }
  for (int s = 0; s < 2; ++s) {
    const Side side = static_cast<Side>(s);
    for (Handle h = g.first(side); h != kNil; h = g.next(side, h))
      if (g.is_heavy(side, h)) g.heavy_mark(side, h);
  }
  return g;
}

template <class Store>
Handle LfIntervalGraph<Store>::insert_after(Side s, Handle anchor, Label label) {
  Handle h = store_.insert_after(s, anchor, label);
  if (s == Side::U) order_.insert_after(anchor, h);
  return h;
}

template <class Store>
void LfIntervalGraph<Store>::erase(Side s, Handle h) {
  if (heavy_marked(s, h)) heavy_unmark(s, h);
  store_.erase(s, h);
  if (s == Side::U) order_.erase(h);
}

template <class Store>
Handle LfIntervalGraph<Store>::tree_pred(Handle u, Symbol c) const {
  return tree_.pred(TreeKey{c, order_.tag(u)}, [this](Handle v) { return key_of(v); });
}

template <class Store>
void LfIntervalGraph<Store>::tree_insert(Handle v) {
  tree_.insert(v, [this](Handle x) { return key_of(x); });
}

template <class Store>
TreeCondition LfIntervalGraph<Store>::satisfies_tree_condition(Handle v) const {
  const Handle ug = partner(Side::V, v);
  const Symbol c = ch(Side::U, ug);
  if (c == kSentinel) return TreeCondition::IsSentinel;
  // A missing successor carries no character, so it differs from u_g.
  const Handle u1 = next(Side::U, ug);
  if (u1 == kNil) return TreeCondition::AdjacentDistinct;
  const Symbol c1 = ch(Side::U, u1);
  if (c1 != kSentinel) return c1 != c ? TreeCondition::AdjacentDistinct : TreeCondition::None;
  const Handle u2 = next(Side::U, u1);
  if (u2 == kNil) return TreeCondition::DistinctAcrossSentinel;
  return ch(Side::U, u2) != c ? TreeCondition::DistinctAcrossSentinel : TreeCondition::None;
}

template <class Store>
void LfIntervalGraph<Store>::heavy_mark(Side s, Handle h) {
  auto& pos = heavy_pos_[idx(s)];
  if (h >= pos.size()) pos.resize(std::max<std::size_t>(h + 1, pos.size() * 2), kNil);
  if (pos[h] != kNil) return;
  pos[h] = static_cast<Handle>(heavy_[idx(s)].size());
  heavy_[idx(s)].push_back(h);
}

template <class Store>
void LfIntervalGraph<Store>::heavy_unmark(Side s, Handle h) {
  auto& pos = heavy_pos_[idx(s)];
  auto& arr = heavy_[idx(s)];
  if (h >= pos.size() || pos[h] == kNil) return;
  Handle at = pos[h];
  Handle moved = arr.back();
  arr[at] = moved;
  pos[moved] = at;
  arr.pop_back();
  pos[h] = kNil;
}

template <class Store>
bool LfIntervalGraph<Store>::is_heavy(Side s, Handle h) const {
  std::size_t d = 0;
  store_.for_each_in_edge(s, h, [&](Handle, std::uint64_t) { return ++d < alpha_; });
  return d >= alpha_;
}

template <class Store>
std::vector<Symbol> LfIntervalGraph<Store>::bwt() const {
  std::vector<Symbol> out;
  out.reserve(delta_);
  for (Handle u = first(Side::U); u != kNil; u = next(Side::U, u)) out.insert(out.end(), len(Side::U, u), ch(Side::U, u));
  return out;
}

template <class Store>
Rlbwt LfIntervalGraph<Store>::to_rlbwt() const {
  Rlbwt out;
  for (Handle u = first(Side::U); u != kNil; u = next(Side::U, u)) {
    const Label& l = label(Side::U, u);
    if (!out.runs.empty() && out.runs.back().symbol == l.ch) out.runs.back().length += l.len;
    else out.runs.push_back({l.ch, l.len});
    out.total_len += l.len;
  }
  return out;
}

template <class Store>
std::vector<Label> LfIntervalGraph<Store>::labels(Side s) const {
  std::vector<Label> out;
  for (Handle h = first(s); h != kNil; h = next(s, h)) out.push_back(label(s, h));
  return out;
}

template <class Store>
ValidationReport LfIntervalGraph<Store>::validate(const std::vector<Symbol>* expected, BalanceMode mode) const {
  ValidationReport rep;
  auto fail = [&](const std::string& tag, const std::string& what) { rep.violations.push_back(tag + ": " + what); };
  auto hs = [](Handle h) { return std::to_string(h); };

  // Walk both lists, reconstructing absolute starts (1-based).
  std::vector<Handle> nodes[2];
  std::vector<std::uint64_t> startpos[2];
  for (int si = 0; si < 2; ++si) {
    const Side s = static_cast<Side>(si);
    startpos[si].assign(store_.capacity(s), 0);
    std::uint64_t pos = 1;
    Handle prev_h = kNil;
    for (Handle h = first(s); h != kNil; h = next(s, h)) {
      if (nodes[si].size() > store_.count(s)) {
        fail("G1", "list walk longer than node count (cycle?)");
        return rep;
      }
      if (!store_.live(s, h)) {
        fail("G1", "dead handle " + hs(h) + " in list");
        return rep;
      }
      if (prev(s, h) != prev_h) fail("G1", "broken back link at " + hs(h));
      if (len(s, h) == 0) fail("G1", "zero-length node " + hs(h));
      nodes[si].push_back(h);
      startpos[si][h] = pos;
      pos += len(s, h);
      prev_h = h;
    }
    if (last(s) != prev_h) fail("G1", "list tail mismatch");
  }
  const auto& us = nodes[0];
  const auto& vs = nodes[1];
  const auto& pu = startpos[0];
  const auto& pv = startpos[1];

  // G1
  if (us.size() != vs.size() || us.size() != store_.count(Side::U) || vs.size() != store_.count(Side::V))
    fail("G1", "node counts differ: |U|=" + std::to_string(us.size()) + " |V|=" + std::to_string(vs.size()));
  for (Handle u : us) {
    Handle v = partner(Side::U, u);
    if (!live(Side::V, v) || partner(Side::V, v) != u) {
      fail("G1", "partner of u" + hs(u) + " is not symmetric");
      continue;
    }
    if (!(label(Side::U, u) == label(Side::V, v))) fail("G1", "labels differ on u" + hs(u) + "/v" + hs(v));
  }
  if (!rep.ok()) return rep;

  // G9
  std::size_t su = 0, sv = 0;
  std::uint64_t total_u = 0, total_v = 0;
  for (Handle u : us) {
    total_u += len(Side::U, u);
    if (ch(Side::U, u) == kSentinel) {
      ++su;
      if (len(Side::U, u) != 1) fail("G9", "sentinel U node longer than one");
      if (u != sentinel_u_) fail("G9", "sentinel handle is stale");
    }
  }
  for (Handle v : vs) {
    total_v += len(Side::V, v);
    if (ch(Side::V, v) == kSentinel) ++sv;
  }
  if (su != 1 || sv != 1) fail("G9", "expected one sentinel node per side");
  if (total_u != delta_ || total_v != delta_) fail("G9", "lengths do not sum to delta=" + std::to_string(delta_));
  if (!rep.ok()) return rep;

  // G2: content, F order, and the LF correspondence of each partner pair.
  std::vector<Symbol> L = bwt();
  if (expected != nullptr && L != *expected)
    fail("G2", "U labels spell " + render_symbols(L) + ", expected " + render_symbols(*expected));
  for (std::size_t i = 1; i < vs.size(); ++i)
    if (ch(Side::V, vs[i - 1]) > ch(Side::V, vs[i])) fail("G2", "V list not sorted at v" + hs(vs[i]));
  auto lf = oracle::lf_naive(L);
  for (Handle u : us) {
    Handle v = partner(Side::U, u);
    if (pv[v] != lf[pu[u]])
      fail("G2", "F-interval of v" + hs(v) + " starts at " + std::to_string(pv[v]) + ", LF gives " +
                     std::to_string(lf[pu[u]]));
  }

  // G3
  for (int si = 0; si < 2; ++si) {
    const Side s = static_cast<Side>(si);
    const Side o = opposite(s);
    for (Handle h : nodes[si]) {
      Edge e = out_edge(s, h);
      if (!live(o, e.target)) {
        fail("G3", std::string(si == 0 ? "u" : "v") + hs(h) + " points at a dead node");
        continue;
      }
      if (startpos[1 - si][e.target] + e.offset != startpos[si][h] || e.offset >= len(o, e.target))
        fail("G3", std::string(si == 0 ? "u" : "v") + hs(h) + " edge (" + hs(e.target) + "," +
                       std::to_string(e.offset) + ") misses its start " + std::to_string(startpos[si][h]));
    }
  }
  if (!rep.ok()) return rep;

  // G4 and G5
  for (int si = 0; si < 2; ++si) {
    const Side s = static_cast<Side>(si);
    const Side o = opposite(s);
    std::vector<std::vector<std::pair<Handle, std::uint64_t>>> want(store_.capacity(s));
    for (Handle x : nodes[1 - si]) {
      Edge e = out_edge(o, x);
      want[e.target].push_back({x, e.offset});
    }
    std::size_t heavy_count = 0;
    for (Handle h : nodes[si]) {
      std::vector<std::pair<Handle, std::uint64_t>> got;
      store_.for_each_in_edge(s, h, [&](Handle x, std::uint64_t off) {
        got.push_back({x, off});
        return true;
      });
      auto w = want[h];
      std::sort(got.begin(), got.end());
      std::sort(w.begin(), w.end());
      if (got != w) fail("G4", "incoming edges of " + std::string(si == 0 ? "u" : "v") + hs(h) + " disagree");
      if (store_.in_degree(s, h) != w.size()) fail("G4", "in-degree counter of " + hs(h));
      const std::size_t d = w.size();
      if (d >= alpha_) ++heavy_count;
      if (mode == BalanceMode::Balanced && d >= alpha_)
        fail("G5", std::string(si == 0 ? "u" : "v") + hs(h) + " has in-degree " + std::to_string(d));
      if (mode == BalanceMode::PreBalance && d > 2 * alpha_)
        fail("G5", std::string(si == 0 ? "u" : "v") + hs(h) + " exceeds 2*alpha with " + std::to_string(d));
      // G8
      if (mode != BalanceMode::Structural && (d >= alpha_) != heavy_marked(s, h))
        fail("G8", "heavy mark of " + std::string(si == 0 ? "u" : "v") + hs(h) + " disagrees with degree " +
                       std::to_string(d));
    }
    if (mode == BalanceMode::PreBalance && heavy_count > 2)
      fail("G5", std::to_string(heavy_count) + " heavy nodes on side " + std::to_string(si));
    for (std::size_t i = 0; i < heavy_[si].size(); ++i) {
      Handle h = heavy_[si][i];
      if (!live(s, h) || heavy_pos_[si][h] != i) fail("G8", "heavy array entry " + hs(h) + " is stale");
    }
  }

  // G6
  std::vector<Handle> expect_members;
  for (Handle v : vs) {
    auto cond = satisfies_tree_condition(v);
    bool member = tree_.member(v);
    if ((cond != TreeCondition::None) != member)
      fail("G6", "v" + hs(v) + " membership " + (member ? "set" : "unset") + " but condition is " +
                     to_string(cond));
    if (cond == TreeCondition::IsSentinel && tree_.min_slot() != v) fail("G6", "sentinel V node not in min slot");
    if (cond != TreeCondition::None) expect_members.push_back(v);
  }
  if (tree_.in_order() != expect_members) fail("G6", "tree order differs from V list order");
  if (auto err = tree_.check_structure(); !err.empty()) fail("G6", "tree shape: " + err);

  // G7
  if (order_.size() != us.size()) fail("G7", "order structure size mismatch");
  if (order_.first() != first(Side::U)) fail("G7", "order structure head mismatch");
  for (std::size_t i = 1; i < us.size(); ++i)
    if (!order_.before(us[i - 1], us[i]) || order_.next(us[i - 1]) != us[i])
      fail("G7", "order tags not increasing at u" + hs(us[i]));
  return rep;
}

template class LfIntervalGraph<PlainStore>;
template class LfIntervalGraph<GroupedStore>;

}  // namespace rcomp
