#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rcomp/errors.hpp"
#include "rcomp/node_types.hpp"

namespace rcomp {

struct TreeKey {
  Symbol ch = 0;
  std::uint64_t tag = 0;

  auto operator<=>(const TreeKey&) const = default;
};

// B+ tree over V handles. Keys are never stored: callers pass a key
// function, so a member's key always reflects the live order tag of its
// partner. Internal nodes compare against the first element of a child's
// leftmost leaf, which is why an in-place replacement at a leaf never has
// to touch the ancestors. The V node standing for the sentinel sits in a
// separate minimum slot.
class VTree {
 public:
  static constexpr int kFanout = 16;

  struct Counters {
    std::uint64_t inserts = 0;
    std::uint64_t erases = 0;
    std::uint64_t replacements = 0;
    std::uint64_t min_swaps = 0;
  };

  VTree() = default;
  VTree(const VTree&) = delete;
  VTree& operator=(const VTree&) = delete;
  VTree(VTree&& o) noexcept { *this = std::move(o); }
  VTree& operator=(VTree&& o) noexcept;
  ~VTree() { clear(); }

  void clear();

  template <class KeyFn>
  Handle pred(const TreeKey& key, KeyFn&& key_of) const;
  template <class KeyFn>
  void insert(Handle h, KeyFn&& key_of);
  void erase(Handle h);
  void replace(Handle old_h, Handle new_h);

  void set_min(Handle h);
  Handle min_slot() const { return min_slot_; }

  bool member(Handle h) const {
    return h == min_slot_ || (h < leaf_of_.size() && leaf_of_[h] != nullptr);
  }
  std::size_t size() const { return size_ + (min_slot_ != kNil ? 1 : 0); }
  const Counters& counters() const { return counters_; }

  // Members in tree order, minimum slot first.
  std::vector<Handle> in_order() const;

  // Empty string when the shape invariants hold.
  std::string check_structure() const;

 private:
  struct Node {
    bool leaf = true;
    int n = 0;
    Node* parent = nullptr;
    Node* leftmost = nullptr;
    std::array<Handle, kFanout + 1> elems{};
    std::array<Node*, kFanout + 1> kids{};
  };

  Handle node_min(const Node* x) const { return x->leftmost->elems[0]; }
  void track(Handle h, Node* leaf);
  void fix_leftmost(Node* x);
  void insert_at(Node* leaf, int pos, Handle h);
  void insert_child(Node* parent, Node* after, Node* fresh);
  void remove_child(Node* parent, Node* child);
  static int child_index(const Node* parent, const Node* child);
  void free_subtree(Node* x);
  void collect(const Node* x, std::vector<Handle>& out) const;
  std::string check_node(const Node* x, const Node* parent, int depth, int& leaf_depth) const;

  Node* root_ = nullptr;
  std::size_t size_ = 0;
  Handle min_slot_ = kNil;
  std::vector<Node*> leaf_of_;
  Counters counters_;
};

template <class KeyFn>
Handle VTree::pred(const TreeKey& key, KeyFn&& key_of) const {
  if (root_ == nullptr || !(key_of(node_min(root_)) < key)) return min_slot_;
  const Node* x = root_;
  while (!x->leaf) {
    int lo = 0, hi = x->n - 1;  // kids[lo] always has a smaller minimum
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (key_of(node_min(x->kids[mid])) < key) lo = mid; else hi = mid - 1;
    }
    x = x->kids[lo];
  }
  int lo = 0, hi = x->n - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (key_of(x->elems[mid]) < key) lo = mid; else hi = mid - 1;
  }
  return x->elems[lo];
}

template <class KeyFn>
void VTree::insert(Handle h, KeyFn&& key_of) {
  if (member(h)) throw CorruptState("vtree: double insert");
  ++counters_.inserts;
  if (root_ == nullptr) {
    root_ = new Node();
    root_->leftmost = root_;
    insert_at(root_, 0, h);
    return;
  }
  TreeKey key = key_of(h);
  Node* x = root_;
  if (!(key_of(node_min(root_)) < key)) {
    insert_at(root_->leftmost, 0, h);
    return;
  }
  while (!x->leaf) {
    int lo = 0, hi = x->n - 1;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (key_of(node_min(x->kids[mid])) < key) lo = mid; else hi = mid - 1;
    }
    x = x->kids[lo];
  }
  int lo = 0, hi = x->n - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (key_of(x->elems[mid]) < key) lo = mid; else hi = mid - 1;
  }
  insert_at(x, lo + 1, h);
}

}  // namespace rcomp
