#include "rcomp/vtree.hpp"

#include <algorithm>

namespace rcomp {

VTree& VTree::operator=(VTree&& o) noexcept {
  if (this != &o) {
    clear();
    root_ = o.root_;
    size_ = o.size_;
    min_slot_ = o.min_slot_;
    leaf_of_ = std::move(o.leaf_of_);
    counters_ = o.counters_;
    o.root_ = nullptr;
    o.size_ = 0;
    o.min_slot_ = kNil;
    o.leaf_of_.clear();
  }
  return *this;
}

void VTree::clear() {
  free_subtree(root_);
  root_ = nullptr;
  size_ = 0;
  min_slot_ = kNil;
  leaf_of_.clear();
}

void VTree::free_subtree(Node* x) {
  if (x == nullptr) return;
  if (!x->leaf)
    for (int i = 0; i < x->n; ++i) free_subtree(x->kids[i]);
  delete x;
}

void VTree::track(Handle h, Node* leaf) {
  if (h >= leaf_of_.size()) leaf_of_.resize(std::max<std::size_t>(h + 1, leaf_of_.size() * 2), nullptr);
  leaf_of_[h] = leaf;
}

void VTree::fix_leftmost(Node* x) {
  for (; x != nullptr; x = x->parent) x->leftmost = x->leaf ? x : x->kids[0]->leftmost;
}

int VTree::child_index(const Node* parent, const Node* child) {
  for (int i = 0; i < parent->n; ++i)
    if (parent->kids[i] == child) return i;
  throw CorruptState("vtree: child not found under parent");
}

void VTree::insert_at(Node* leaf, int pos, Handle h) {
  std::copy_backward(leaf->elems.begin() + pos, leaf->elems.begin() + leaf->n,
                     leaf->elems.begin() + leaf->n + 1);
  leaf->elems[pos] = h;
  ++leaf->n;
  ++size_;
  track(h, leaf);
  if (leaf->n <= kFanout) return;

  Node* right = new Node();
  int keep = leaf->n / 2;
  right->n = leaf->n - keep;
  std::copy(leaf->elems.begin() + keep, leaf->elems.begin() + leaf->n, right->elems.begin());
  leaf->n = keep;
  right->leftmost = right;
  for (int i = 0; i < right->n; ++i) leaf_of_[right->elems[i]] = right;
  insert_child(leaf->parent, leaf, right);
}

void VTree::insert_child(Node* parent, Node* after, Node* fresh) {
  if (parent == nullptr) {
    Node* root = new Node();
    root->leaf = false;
    root->n = 2;
    root->kids[0] = after;
    root->kids[1] = fresh;
    after->parent = fresh->parent = root;
    root_ = root;
    fix_leftmost(root);
    return;
  }
  int pos = child_index(parent, after) + 1;
  std::copy_backward(parent->kids.begin() + pos, parent->kids.begin() + parent->n,
                     parent->kids.begin() + parent->n + 1);
  parent->kids[pos] = fresh;
  fresh->parent = parent;
  ++parent->n;
  if (parent->n <= kFanout) return;

  Node* right = new Node();
  right->leaf = false;
  int keep = parent->n / 2;
  right->n = parent->n - keep;
  std::copy(parent->kids.begin() + keep, parent->kids.begin() + parent->n, right->kids.begin());
  parent->n = keep;
  for (int i = 0; i < right->n; ++i) right->kids[i]->parent = right;
  right->leftmost = right->kids[0]->leftmost;
  insert_child(parent->parent, parent, right);
}

void VTree::remove_child(Node* parent, Node* child) {
  int pos = child_index(parent, child);
  std::copy(parent->kids.begin() + pos + 1, parent->kids.begin() + parent->n, parent->kids.begin() + pos);
  --parent->n;
  delete child;
  if (parent->n == 0) {
    if (parent->parent == nullptr) {
      delete parent;
      root_ = nullptr;
    } else {
      remove_child(parent->parent, parent);
    }
    return;
  }
  fix_leftmost(parent);
}

void VTree::erase(Handle h) {
  if (h == min_slot_) {
    min_slot_ = kNil;
    ++counters_.min_swaps;
    return;
  }
  if (!member(h)) throw NotMember("vtree: erase of non-member");
  ++counters_.erases;
  Node* leaf = leaf_of_[h];
  leaf_of_[h] = nullptr;
  int pos = 0;
  while (leaf->elems[pos] != h) ++pos;
  std::copy(leaf->elems.begin() + pos + 1, leaf->elems.begin() + leaf->n, leaf->elems.begin() + pos);
  --leaf->n;
  --size_;

  if (leaf->n == 0) {
    if (leaf->parent == nullptr) {
      delete leaf;
      root_ = nullptr;
    } else {
      remove_child(leaf->parent, leaf);
    }
  } else if (leaf->parent != nullptr && leaf->n < kFanout / 4) {
    // Fold a sparse leaf into a neighbouring sibling when both fit.
    Node* parent = leaf->parent;
    int i = child_index(parent, leaf);
    Node* left = nullptr;
    Node* right = nullptr;
    if (i + 1 < parent->n && parent->kids[i + 1]->n + leaf->n <= kFanout) {
      left = leaf;
      right = parent->kids[i + 1];
    } else if (i > 0 && parent->kids[i - 1]->n + leaf->n <= kFanout) {
      left = parent->kids[i - 1];
      right = leaf;
    }
    if (left != nullptr) {
      for (int j = 0; j < right->n; ++j) {
        left->elems[left->n + j] = right->elems[j];
        leaf_of_[right->elems[j]] = left;
      }
      left->n += right->n;
      right->n = 0;
      remove_child(parent, right);
    }
  }
  // Collapse single-child roots.
  while (root_ != nullptr && !root_->leaf && root_->n == 1) {
    Node* only = root_->kids[0];
    only->parent = nullptr;
    delete root_;
    root_ = only;
  }
}

void VTree::replace(Handle old_h, Handle new_h) {
  if (old_h == min_slot_) {
    min_slot_ = new_h;
    ++counters_.min_swaps;
    return;
  }
  if (!member(old_h)) throw NotMember("vtree: replace of non-member");
  if (member(new_h)) throw CorruptState("vtree: replacement already a member");
  ++counters_.replacements;
  Node* leaf = leaf_of_[old_h];
  int pos = 0;
  while (leaf->elems[pos] != old_h) ++pos;
  leaf->elems[pos] = new_h;
  leaf_of_[old_h] = nullptr;
  track(new_h, leaf);
}

void VTree::set_min(Handle h) {
  ++counters_.min_swaps;
  min_slot_ = h;
}

void VTree::collect(const Node* x, std::vector<Handle>& out) const {
  if (x == nullptr) return;
  if (x->leaf) {
    out.insert(out.end(), x->elems.begin(), x->elems.begin() + x->n);
    return;
  }
  for (int i = 0; i < x->n; ++i) collect(x->kids[i], out);
}

std::vector<Handle> VTree::in_order() const {
  std::vector<Handle> out;
  if (min_slot_ != kNil) out.push_back(min_slot_);
  collect(root_, out);
  return out;
}

std::string VTree::check_node(const Node* x, const Node* parent, int depth, int& leaf_depth) const {
  if (x->parent != parent) return "bad parent pointer";
  if (x->n <= 0 || x->n > kFanout) return "node occupancy out of range";
  if (x->leaf) {
    if (x->leftmost != x) return "leaf leftmost pointer";
    if (leaf_depth < 0) leaf_depth = depth;
    if (leaf_depth != depth) return "leaves at different depths";
    for (int i = 0; i < x->n; ++i) {
      Handle h = x->elems[i];
      if (h >= leaf_of_.size() || leaf_of_[h] != x) return "stale leaf back-pointer";
    }
    return {};
  }
  if (x->leftmost != x->kids[0]->leftmost) return "internal leftmost pointer";
  for (int i = 0; i < x->n; ++i) {
    auto err = check_node(x->kids[i], x, depth + 1, leaf_depth);
    if (!err.empty()) return err;
  }
  return {};
}

std::string VTree::check_structure() const {
  if (root_ == nullptr) return size_ == 0 ? std::string{} : "size without root";
  int leaf_depth = -1;
  auto err = check_node(root_, nullptr, 0, leaf_depth);
  if (!err.empty()) return err;
  std::vector<Handle> all;
  collect(root_, all);
  if (all.size() != size_) return "size counter mismatch";
  return {};
}

}  // namespace rcomp
