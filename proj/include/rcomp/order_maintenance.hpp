#pragma once

#include <cstdint>
#include <vector>

#include "rcomp/node_types.hpp"

namespace rcomp {

// List labeling over handles. Each live handle carries a 64-bit tag that
// increases along the list; a full gap triggers relabeling of the smallest
// enclosing aligned tag window that is sparse enough.
class OrderMaintenance {
 public:
  static constexpr int kBits = 62;

  void insert_after(Handle anchor, Handle fresh);  // anchor == kNil: front
  void erase(Handle h);
  bool before(Handle a, Handle b) const { return tag_[a] < tag_[b]; }
  std::uint64_t tag(Handle h) const { return tag_[h]; }
  bool contains(Handle h) const { return h < live_.size() && live_[h]; }
  std::size_t size() const { return size_; }
  Handle first() const { return head_; }
  Handle next(Handle h) const { return next_[h]; }
  std::uint64_t relabel_count() const { return relabels_; }

 private:
  void grow(Handle h);
  void link_after(Handle anchor, Handle fresh);
  void relabel_around(Handle fresh);
  void relabel_all();

  std::vector<std::uint64_t> tag_;
  std::vector<Handle> prev_, next_;
  std::vector<std::uint8_t> live_;
  Handle head_ = kNil, tail_ = kNil;
  std::size_t size_ = 0;
  std::uint64_t relabels_ = 0;
};

}  // namespace rcomp
