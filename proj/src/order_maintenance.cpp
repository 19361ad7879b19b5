#include "rcomp/order_maintenance.hpp"

#include <cmath>

#include "rcomp/errors.hpp"

namespace rcomp {

namespace {
constexpr std::uint64_t kTop = std::uint64_t{1} << OrderMaintenance::kBits;
// Allowed density of a window at level i is kTau^-i.
constexpr double kTau = 1.3;
}  // namespace

void OrderMaintenance::grow(Handle h) {
  if (h >= tag_.size()) {
    std::size_t n = std::max<std::size_t>(h + 1, tag_.size() * 2);
    tag_.resize(n, 0);
    prev_.resize(n, kNil);
    next_.resize(n, kNil);
    live_.resize(n, 0);
  }
}

void OrderMaintenance::link_after(Handle anchor, Handle fresh) {
  Handle nx = anchor == kNil ? head_ : next_[anchor];
  prev_[fresh] = anchor;
  next_[fresh] = nx;
  if (anchor == kNil) head_ = fresh; else next_[anchor] = fresh;
  if (nx == kNil) tail_ = fresh; else prev_[nx] = fresh;
  live_[fresh] = 1;
  ++size_;
}

void OrderMaintenance::insert_after(Handle anchor, Handle fresh) {
  grow(fresh);
  RCOMP_CHECK(!live_[fresh], "order: handle already present");
  RCOMP_CHECK(anchor == kNil || contains(anchor), "order: dead anchor");
  link_after(anchor, fresh);
  std::uint64_t lo = anchor == kNil ? 0 : tag_[anchor];
  std::uint64_t hi = next_[fresh] == kNil ? kTop : tag_[next_[fresh]];
  if (hi - lo >= 2) {
    tag_[fresh] = lo + (hi - lo) / 2;
    return;
  }
  relabel_around(fresh);
}

void OrderMaintenance::erase(Handle h) {
  RCOMP_CHECK(contains(h), "order: erase of absent handle");
  Handle p = prev_[h], n = next_[h];
  if (p == kNil) head_ = n; else next_[p] = n;
  if (n == kNil) tail_ = p; else prev_[n] = p;
  live_[h] = 0;
  prev_[h] = next_[h] = kNil;
  --size_;
}

void OrderMaintenance::relabel_around(Handle fresh) {
  ++relabels_;
  // The fresh node has no tag yet; measure around its left neighbour (or
  // the start of tag space when inserted at the front).
  Handle a = prev_[fresh];
  std::uint64_t center = a == kNil ? 0 : tag_[a];
  for (int level = 1; level <= kBits; ++level) {
    std::uint64_t width = std::uint64_t{1} << level;
    std::uint64_t base = center & ~(width - 1);
    Handle left = fresh, right = fresh;
    std::size_t count = 1;
    while (prev_[left] != kNil && tag_[prev_[left]] >= base) {
      left = prev_[left];
      ++count;
    }
    while (next_[right] != kNil && tag_[next_[right]] < base + width) {
      right = next_[right];
      ++count;
    }
    double limit = std::ldexp(1.0, level) * std::pow(kTau, -level);
    // Tag 0 is reserved as the front sentinel, so the window needs room for
    // count labels strictly above base.
    if (static_cast<double>(count) <= limit && count + 1 < width) {
      std::uint64_t step = width / (count + 1);
      std::uint64_t t = base;
      for (Handle h = left;; h = next_[h]) {
        t += step;
        tag_[h] = t;
        if (h == right) break;
      }
      return;
    }
  }
  relabel_all();
}

void OrderMaintenance::relabel_all() {
  std::uint64_t step = kTop / (size_ + 1);
  RCOMP_CHECK(step >= 2, "order: tag space exhausted");
  std::uint64_t t = 0;
  for (Handle h = head_; h != kNil; h = next_[h]) {
    t += step;
    tag_[h] = t;
  }
}

}  // namespace rcomp
