#include "rcomp/oracle.hpp"

#include <algorithm>
#include <numeric>

#include "rcomp/errors.hpp"

namespace rcomp::oracle {

// Prefix doubling over rank pairs. Plain std::sort per round keeps it
// obviously correct; n log^2 n is fine for the sizes we verify.
std::vector<std::uint64_t> suffix_order(const SymbolText& text) {
  const std::size_t n = text.size();
  std::vector<std::uint64_t> sa(n), rank(n), tmp(n);
  std::iota(sa.begin(), sa.end(), 0);
  for (std::size_t i = 0; i < n; ++i) rank[i] = text[i];
  if (n <= 1) return sa;
  for (std::size_t h = 1;; h <<= 1) {
    auto key = [&](std::uint64_t i) {
      std::uint64_t second = i + h < n ? rank[i + h] + 1 : 0;
      return std::pair{rank[i], second};
    };
    std::sort(sa.begin(), sa.end(), [&](auto a, auto b) { return key(a) < key(b); });
    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) tmp[sa[i]] = tmp[sa[i - 1]] + (key(sa[i - 1]) < key(sa[i]) ? 1 : 0);
    rank.swap(tmp);
    if (rank[sa[n - 1]] == n - 1) break;
  }
  return sa;
}

std::vector<Symbol> bwt_naive(const SymbolText& text) {
  const std::size_t n = text.size();
  auto sa = suffix_order(text);
  std::vector<Symbol> L(n);
  for (std::size_t i = 0; i < n; ++i) L[i] = text[sa[i] == 0 ? n - 1 : sa[i] - 1];
  return L;
}

std::vector<std::uint64_t> lf_naive(const std::vector<Symbol>& L) {
  Symbol max_sym = 0;
  for (Symbol c : L) max_sym = std::max(max_sym, c);
  std::vector<std::uint64_t> smaller(max_sym + 2, 0);
  for (Symbol c : L) ++smaller[c + 1];
  for (std::size_t c = 1; c < smaller.size(); ++c) smaller[c] += smaller[c - 1];
  std::vector<std::uint64_t> seen(max_sym + 1, 0);
  std::vector<std::uint64_t> lf(L.size() + 1, 0);
  for (std::size_t i = 0; i < L.size(); ++i) lf[i + 1] = smaller[L[i]] + ++seen[L[i]];
  return lf;
}

Extension extend_bwt_naive(const std::vector<Symbol>& L, Symbol c) {
  if (c == kSentinel) throw SentinelInput("cannot extend with the sentinel");
  auto it = std::find(L.begin(), L.end(), kSentinel);
  if (it == L.end()) throw CorruptState("BWT has no sentinel");
  Extension ext;
  ext.rep = static_cast<std::uint64_t>(it - L.begin()) + 1;
  std::uint64_t smaller = 0, rank = 0;
  for (std::size_t i = 0; i < L.size(); ++i) {
    if (L[i] < c) ++smaller;
    if (i < ext.rep && L[i] == c) ++rank;
  }
  ext.ins = smaller + rank + 1;
  ext.bwt = L;
  ext.bwt[ext.rep - 1] = c;
  ext.bwt.insert(ext.bwt.begin() + static_cast<std::ptrdiff_t>(ext.ins - 1), kSentinel);
  return ext;
}

}  // namespace rcomp::oracle
