#include "rcomp/text_model.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "rcomp/errors.hpp"

namespace rcomp {

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

SymbolText sentinelize(const Bytes& bytes) {
  SymbolText out;
  out.reserve(bytes.size() + 1);
  for (auto b : bytes) out.push_back(static_cast<Symbol>(b) + 1);
  out.push_back(kSentinel);
  return out;
}

Rlbwt run_length_encode(const std::vector<Symbol>& symbols) {
  Rlbwt out;
  for (Symbol s : symbols) {
    if (!out.runs.empty() && out.runs.back().symbol == s) {
      ++out.runs.back().length;
    } else {
      out.runs.push_back({s, 1});
    }
  }
  out.total_len = symbols.size();
  return out;
}

std::vector<Symbol> expand_runs(const Rlbwt& rlbwt) {
  std::vector<Symbol> out;
  out.reserve(rlbwt.total_len);
  for (const auto& run : rlbwt.runs) out.insert(out.end(), run.length, run.symbol);
  return out;
}

void check_rlbwt(const Rlbwt& rlbwt) {
  if (rlbwt.runs.empty()) throw MalformedRlbwt("empty run list");
  std::uint64_t total = 0;
  std::size_t sentinels = 0;
  for (std::size_t i = 0; i < rlbwt.runs.size(); ++i) {
    const auto& run = rlbwt.runs[i];
    if (run.length == 0) throw MalformedRlbwt("zero-length run at " + std::to_string(i));
    if (i > 0 && rlbwt.runs[i - 1].symbol == run.symbol)
      throw MalformedRlbwt("adjacent runs share a symbol at " + std::to_string(i));
    if (run.symbol == kSentinel) {
      ++sentinels;
      if (run.length != 1) throw MalformedRlbwt("sentinel run longer than one");
    }
    if (total + run.length < total) throw MalformedRlbwt("length overflow");
    total += run.length;
  }
  if (sentinels != 1) throw MalformedRlbwt("expected exactly one sentinel run");
  if (total != rlbwt.total_len) throw MalformedRlbwt("total length mismatch");
}

Bytes invert_rlbwt(const Rlbwt& rlbwt) {
  check_rlbwt(rlbwt);
  const auto& runs = rlbwt.runs;
  const std::size_t r = runs.size();

  // Run starts (0-based), per-run count of equal symbols in earlier runs,
  // and the C table.
  std::vector<std::uint64_t> start(r), before(r);
  std::array<std::uint64_t, 258> count{};
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < r; ++i) {
    Symbol s = runs[i].symbol;
    if (s > 256) throw MalformedRlbwt("symbol outside byte range");
    start[i] = pos;
    before[i] = count[s];
    count[s] += runs[i].length;
    pos += runs[i].length;
  }
  std::array<std::uint64_t, 258> C{};
  for (std::size_t s = 1; s < C.size(); ++s) C[s] = C[s - 1] + count[s - 1];

  auto run_of = [&](std::uint64_t i) {
    auto it = std::upper_bound(start.begin(), start.end(), i);
    return static_cast<std::size_t>(it - start.begin()) - 1;
  };

  const std::uint64_t n = rlbwt.total_len - 1;
  Bytes out;
  out.reserve(n);
  // Row 0 holds the suffix "$"; its L entry is the last text byte.
  std::uint64_t i = 0;
  for (std::uint64_t step = 0; step < n; ++step) {
    std::size_t k = run_of(i);
    Symbol s = runs[k].symbol;
    if (s == kSentinel) throw MalformedRlbwt("LF cycle closes before reaching every row");
    out.push_back(static_cast<std::uint8_t>(s - 1));
    i = C[s] + before[k] + (i - start[k]);
  }
  if (runs[run_of(i)].symbol != kSentinel) throw MalformedRlbwt("LF cycle does not close at the sentinel");
  std::reverse(out.begin(), out.end());
  return out;
}

std::string render_symbols(const std::vector<Symbol>& symbols) {
  std::string s;
  s.reserve(symbols.size());
  for (Symbol c : symbols) s.push_back(c == kSentinel ? '$' : static_cast<char>(c - 1));
  return s;
}

std::string render_runs(const Rlbwt& rlbwt) {
  std::string s;
  for (const auto& run : rlbwt.runs) {
    s += '(';
    s += run.symbol == kSentinel ? '$' : static_cast<char>(run.symbol - 1);
    s += ',' + std::to_string(run.length) + ')';
  }
  return s;
}

}  // namespace rcomp
