// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
//
//   acceptance --cli <path to rcomp> --workdir <scratch dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "rcomp/driver.hpp"
#include "rcomp/errors.hpp"
#include "rcomp/oracle.hpp"
#include "rcomp/rlbwt_io.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace rcomp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(const char* name, const std::function<Outcome()>& check) {
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s  %-28s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Bytes> random_corpus() {
  std::mt19937_64 rng(20240601);
  const unsigned sigmas[] = {1, 2, 4, 16, 256};
  std::vector<Bytes> corpus;
  for (int i = 0; i < 1000; ++i) corpus.push_back(rcomp::testing::random_bytes(rng, 1 + rng() % 512, sigmas[i % 5]));
  return corpus;
}

BuildStats label_free(BuildStats s) {
  s.backend = Backend::Plain;
  return s;
}

Bytes abracadabra(std::size_t n) {
  Bytes out = rcomp::testing::repeat("abracadabra", n / 11 + 1);
  out.resize(n);
  return out;
}

Bytes mutated_repeats() {
  std::mt19937_64 rng(64);
  Bytes pattern = rcomp::testing::random_bytes(rng, 64, 4);
  Bytes out;
  std::uniform_int_distribution<int> percent(0, 99);
  for (int copy = 0; copy < 1024; ++copy) {
    for (std::uint8_t b : pattern) out.push_back(percent(rng) == 0 ? static_cast<std::uint8_t>(rng()) : b);
  }
  return out;
}

int run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli, workdir = "acceptance_work";
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--cli") cli = argv[i + 1];
    else if (flag == "--workdir") workdir = argv[i + 1];
  }

  const std::vector<Bytes> corpus = random_corpus();
  std::vector<BuildResult> plain_results;

  report("golden_example", [] {
    BuildResult res = rcomp_build(to_bytes("aabbabbabba"));
    std::string runs = render_runs(res.rlbwt);
    bool ok = runs == "(a,1)(b,1)($,1)(b,2)(a,1)(b,3)(a,3)" && res.stats.r == 7 &&
              render_symbols(expand_runs(res.rlbwt)) == "ab$bbabbbaaa";
    return Outcome{ok, runs + " r=" + std::to_string(res.stats.r)};
  });

  report("golden_sub_example", [] {
    std::vector<Symbol> L{kSentinel};
    const std::string suffix = "abbabbabba";
    for (std::size_t i = suffix.size(); i-- > 0;) L = oracle::extend_bwt_naive(L, rcomp::testing::sym(suffix[i])).bwt;
    auto ext = oracle::extend_bwt_naive(L, rcomp::testing::sym('a'));
    bool ok = render_symbols(L) == "abbb$bbbaaa" && ext.ins == 3 && ext.rep == 5;
    return Outcome{ok, "L11=" + render_symbols(L) + " ins=" + std::to_string(ext.ins)};
  });

  report("oracle_equivalence", [&] {
    auto t0 = std::chrono::steady_clock::now();
    std::size_t mismatches = 0;
    for (const Bytes& text : corpus) {
      plain_results.push_back(rcomp_build(text));
      if (plain_results.back().rlbwt != rcomp::testing::oracle_rlbwt(text)) ++mismatches;
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << corpus.size() << " strings, " << mismatches << " mismatches, " << secs << " s";
    return Outcome{mismatches == 0 && secs < 120.0, d.str()};
  });

  report("per_step_validation", [&] {
    std::size_t steps = 0, bad = 0, strings = 0;
    std::string first_error;
    for (std::size_t i = 0; i < corpus.size() && strings < 120; ++i) {
      const Bytes& text = corpus[i];
      if (text.size() > 256) continue;
      ++strings;
      RcompBuilder b;
      std::vector<Symbol> L{kSentinel};
      b.set_observer([&](const PlainGraph& g, StepPhase phase, const UpdateOutcome&) {
        auto rep = g.validate(&L, phase == StepPhase::AfterUpdate ? BalanceMode::PreBalance : BalanceMode::Balanced);
        if (!rep.ok()) {
          ++bad;
          if (first_error.empty()) first_error = rep.summary();
        }
      });
      for (std::size_t j = text.size(); j-- > 0;) {
        Symbol c = static_cast<Symbol>(text[j]) + 1;
        L = oracle::extend_bwt_naive(L, c).bwt;
        b.prepend(c);
        ++steps;
      }
    }
    std::ostringstream d;
    d << strings << " strings, " << steps << " steps validated twice each, " << bad << " violations";
    if (!first_error.empty()) d << "; " << first_error;
    return Outcome{bad == 0 && strings >= 100, d.str()};
  });

  report("bound_counters", [&] {
    std::size_t violations = 0;
    std::uint64_t worst_split = 0, worst_r = 1;
    for (const auto& res : plain_results) {
      const BuildStats& s = res.stats;
      bool ok = s.k <= s.r + s.k_split && s.k_split <= 2 * s.r && s.k_slow <= s.r && s.k_slow + s.k_fast == s.n - 1;
      violations += !ok;
      if (s.k_split * worst_r > worst_split * s.r) {
        worst_split = s.k_split;
        worst_r = s.r;
      }
    }
    std::ostringstream d;
    d << plain_results.size() << " runs, " << violations << " violations, max k_split/r = " << worst_split << "/"
      << worst_r;
    return Outcome{violations == 0 && plain_results.size() == corpus.size(), d.str()};
  });

  report("round_trip", [&] {
    std::size_t bad = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) bad += invert_rlbwt(plain_results[i].rlbwt) != corpus[i];
    if (cli.empty()) return Outcome{false, "no --cli given"};

    fs::remove_all(workdir);
    fs::create_directories(workdir);
    std::vector<Bytes> files;
    files.push_back({});
    files.push_back(Bytes(5000, 'z'));
    files.push_back(Bytes(300, 0));
    files.push_back(Bytes{0, 1, 0, 2, 0, 0, 255, 0});
    files.push_back(to_bytes("aabbabbabba\n"));
    for (std::size_t i = 0; files.size() < 60; i += 17) files.push_back(corpus[i]);
    std::size_t cli_bad = 0;
    for (std::size_t i = 0; i < files.size(); ++i) {
      std::string base = workdir + "/f" + std::to_string(i);
      io::write_file(base + ".in", files[i]);
      const char* backend = i % 2 ? "grouped" : "plain";
      if (run_cli(cli, "build --backend " + std::string(backend) + " \"" + base + ".in\" \"" + base + ".rlbwt\"") != 0 ||
          run_cli(cli, "decode \"" + base + ".rlbwt\" \"" + base + ".out\"") != 0 ||
          io::read_file(base + ".out") != files[i])
        ++cli_bad;
    }
    std::ostringstream d;
    d << corpus.size() << " in-process, " << bad << " bad; " << files.size() << " CLI files, " << cli_bad << " bad";
    return Outcome{bad == 0 && cli_bad == 0, d.str()};
  });

  report("backend_equivalence", [&] {
    std::size_t bad = 0;
    BuildOptions opts;
    opts.backend = Backend::Grouped;
    opts.group_size = 16;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      BuildResult g = rcomp_build(corpus[i], opts);
      if (g.rlbwt != plain_results[i].rlbwt || label_free(g.stats) != label_free(plain_results[i].stats)) ++bad;
    }
    return Outcome{bad == 0, std::to_string(corpus.size()) + " strings, " + std::to_string(bad) + " differ"};
  });

  report("scaling_sanity", [] {
    auto time_build = [](std::size_t n) {
      Bytes text = abracadabra(n);
      auto t0 = std::chrono::steady_clock::now();
      rcomp_build(text);
      return seconds_since(t0);
    };
    double small = time_build(std::size_t{1} << 16);
    double large = time_build(std::size_t{1} << 20);
    double ratio = large / small;
    std::ostringstream d;
    d << "2^16: " << small * 1e3 << " ms, 2^20: " << large * 1e3 << " ms, ratio " << ratio;
    return Outcome{ratio <= 24.0, d.str()};
  });

  report("repetitive_compression", [] {
    Bytes text = mutated_repeats();
    BuildResult res = rcomp_build(text);
    double density = static_cast<double>(res.stats.r) / static_cast<double>(res.stats.n);
    std::ostringstream d;
    d << "n=" << res.stats.n << " r=" << res.stats.r << " k=" << res.stats.k << " r/n=" << density;
    bool ok = res.stats.k <= 3 * res.stats.r && density <= 0.05 && res.rlbwt == rcomp::testing::oracle_rlbwt(text);
    return Outcome{ok, d.str()};
  });

  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
