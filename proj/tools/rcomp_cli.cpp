// rcomp: build, decode and inspect run-length BWT files.
//
// Exit codes: 0 ok, 1 I/O error, 2 internal error, 3 malformed input file,
// 4 verify mismatch, 5 input larger than the verify cap.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "rcomp/driver.hpp"
#include "rcomp/errors.hpp"
#include "rcomp/oracle.hpp"
#include "rcomp/rlbwt_io.hpp"

namespace {

using namespace rcomp;

enum Exit : int { kOk = 0, kIo = 1, kInternal = 2, kMalformed = 3, kMismatch = 4, kTooBig = 5 };

int cmd_build(const std::string& in, const std::string& out, std::uint32_t alpha, const std::string& backend_name,
              bool validate) {
  Bytes text = io::read_file(in);
  BuildOptions opts;
  opts.alpha = alpha;
  opts.backend = parse_backend(backend_name);
  opts.validate_steps = validate;

  auto t0 = std::chrono::steady_clock::now();
  BuildResult res = rcomp_build(text, opts);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();

  io::RlbwtFile file;
  file.flags = opts.backend == Backend::Grouped ? io::kFlagGrouped : 0;
  file.alpha = static_cast<std::uint16_t>(alpha);
  file.n = text.size();
  file.rlbwt = res.rlbwt;
  io::write_file(out, io::serialize(file));

  const BuildStats& s = res.stats;
  std::cout << s.n << ' ' << s.r << ' ' << s.k << ' ' << s.k_slow << ' ' << s.k_fast << ' ' << s.k_split << ' '
            << s.alpha << ' ' << to_string(s.backend) << ' ' << ms << '\n';
  return kOk;
}

int cmd_decode(const std::string& in, const std::string& out) {
  io::RlbwtFile file = io::parse(io::read_file(in));
  io::write_file(out, invert_rlbwt(file.rlbwt));
  return kOk;
}

int cmd_stats(const std::string& in) {
  io::RlbwtFile file = io::parse(io::read_file(in));
  std::set<Symbol> used;
  for (const auto& run : file.rlbwt.runs) {
    if (run.symbol != kSentinel) used.insert(run.symbol);
  }
  const double ratio = static_cast<double>(file.n) / static_cast<double>(file.rlbwt.r());
  std::printf("n=%llu r=%zu n/r=%.2f sigma=%zu\n", static_cast<unsigned long long>(file.n), file.rlbwt.r(), ratio,
              used.size());
  return kOk;
}

int cmd_verify(const std::string& in, std::uint64_t max_bytes, bool inject_fault) {
  Bytes text = io::read_file(in);
  if (text.size() > max_bytes) {
    std::cerr << "input has " << text.size() << " bytes, cap is " << max_bytes << '\n';
    return kTooBig;
  }
  Rlbwt got = rcomp_build(text).rlbwt;
  if (inject_fault && !got.runs.empty()) got.runs.back().length += 1;
  Rlbwt want = run_length_encode(oracle::bwt_naive(sentinelize(text)));
  if (got == want) {
    std::cout << "OK n=" << text.size() << " r=" << got.r() << '\n';
    return kOk;
  }
  std::size_t i = 0;
  while (i < got.runs.size() && i < want.runs.size() && got.runs[i] == want.runs[i]) ++i;
  std::cout << "MISMATCH at run " << i << ": engine ";
  if (i < got.runs.size()) std::cout << '(' << got.runs[i].symbol << ',' << got.runs[i].length << ')';
  else std::cout << "<end>";
  std::cout << ", oracle ";
  if (i < want.runs.size()) std::cout << '(' << want.runs[i].symbol << ',' << want.runs[i].length << ')';
  else std::cout << "<end>";
  std::cout << '\n';
  return kMismatch;
}

int cmd_selftest() {
  using namespace std::string_view_literals;
  const std::string_view cases[] = {""sv, "a"sv, "aabbabbabba"sv, "mississippi"sv, "abracadabraabracadabra"sv,
                                    "\x00\x01\x00\xff"sv};
  int failed = 0;
  for (auto c : cases) {
    Bytes text = to_bytes(c);
    Rlbwt got = rcomp_build(text).rlbwt;
    if (got != run_length_encode(oracle::bwt_naive(sentinelize(text))) || invert_rlbwt(got) != text) ++failed;
  }
  std::cout << (failed == 0 ? "selftest OK" : "selftest FAILED") << '\n';
  return failed == 0 ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online run-length BWT construction"};
  app.require_subcommand(1);

  std::string in, out, backend = "plain";
  std::uint32_t alpha = rcomp::kDefaultAlpha;
  bool validate = false, inject = false;
  std::uint64_t max_bytes = 1048576;

  auto* build = app.add_subcommand("build", "build the RLBWT of a file");
  build->add_option("input", in, "input file")->required();
  build->add_option("output", out, "output .rlbwt file")->required();
  build->add_option("--alpha", alpha, "balance parameter (>= 16)")->capture_default_str();
  build->add_option("--backend", backend, "node storage")->check(CLI::IsMember({"plain", "grouped"}))
      ->capture_default_str();
  build->add_flag("--validate-steps", validate, "check every graph invariant after each character");

  auto* decode = app.add_subcommand("decode", "recover the original bytes");
  decode->add_option("input", in, "input .rlbwt file")->required();
  decode->add_option("output", out, "output file")->required();

  auto* stats = app.add_subcommand("stats", "print n, r, n/r and the alphabet size");
  stats->add_option("input", in, "input .rlbwt file")->required();

  auto* verify = app.add_subcommand("verify", "compare the engine with a suffix-sorting reference");
  verify->add_option("input", in, "input file")->required();
  verify->add_option("--max-bytes", max_bytes, "refuse larger inputs")->capture_default_str();
  verify->add_flag("--inject-fault", inject)->group("");

  auto* selftest = app.add_subcommand("selftest", "run built-in checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) return cmd_build(in, out, alpha, backend, validate);
    if (*decode) return cmd_decode(in, out);
    if (*stats) return cmd_stats(in);
    if (*verify) return cmd_verify(in, max_bytes, inject);
    if (*selftest) return cmd_selftest();
  } catch (const rcomp::MalformedFile& e) {
    std::cerr << "malformed file: " << e.what() << '\n';
    return kMalformed;
  } catch (const rcomp::MalformedRlbwt& e) {
    std::cerr << "malformed file: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
