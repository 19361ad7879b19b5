#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "rcomp/driver.hpp"
#include "rcomp/errors.hpp"
#include "rcomp/oracle.hpp"
#include "rcomp/rlbwt_io.hpp"

namespace py = pybind11;
using namespace rcomp;

namespace {

Bytes as_bytes(const py::bytes& b) {
  std::string s = b;
  return Bytes(s.begin(), s.end());
}

py::bytes to_py(const Bytes& b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

using RunList = std::vector<std::pair<Symbol, std::uint64_t>>;

RunList runs_of(const Rlbwt& r) {
  RunList out;
  out.reserve(r.runs.size());
  for (const auto& run : r.runs) out.emplace_back(run.symbol, run.length);
  return out;
}

Rlbwt rlbwt_of(const RunList& runs) {
  Rlbwt r;
  for (auto [s, n] : runs) {
    r.runs.push_back({s, n});
    r.total_len += n;
  }
  return r;
}

py::dict stats_dict(const BuildStats& s) {
  py::dict d;
  d["n"] = s.n;
  d["r"] = s.r;
  d["k"] = s.k;
  d["k_slow"] = s.k_slow;
  d["k_fast"] = s.k_fast;
  d["k_split"] = s.k_split;
  d["alpha"] = s.alpha;
  d["backend"] = std::string(to_string(s.backend));
  d["max_k"] = s.max_k;
  return d;
}

}  // namespace

PYBIND11_MODULE(_rcomp, m) {
  m.doc() = "Online construction of the run-length BWT";

  auto base = py::register_exception<RcompError>(m, "RcompError");
  py::register_exception<InvalidAlpha>(m, "InvalidAlpha", base.ptr());
  py::register_exception<SentinelInput>(m, "SentinelInput", base.ptr());
  py::register_exception<MalformedRlbwt>(m, "MalformedRlbwt", base.ptr());
  py::register_exception<MalformedFile>(m, "MalformedFile", base.ptr());
  py::register_exception<CorruptState>(m, "CorruptState", base.ptr());

  m.attr("SENTINEL") = kSentinel;
  m.attr("DEFAULT_ALPHA") = kDefaultAlpha;

  m.def(
      "build",
      [](const py::bytes& data, std::uint32_t alpha, const std::string& backend, int group_size, bool validate) {
        BuildOptions opts;
        opts.alpha = alpha;
        opts.backend = parse_backend(backend);
        opts.group_size = group_size;
        opts.validate_steps = validate;
        Bytes text = as_bytes(data);
        BuildResult res;
        {
          py::gil_scoped_release release;
          res = rcomp_build(text, opts);
        }
        return py::make_tuple(runs_of(res.rlbwt), stats_dict(res.stats));
      },
      py::arg("data"), py::arg("alpha") = kDefaultAlpha, py::arg("backend") = "plain", py::arg("group_size") = 16,
      py::arg("validate") = false,
      "Return (runs, stats) for data. Runs are (symbol, length) pairs; byte b is symbol b + 1, 0 is the sentinel.");

  m.def("invert", [](const RunList& runs) { return to_py(invert_rlbwt(rlbwt_of(runs))); }, py::arg("runs"));

  m.def(
      "bwt_reference",
      [](const py::bytes& data) { return runs_of(run_length_encode(oracle::bwt_naive(sentinelize(as_bytes(data))))); },
      py::arg("data"), "Run-length BWT computed by suffix sorting.");

  m.def(
      "dumps",
      [](const RunList& runs, std::uint64_t n, std::uint16_t alpha) {
        io::RlbwtFile f;
        f.alpha = alpha;
        f.n = n;
        f.rlbwt = rlbwt_of(runs);
        return to_py(io::serialize(f));
      },
      py::arg("runs"), py::arg("n"), py::arg("alpha") = kDefaultAlpha);

  m.def(
      "loads",
      [](const py::bytes& blob) {
        io::RlbwtFile f = io::parse(as_bytes(blob));
        return py::make_tuple(runs_of(f.rlbwt), f.n, f.alpha);
      },
      py::arg("blob"));

  py::class_<RcompBuilder>(m, "Builder")
      .def(py::init<std::uint32_t>(), py::arg("alpha") = kDefaultAlpha)
      .def("prepend", [](RcompBuilder& b, std::uint8_t byte) { b.prepend_byte(byte); }, py::arg("byte"))
      .def(
          "prepend_bytes",
          [](RcompBuilder& b, const py::bytes& data) {
            Bytes bytes = as_bytes(data);
            for (auto it = bytes.rbegin(); it != bytes.rend(); ++it) b.prepend_byte(*it);
          },
          py::arg("data"), "Prepend data so that it becomes the new prefix of the text.")
      .def("finish",
           [](const RcompBuilder& b) {
             BuildResult res = b.finish();
             return py::make_tuple(runs_of(res.rlbwt), stats_dict(res.stats));
           })
      .def_property_readonly("k", [](const RcompBuilder& b) { return b.graph().k(); })
      .def_property_readonly("length", [](const RcompBuilder& b) { return b.graph().delta(); })
      .def("validate", [](const RcompBuilder& b) { return b.graph().validate().summary(); });
}
