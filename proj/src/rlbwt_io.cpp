#include "rcomp/rlbwt_io.hpp"

#include <fstream>
#include <iterator>

#include "rcomp/errors.hpp"

namespace rcomp::io {

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
  do {
    std::uint8_t byte = value & 0x7F;
    value >>= 7;
    if (value != 0) byte |= 0x80;
    out.push_back(byte);
  } while (value != 0);
}

std::uint64_t get_varint(const std::vector<std::uint8_t>& in, std::size_t& pos) {
  std::uint64_t value = 0;
  for (unsigned shift = 0;; shift += 7) {
    if (pos >= in.size()) throw MalformedFile("truncated varint");
    if (shift > 63) throw MalformedFile("varint longer than 64 bits");
    std::uint8_t byte = in[pos++];
    std::uint64_t bits = byte & 0x7F;
    if (shift == 63 && bits > 1) throw MalformedFile("varint overflows 64 bits");
    value |= bits << shift;
    if (!(byte & 0x80)) return value;
  }
}

std::vector<std::uint8_t> serialize(const RlbwtFile& file) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kVersion);
  out.push_back(file.flags);
  out.push_back(static_cast<std::uint8_t>(file.alpha & 0xFF));
  out.push_back(static_cast<std::uint8_t>(file.alpha >> 8));
  put_varint(out, file.n);
  put_varint(out, file.rlbwt.runs.size());
  for (const auto& run : file.rlbwt.runs) {
    put_varint(out, run.symbol);
    put_varint(out, run.length);
  }
  return out;
}

RlbwtFile parse(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 8) throw MalformedFile("file shorter than the fixed header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw MalformedFile("bad magic");
  if (bytes[4] != kVersion) throw MalformedFile("unsupported version " + std::to_string(bytes[4]));
  RlbwtFile f;
  f.flags = bytes[5];
  f.alpha = static_cast<std::uint16_t>(bytes[6] | (bytes[7] << 8));
  std::size_t pos = 8;
  f.n = get_varint(bytes, pos);
  std::uint64_t r = get_varint(bytes, pos);
  // Each record needs at least two bytes.
  if (r > (bytes.size() - pos) / 2) throw MalformedFile("run count exceeds file size");
  f.rlbwt.runs.reserve(r);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < r; ++i) {
    std::uint64_t sym = get_varint(bytes, pos);
    std::uint64_t len = get_varint(bytes, pos);
    if (sym > 256) throw MalformedFile("symbol out of range");
    if (len == 0 || total + len < total) throw MalformedFile("bad run length");
    total += len;
    f.rlbwt.runs.push_back({static_cast<Symbol>(sym), len});
  }
  if (pos != bytes.size()) throw MalformedFile("trailing bytes after the last run");
  f.rlbwt.total_len = total;
  if (total != f.n + 1) throw MalformedFile("run lengths do not add up to n + 1");
  try {
    check_rlbwt(f.rlbwt);
  } catch (const MalformedRlbwt& e) {
    throw MalformedFile(e.what());
  }
  return f;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw std::ios_base::failure("read error on " + path);
  return data;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::ios_base::failure("write error on " + path);
}

}  // namespace rcomp::io
