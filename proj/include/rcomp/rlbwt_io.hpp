#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcomp/text_model.hpp"

namespace rcomp::io {

inline constexpr char kMagic[4] = {'R', 'C', 'M', 'P'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::uint8_t kFlagGrouped = 0x01;

struct RlbwtFile {
  std::uint8_t flags = 0;
  std::uint16_t alpha = 16;
  std::uint64_t n = 0;  // original byte count, sentinel excluded
  Rlbwt rlbwt;

  bool operator==(const RlbwtFile&) const = default;
};

void put_varint(std::vector<std::uint8_t>& out, std::uint64_t value);
// Reads one varint at pos and advances it; throws MalformedFile on
// truncation or overlong encodings.
std::uint64_t get_varint(const std::vector<std::uint8_t>& in, std::size_t& pos);

std::vector<std::uint8_t> serialize(const RlbwtFile& file);
RlbwtFile parse(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace rcomp::io
