#include "punforge/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "punforge/errors.hpp"

namespace punforge {

namespace {

template <typename T>
void put_le(std::string& buf, T v) {
  static_assert(std::endian::native == std::endian::little ||
                std::endian::native == std::endian::big);
  char raw[sizeof(T)];
  std::memcpy(raw, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    }
  }
  buf.append(raw, sizeof(T));
}

template <typename T>
T get_le(const char* p) {
  char raw[sizeof(T)];
  std::memcpy(raw, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) {
      std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    }
  }
  T v;
  std::memcpy(&v, raw, sizeof(T));
  return v;
}

}  // namespace

void BinaryWriter::u32(std::uint32_t v) { put_le(buf_, v); }
void BinaryWriter::u64(std::uint64_t v) { put_le(buf_, v); }
void BinaryWriter::f64(double v) { put_le(buf_, std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  buf_.append(s);
}

void BinaryReader::fail(const std::string& msg) const {
  throw FormatError(what_ + ": " + msg + " (at byte " + std::to_string(pos_) + ")");
}

void BinaryReader::need(std::size_t n) const {
  if (data_.size() - pos_ < n) fail("unexpected end of data");
}

std::uint8_t BinaryReader::u8() {
  need(1);
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint32_t BinaryReader::u32() {
  need(4);
  auto v = get_le<std::uint32_t>(data_.data() + pos_);
  pos_ += 4;
  return v;
}

std::uint64_t BinaryReader::u64() {
  need(8);
  auto v = get_le<std::uint64_t>(data_.data() + pos_);
  pos_ += 8;
  return v;
}

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string_view BinaryReader::bytes(std::size_t n) {
  need(n);
  auto s = data_.substr(pos_, n);
  pos_ += n;
  return s;
}

std::string BinaryReader::str() {
  auto n = u32();
  return std::string(bytes(n));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed for " + path.string());
}

std::string write_container(std::string_view magic, const Sections& sections) {
  BinaryWriter w;
  w.bytes(magic);
  w.u32(static_cast<std::uint32_t>(sections.size()));
  for (const auto& [tag, payload] : sections) {
    if (tag.size() != 4) throw InvalidArgument("section tag must be 4 bytes: " + tag);
    w.bytes(tag);
    w.u64(payload.size());
    w.bytes(payload);
  }
  return w.take();
}

Sections read_container(std::string_view data, std::string_view magic,
                        const std::string& what) {
  BinaryReader r(data, what);
  if (data.size() < magic.size() || r.bytes(magic.size()) != magic) {
    throw FormatError(what + ": bad magic, expected " + std::string(magic));
  }
  Sections out;
  auto n = r.u32();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::string tag(r.bytes(4));
    auto len = r.u64();
    if (len > r.remaining()) r.fail("section " + tag + " overruns file");
    out[tag] = std::string(r.bytes(static_cast<std::size_t>(len)));
  }
  return out;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace punforge
