#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace punforge {

// Little-endian serialization into an in-memory buffer.
class BinaryWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f64(double v);
  void bytes(std::string_view s) { buf_.append(s); }
  // Length-prefixed (u32) string.
  void str(std::string_view s);

  const std::string& buffer() const { return buf_; }
  std::string take() { return std::move(buf_); }

 private:
  std::string buf_;
};

// Bounds-checked little-endian reader; throws FormatError on truncation.
class BinaryReader {
 public:
  BinaryReader(std::string_view data, std::string what)
      : data_(data), what_(std::move(what)) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  double f64();
  std::string_view bytes(std::size_t n);
  std::string str();

  bool at_end() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }
  [[noreturn]] void fail(const std::string& msg) const;

 private:
  void need(std::size_t n) const;

  std::string_view data_;
  std::string what_;
  std::size_t pos_ = 0;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view data);

// Sectioned container: 4-byte magic, u32 section count, then per section a
// 4-byte tag, u64 payload length and the payload.
using Sections = std::map<std::string, std::string>;

std::string write_container(std::string_view magic, const Sections& sections);
Sections read_container(std::string_view data, std::string_view magic,
                        const std::string& what);

// FNV-1a, 64 bit.
std::uint64_t fnv1a(std::string_view data,
                    std::uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace punforge
