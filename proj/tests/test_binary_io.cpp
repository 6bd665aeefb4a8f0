#include <doctest.h>

#include <cmath>
#include <limits>

#include "punforge/binary_io.hpp"
#include "punforge/errors.hpp"

using namespace punforge;

TEST_CASE("writer and reader round-trip little-endian values") {
  BinaryWriter w;
  w.u8(7);
  w.u32(0xdeadbeef);
  w.u64(0x0123456789abcdefULL);
  w.f64(-2.5);
  w.f64(std::numeric_limits<double>::denorm_min());
  w.str("hare");
  const auto buf = w.take();
  CHECK(static_cast<unsigned char>(buf[1]) == 0xef);  // low byte first

  BinaryReader r(buf, "test");
  CHECK(r.u8() == 7);
  CHECK(r.u32() == 0xdeadbeef);
  CHECK(r.u64() == 0x0123456789abcdefULL);
  CHECK(r.f64() == -2.5);
  CHECK(r.f64() == std::numeric_limits<double>::denorm_min());
  CHECK(r.str() == "hare");
  CHECK(r.at_end());
  CHECK_THROWS_AS(r.u8(), FormatError);
}

TEST_CASE("containers check magic and truncation") {
  const auto data = write_container("TEST", {{"AAAA", "xyz"}, {"BBBB", ""}});
  auto sections = read_container(data, "TEST", "mem");
  CHECK(sections.size() == 2);
  CHECK(sections["AAAA"] == "xyz");
  CHECK(sections["BBBB"].empty());
  CHECK_THROWS_AS(read_container(data, "NOPE", "mem"), FormatError);
  CHECK_THROWS_AS(read_container(data.substr(0, data.size() - 1), "TEST", "mem"), FormatError);
}

TEST_CASE("fnv1a matches published test vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
}
