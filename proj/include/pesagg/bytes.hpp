// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PESAGG_BYTES_HPP_
#define PESAGG_BYTES_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pesagg {

using Bytes = std::vector<uint8_t>;

std::string to_hex(std::span<const uint8_t> data);
Bytes from_hex(std::string_view hex);

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Little-endian writer for the canonical wire encodings.  Every protocol
// message and golden file goes through this, so the byte order never varies.
class ByteWriter {
 public:
  void u8(uint8_t v) { out_.push_back(v); }
  void u32(uint32_t v);
  void u64(uint64_t v);
  void varint(uint64_t v);  // LEB128
  void raw(std::span<const uint8_t> data);
  void blob(std::span<const uint8_t> data);  // u32 length + bytes

  const Bytes& bytes() const { return out_; }
  Bytes take() { return std::move(out_); }
  size_t size() const { return out_.size(); }

 private:
  Bytes out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint8_t u8();
  uint32_t u32();
  uint64_t u64();
  uint64_t varint();
  Bytes raw(size_t n);
  Bytes blob();

  size_t remaining() const { return data_.size() - pos_; }
  bool done() const { return pos_ == data_.size(); }
  void expect_done() const;

 private:
  void need(size_t n) const;
  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

}  // namespace pesagg

#endif  // PESAGG_BYTES_HPP_
