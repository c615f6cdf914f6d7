// Copyright 2026 The Pesagg Authors
// SPDX-License-Identifier: Apache-2.0

#include "pesagg/bytes.hpp"

namespace pesagg {

std::string to_hex(std::span<const uint8_t> data) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(data.size() * 2);
  for (uint8_t b : data) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 0xf]);
  }
  return s;
}

static int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw CodecError("invalid hex digit");
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw CodecError("odd hex length");
  Bytes out(hex.size() / 2);
  for (size_t i = 0; i < out.size(); ++i)
    out[i] = static_cast<uint8_t>(hex_val(hex[2 * i]) << 4 | hex_val(hex[2 * i + 1]));
  return out;
}

void ByteWriter::u32(uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::u64(uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void ByteWriter::varint(uint64_t v) {
  while (v >= 0x80) {
    out_.push_back(static_cast<uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out_.push_back(static_cast<uint8_t>(v));
}

void ByteWriter::raw(std::span<const uint8_t> data) {
  out_.insert(out_.end(), data.begin(), data.end());
}

void ByteWriter::blob(std::span<const uint8_t> data) {
  u32(static_cast<uint32_t>(data.size()));
  raw(data);
}

void ByteReader::need(size_t n) const {
  if (data_.size() - pos_ < n) throw CodecError("truncated message");
}

uint8_t ByteReader::u8() {
  need(1);
  return data_[pos_++];
}

uint32_t ByteReader::u32() {
  need(4);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(data_[pos_++]) << (8 * i);
  return v;
}

uint64_t ByteReader::u64() {
  need(8);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(data_[pos_++]) << (8 * i);
  return v;
}

uint64_t ByteReader::varint() {
  uint64_t v = 0;
  int shift = 0;
  while (true) {
    need(1);
    uint8_t b = data_[pos_++];
    if (shift >= 63 && (b & 0x7e)) throw CodecError("varint overflow");
    v |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
    shift += 7;
  }
}

Bytes ByteReader::raw(size_t n) {
  need(n);
  Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
  pos_ += n;
  return out;
}

Bytes ByteReader::blob() {
  uint32_t n = u32();
  return raw(n);
}

void ByteReader::expect_done() const {
  if (!done()) throw CodecError("trailing bytes after message");
}

}  // namespace pesagg
