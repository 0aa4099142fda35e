// Copyright 2026 The rnktm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rnktm/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rnktm/error.hpp"

namespace rnktm::io {
namespace {

template <typename T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::big) {
    std::array<char, sizeof(T)> raw;
    std::memcpy(raw.data(), &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(raw[i], raw[sizeof(T) - 1 - i]);
    std::memcpy(&v, raw.data(), sizeof(T));
  }
  return v;
}

}  // namespace

void BinaryWriter::magic(const Magic& m) { out_.write(m.data(), 4); }

void BinaryWriter::u32(std::uint32_t v) {
  v = to_little(v);
  out_.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void BinaryWriter::u64(std::uint64_t v) {
  v = to_little(v);
  out_.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void BinaryWriter::f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }

void BinaryWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BinaryWriter::bytes(std::string_view data) {
  out_.write(data.data(), static_cast<std::streamsize>(data.size()));
}

void BinaryWriter::sized_string(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  bytes(s);
}

void BinaryReader::read_raw(char* dst, std::size_t n) {
  in_.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in_.gcount()) != n) {
    throw FormatError(context_ + ": truncated file");
  }
}

void BinaryReader::expect_magic(const Magic& expected) {
  Magic got{};
  in_.read(got.data(), 4);
  if (in_.gcount() != 4 || got != expected) {
    throw FormatError(context_ + ": bad magic, expected '" +
                      std::string(expected.data(), 4) + "'");
  }
}

std::uint32_t BinaryReader::u32() {
  std::uint32_t v;
  read_raw(reinterpret_cast<char*>(&v), sizeof v);
  return to_little(v);
}

std::uint64_t BinaryReader::u64() {
  std::uint64_t v;
  read_raw(reinterpret_cast<char*>(&v), sizeof v);
  return to_little(v);
}

float BinaryReader::f32() { return std::bit_cast<float>(u32()); }

double BinaryReader::f64() { return std::bit_cast<double>(u64()); }

std::string BinaryReader::bytes(std::size_t n) {
  std::string s(n, '\0');
  if (n > 0) read_raw(s.data(), n);
  return s;
}

std::string BinaryReader::sized_string(std::size_t max_len) {
  const std::uint32_t n = u32();
  if (n > max_len) throw FormatError(context_ + ": string length out of range");
  return bytes(n);
}

bool BinaryReader::at_end() {
  return in_.peek() == std::char_traits<char>::eof();
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open for reading: " + path.string());
  return in;
}

std::string read_text_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  auto out = open_for_write(path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rnktm::io
