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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

namespace rnktm::io {

using Magic = std::array<char, 4>;

// Little-endian writer over a std::ostream. All on-disk formats in this
// library go through this class so that byte order is fixed regardless of
// host.
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream& out) : out_(out) {}

  void magic(const Magic& m);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void f32(float v);
  void f64(double v);
  void bytes(std::string_view data);

  // Writes a u32 byte length followed by the UTF-8 payload.
  void sized_string(std::string_view s);

 private:
  std::ostream& out_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream& in, std::string context) : in_(in), context_(std::move(context)) {}

  // Throws FormatError if the next four bytes differ from `expected`.
  void expect_magic(const Magic& expected);
  std::uint32_t u32();
  std::uint64_t u64();
  float f32();
  double f64();
  std::string bytes(std::size_t n);
  std::string sized_string(std::size_t max_len = 1u << 30);

  // True if the stream has no more bytes.
  bool at_end();

  const std::string& context() const { return context_; }

 private:
  void read_raw(char* dst, std::size_t n);

  std::istream& in_;
  std::string context_;
};

// Opens for binary write/read, throwing rnktm::Error with the path on failure.
std::ofstream open_for_write(const std::filesystem::path& path);
std::ifstream open_for_read(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace rnktm::io
