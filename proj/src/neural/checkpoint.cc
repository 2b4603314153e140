// Copyright 2026 The dqlab Authors.
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

#include "neural/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "core/error.h"

namespace dqlab {
namespace {

constexpr char kMagic[8] = {'D', 'Q', 'L', 'A', 'B', 'M', 'L', 'P'};
constexpr std::uint64_t kVersion = 1;
constexpr std::uint64_t kMaxLayers = 1024;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::uint64_t u64() {
    check(pos_ + 8 <= bytes_.size(), ErrorCode::kParse,
          "checkpoint: truncated at byte " + std::to_string(pos_));
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    }
    pos_ += 8;
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const MlpParameters& params) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_u64(out, kVersion);
  put_u64(out, params.layer_sizes().size());
  for (int s : params.layer_sizes()) put_u64(out, static_cast<std::uint64_t>(s));
  put_u64(out, params.shared_output_bias() ? 1 : 0);
  put_u64(out, params.parameter_count());
  for (double v : params.flat()) put_u64(out, std::bit_cast<std::uint64_t>(v));
  return out;
}

MlpParameters decode_checkpoint(const std::vector<std::uint8_t>& bytes) {
  check(bytes.size() >= 8 && std::memcmp(bytes.data(), kMagic, 8) == 0,
        ErrorCode::kParse, "checkpoint: bad magic");
  std::vector<std::uint8_t> body(bytes.begin() + 8, bytes.end());
  Reader in(body);
  check(in.u64() == kVersion, ErrorCode::kParse,
        "checkpoint: unsupported version");
  const std::uint64_t layers = in.u64();
  check(layers >= 2 && layers <= kMaxLayers, ErrorCode::kParse,
        "checkpoint: implausible layer count");
  std::vector<int> sizes;
  for (std::uint64_t i = 0; i < layers; ++i) {
    const std::uint64_t s = in.u64();
    check(s >= 1 && s <= (1u << 24), ErrorCode::kParse,
          "checkpoint: implausible layer size");
    sizes.push_back(static_cast<int>(s));
  }
  const std::uint64_t flags = in.u64();
  check((flags & ~std::uint64_t{1}) == 0, ErrorCode::kParse,
        "checkpoint: unknown flags");
  MlpParameters params(std::move(sizes), (flags & 1) != 0);
  const std::uint64_t count = in.u64();
  check(count == params.parameter_count() && in.remaining() == 8 * count,
        ErrorCode::kParse, "checkpoint: parameter count mismatch");
  for (double& v : params.flat()) v = in.f64();
  return params;
}

void save_checkpoint(const MlpParameters& params, const std::string& path) {
  const auto bytes = encode_checkpoint(params);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  check(static_cast<bool>(out), ErrorCode::kIo,
        "checkpoint: cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  check(static_cast<bool>(out), ErrorCode::kIo,
        "checkpoint: write failed for " + path);
}

MlpParameters load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  check(static_cast<bool>(in), ErrorCode::kIo,
        "checkpoint: cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace dqlab
