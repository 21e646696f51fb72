// Copyright 2026 The Relic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relic/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <zlib.h>

#include "base64.h"
#include "json.hpp"
#include "relic/error.h"

namespace relic {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kMagic = "RELIC-GATE-CHECKPOINT";

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string hex32(std::uint32_t v) {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", v);
  return buf;
}

std::vector<std::uint8_t> to_le_bytes(std::span<const double> values) {
  std::vector<std::uint8_t> bytes(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (int b = 0; b < 8; ++b) {
      bytes[i * 8 + static_cast<std::size_t>(b)] =
          static_cast<std::uint8_t>(bits >> (8 * b));
    }
  }
  return bytes;
}

// Splits off the next '\n'-terminated line; false if none is left.
bool take_line(std::string_view& rest, std::string_view& line) {
  const auto nl = rest.find('\n');
  if (nl == std::string_view::npos) return false;
  line = rest.substr(0, nl);
  rest.remove_prefix(nl + 1);
  return true;
}

}  // namespace

std::string serialize_model(const GateModel& model, std::uint64_t seed) {
  const ModelShape& shape = model.shape();
  json meta;
  meta["shape"] = json{{"dims", shape.dims},
                       {"heads", shape.heads},
                       {"activation", std::string(to_string(shape.activation))},
                       {"embedding_activation",
                        std::string(to_string(shape.embedding_activation))}};
  meta["seed"] = seed;
  meta["param_count"] = model.param_count();
  std::string body = std::string(kMagic) + " " + std::to_string(kCheckpointVersion) +
                     "\n" + meta.dump() + "\n" +
                     internal::base64_encode(to_le_bytes(model.params())) + "\n";
  return body + "crc32 " + hex32(crc_of(body)) + "\n";
}

LoadedModel deserialize_model(std::string_view text) {
  std::string_view rest = text;
  std::string_view header, meta_line, payload, trailer;
  if (!take_line(rest, header) || !header.starts_with(kMagic)) {
    throw InputError("checkpoint: missing header");
  }
  const std::string expected =
      std::string(kMagic) + " " + std::to_string(kCheckpointVersion);
  if (header != expected) {
    throw InputError("checkpoint: version mismatch (found '" + std::string(header) +
                     "', expected '" + expected + "')");
  }
  if (!take_line(rest, meta_line) || !take_line(rest, payload) ||
      !take_line(rest, trailer) || !trailer.starts_with("crc32 ")) {
    throw InputError("checkpoint: checksum error (file truncated)");
  }
  const std::size_t body_len = static_cast<std::size_t>(trailer.data() - text.data());
  if (trailer.substr(6) != hex32(crc_of(text.substr(0, body_len)))) {
    throw InputError("checkpoint: checksum error");
  }

  LoadedModel loaded;
  ModelShape shape;
  std::size_t count = 0;
  try {
    const json meta = json::parse(meta_line);
    shape.dims = meta.at("shape").at("dims").get<std::vector<int>>();
    shape.heads = meta.at("shape").at("heads").get<int>();
    shape.activation =
        parse_activation(meta.at("shape").at("activation").get<std::string>());
    shape.embedding_activation = parse_activation(
        meta.at("shape").at("embedding_activation").get<std::string>());
    loaded.seed = meta.at("seed").get<std::uint64_t>();
    count = meta.at("param_count").get<std::size_t>();
  } catch (const json::exception& e) {
    throw InputError(std::string("checkpoint: bad metadata: ") + e.what());
  }
  loaded.model = GateModel(shape);
  const auto bytes = internal::base64_decode(payload);
  if (count != loaded.model.param_count() || bytes.size() != count * 8) {
    throw InputError("checkpoint: parameter count does not match shape");
  }
  auto params = loaded.model.params();
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
      bits |= static_cast<std::uint64_t>(bytes[i * 8 + static_cast<std::size_t>(b)])
              << (8 * b);
    }
    params[i] = std::bit_cast<double>(bits);
  }
  return loaded;
}

void save_model(const GateModel& model, std::uint64_t seed,
                const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write checkpoint '" + path.string() + "'");
  out << serialize_model(model, seed);
  if (!out) throw InputError("failed writing checkpoint '" + path.string() + "'");
}

LoadedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open checkpoint '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return deserialize_model(buffer.str());
}

}  // namespace relic
