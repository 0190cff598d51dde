//
// Copyright 2026 The pancakes Authors
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
//

// Dataset files.
//
//   <compact JSON header>\n
//   dim * m little-endian IEEE-754 doubles, row-major
//   m label bytes, 0x01 for +1 and 0xFF for -1
//
// The header carries version, family, dim, m, params, seed and, when a
// planted direction exists, its SHA-256 digest. The direction itself is
// written only on request.

#ifndef PANCAKES_DATASET_IO_HPP
#define PANCAKES_DATASET_IO_HPP

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "pancakes/dataset.hpp"
#include "pancakes/errors.hpp"

namespace pancakes {

inline constexpr int kDatasetFormatVersion = 1;

namespace detail {

inline void put_le64(std::uint64_t v, char* out) {
  for (int b = 0; b < 8; ++b) out[b] = static_cast<char>((v >> (8 * b)) & 0xFF);
}

inline std::uint64_t get_le64(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int b = 7; b >= 0; --b) v = (v << 8) | in[b];
  return v;
}

}  // namespace detail

/// Lowercase hex SHA-256 of the little-endian bytes of w.
inline std::string direction_digest(std::span<const double> w) {
  std::string bytes(w.size() * 8, '\0');
  for (std::size_t i = 0; i < w.size(); ++i) {
    detail::put_le64(std::bit_cast<std::uint64_t>(w[i]), bytes.data() + 8 * i);
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw ConsistencyError("direction_digest: SHA-256 failed");
  }
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

/// The dataset as a learner would see it: hidden direction replaced by its digest.
inline LabeledDataset withhold_direction(LabeledDataset ds) {
  if (ds.meta().hidden_direction) {
    ds.meta().direction_digest = direction_digest(*ds.meta().hidden_direction);
    ds.meta().hidden_direction.reset();
  }
  return ds;
}

struct SaveOptions {
  bool expose_planted = false;
};

inline std::string dataset_header(const LabeledDataset& ds, const SaveOptions& opts = {}) {
  nlohmann::json h;
  h["version"] = kDatasetFormatVersion;
  h["family"] = ds.meta().family;
  h["dim"] = ds.dim();
  h["m"] = ds.size();
  h["params"] = ds.meta().params;
  h["seed"] = ds.meta().seed;
  if (ds.meta().hidden_direction) {
    h["direction_digest"] = direction_digest(*ds.meta().hidden_direction);
    if (opts.expose_planted) h["hidden_direction"] = *ds.meta().hidden_direction;
  } else if (!ds.meta().direction_digest.empty()) {
    h["direction_digest"] = ds.meta().direction_digest;
  }
  return h.dump();
}

inline std::string serialize_dataset(const LabeledDataset& ds, const SaveOptions& opts = {}) {
  std::string out = dataset_header(ds, opts);
  out.push_back('\n');
  const std::size_t header = out.size();
  out.resize(header + ds.points().size() * 8 + ds.size());
  char* p = out.data() + header;
  for (double v : ds.points()) {
    detail::put_le64(std::bit_cast<std::uint64_t>(v), p);
    p += 8;
  }
  for (auto y : ds.labels()) *p++ = static_cast<char>(y > 0 ? 0x01 : 0xFF);
  return out;
}

inline LabeledDataset deserialize_dataset(const std::string& bytes) {
  const auto nl = bytes.find('\n');
  if (nl == std::string::npos) throw IoError("dataset: missing header line");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.substr(0, nl));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("dataset: malformed header: ") + e.what());
  }
  if (!h.is_object() || h.value("version", 0) != kDatasetFormatVersion) {
    throw IoError("dataset: unsupported format version");
  }
  std::size_t dim = 0;
  std::size_t m = 0;
  LabeledDataset ds;
  try {
    dim = h.at("dim").get<std::size_t>();
    m = h.at("m").get<std::size_t>();
    ds = LabeledDataset(dim);
    ds.meta().family = h.at("family").get<std::string>();
    ds.meta().seed = h.at("seed").get<std::uint64_t>();
    ds.meta().params = h.at("params");
    if (h.contains("hidden_direction")) {
      ds.meta().hidden_direction = h["hidden_direction"].get<std::vector<double>>();
    }
    if (h.contains("direction_digest") && !ds.meta().hidden_direction) {
      ds.meta().direction_digest = h["direction_digest"].get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("dataset: bad header field: ") + e.what());
  }
  const std::size_t payload = bytes.size() - nl - 1;
  if (dim == 0 || payload != dim * m * 8 + m) {
    throw IoError("dataset: payload is " + std::to_string(payload) + " bytes, header implies " +
                  std::to_string(dim * m * 8 + m));
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + nl + 1);
  ds.reserve(m);
  const unsigned char* labels = p + dim * m * 8;
  std::vector<double> x(dim);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = std::bit_cast<double>(detail::get_le64(p + 8 * (i * dim + j)));
    }
    int y = 0;
    if (labels[i] == 0x01) {
      y = 1;
    } else if (labels[i] == 0xFF) {
      y = -1;
    } else {
      throw IoError("dataset: label byte " + std::to_string(labels[i]) + " is neither 0x01 nor 0xFF");
    }
    ds.push_back(x, y);
  }
  return ds;
}

inline void save_dataset(const std::string& path, const LabeledDataset& ds,
                         const SaveOptions& opts = {}) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  const std::string bytes = serialize_dataset(ds, opts);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw IoError("write to " + path + " failed");
}

inline LabeledDataset load_dataset(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return deserialize_dataset(buf.str());
}

}  // namespace pancakes

#endif  // PANCAKES_DATASET_IO_HPP
