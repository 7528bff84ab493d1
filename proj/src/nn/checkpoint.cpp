/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 xdiffsim contributors
 * SPDX-License-Identifier: Apache-2.0
 */
#include "nn/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace xdiff::nn {

namespace {
constexpr char kMagic[4] = {'X', 'D', 'N', 'N'};
constexpr uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("checkpoint: truncated file");
  return v;
}
}  // namespace

void TensorBundle::add(const std::vector<uint32_t>& dims, const float* data, size_t n) {
  size_t expect = 1;
  for (uint32_t d : dims) expect *= d;
  if (expect != n) throw std::invalid_argument("TensorBundle::add: dims mismatch");
  Entry e;
  e.dims = dims;
  e.data.assign(data, data + n);
  entries.push_back(std::move(e));
}

void TensorBundle::save(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("checkpoint: cannot open " + path);
  os.write(kMagic, 4);
  put<uint32_t>(os, kVersion);
  put<uint32_t>(os, static_cast<uint32_t>(entries.size()));
  for (const Entry& e : entries) {
    put<uint32_t>(os, static_cast<uint32_t>(e.dims.size()));
    for (uint32_t d : e.dims) put<uint32_t>(os, d);
    os.write(reinterpret_cast<const char*>(e.data.data()),
             static_cast<std::streamsize>(e.data.size() * sizeof(float)));
  }
  if (!os) throw std::runtime_error("checkpoint: write failed for " + path);
}

TensorBundle TensorBundle::load(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  const uint32_t version = get<uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("checkpoint: unsupported version");
  const uint32_t count = get<uint32_t>(is);
  TensorBundle b;
  b.entries.resize(count);
  for (Entry& e : b.entries) {
    const uint32_t rank = get<uint32_t>(is);
    e.dims.resize(rank);
    size_t n = 1;
    for (uint32_t& d : e.dims) {
      d = get<uint32_t>(is);
      n *= d;
    }
    e.data.resize(n);
    is.read(reinterpret_cast<char*>(e.data.data()),
            static_cast<std::streamsize>(n * sizeof(float)));
    if (!is) throw std::runtime_error("checkpoint: truncated tensor data");
  }
  return b;
}

void append_mlp(TensorBundle& b, const Mlp& net) {
  for (size_t l = 0; l < net.num_layers(); ++l) {
    const DenseLayer& lay = net.layer(l);
    b.add({static_cast<uint32_t>(lay.w.rows), static_cast<uint32_t>(lay.w.cols)},
          lay.w.d.data(), lay.w.size());
    b.add({static_cast<uint32_t>(lay.b.size())}, lay.b.data(), lay.b.size());
  }
}

size_t restore_mlp(const TensorBundle& b, size_t start, Mlp& net) {
  auto views = net.params();
  if (start + views.size() > b.entries.size())
    throw std::runtime_error("checkpoint: bundle too small for network");
  for (size_t i = 0; i < views.size(); ++i) {
    const auto& e = b.entries[start + i];
    if (e.data.size() != views[i].n)
      throw std::runtime_error("checkpoint: tensor shape mismatch");
    std::memcpy(views[i].p, e.data.data(), e.data.size() * sizeof(float));
  }
  return start + views.size();
}

}  // namespace xdiff::nn
