// Copyright 2026 The trajsafe Authors
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

#include "trajsafe/batch_io.hpp"

#include <bit>
#include <cstring>

#include "trajsafe/errors.hpp"

namespace trajsafe
{

namespace
{

class Writer
{
public:
  void u32(std::uint32_t v)
  {
    for (int i = 0; i < 4; ++i) {
      out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
    }
  }
  void f64(double d)
  {
    const auto v = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) {
      out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFFu));
    }
  }
  void point(const Vec2 & p)
  {
    f64(p.x);
    f64(p.y);
  }
  void raw(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

private:
  std::string out_;
};

class Reader
{
public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint32_t u32()
  {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 4;
    return v;
  }
  double f64()
  {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
    }
    pos_ += 8;
    return std::bit_cast<double>(v);
  }
  Vec2 point()
  {
    const double x = f64();
    return {x, f64()};
  }
  std::string_view raw(std::size_t n)
  {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

private:
  void need(std::size_t n) const
  {
    if (bytes_.size() - pos_ < n) {
      throw ProtocolError(
        "truncated payload: needed " + std::to_string(n) + " bytes at offset " + std::to_string(pos_));
    }
  }

  std::string_view bytes_;
  std::size_t pos_{0};
};

void write_polygons(Writer & w, const std::vector<Polygon> & polys)
{
  w.u32(static_cast<std::uint32_t>(polys.size()));
  for (const auto & poly : polys) {
    w.u32(static_cast<std::uint32_t>(poly.size()));
    for (const auto & v : poly) {
      w.point(v);
    }
  }
}

std::vector<Polygon> read_polygons(Reader & r)
{
  const std::uint32_t count = r.u32();
  std::vector<Polygon> polys;
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t n = r.u32();
    if (r.remaining() / 16 < n) {
      throw ProtocolError("polygon vertex count exceeds payload");
    }
    Polygon poly(n);
    for (auto & v : poly) {
      v = r.point();
    }
    polys.push_back(std::move(poly));
  }
  return polys;
}

std::string printable_magic(std::string_view m)
{
  std::string out;
  for (unsigned char c : m) {
    if (c >= 0x20 && c < 0x7F) {
      out += static_cast<char>(c);
    } else {
      static const char * hex = "0123456789abcdef";
      out += "\\x";
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out;
}

}  // namespace

std::string encode_batch(const LossBatch & batch)
{
  Writer w;
  w.raw(std::string_view(kBatchMagic.data(), kBatchMagic.size()));
  w.u32(kBatchVersion);
  w.u32(static_cast<std::uint32_t>(batch.size()));
  w.u32(static_cast<std::uint32_t>(batch.horizon));
  w.f64(batch.dt);
  for (const auto & s : batch.samples) {
    for (const auto & p : s.waypoints) {
      w.point(p);
    }
    w.u32(static_cast<std::uint32_t>(s.agent_positions.size()));
    for (std::size_t t = 0; t < batch.horizon; ++t) {
      for (const auto & track : s.agent_positions) {
        w.point(track[t]);
      }
    }
    write_polygons(w, s.drivable_area.outers);
    write_polygons(w, s.drivable_area.holes);
  }
  return w.take();
}

LossBatch decode_batch(std::string_view bytes)
{
  Reader r(bytes);
  const std::string_view magic = r.raw(4);
  if (magic != std::string_view(kBatchMagic.data(), kBatchMagic.size())) {
    throw ProtocolError("bad magic bytes '" + printable_magic(magic) + "', expected 'DSLB'");
  }
  const std::uint32_t version = r.u32();
  if (version != kBatchVersion) {
    throw ProtocolError("unsupported batch version " + std::to_string(version));
  }
  const std::uint32_t B = r.u32();
  const std::uint32_t T = r.u32();
  LossBatch batch;
  batch.dt = r.f64();
  batch.horizon = T;
  for (std::uint32_t b = 0; b < B; ++b) {
    LossSample s;
    if (r.remaining() / 16 < T) {
      throw ProtocolError("truncated waypoints for sample " + std::to_string(b));
    }
    s.waypoints.resize(T);
    for (auto & p : s.waypoints) {
      p = r.point();
    }
    const std::uint32_t N = r.u32();
    if (N != 0 && r.remaining() / 16 / N < T) {
      throw ProtocolError("truncated agent positions for sample " + std::to_string(b));
    }
    s.agent_positions.assign(N, std::vector<Vec2>(T));
    for (std::uint32_t t = 0; t < T; ++t) {
      for (std::uint32_t n = 0; n < N; ++n) {
        s.agent_positions[n][t] = r.point();
      }
    }
    s.drivable_area.outers = read_polygons(r);
    s.drivable_area.holes = read_polygons(r);
    batch.samples.push_back(std::move(s));
  }
  if (r.remaining() != 0) {
    throw ProtocolError("trailing bytes after batch payload");
  }
  batch.validate();
  return batch;
}

std::string encode_response(const LossResult & result)
{
  Writer w;
  w.f64(result.l_dac);
  w.f64(result.l_col);
  w.f64(result.l_comf);
  for (double g : result.grad) {
    w.f64(g);
  }
  return w.take();
}

BatchResponse decode_response(std::string_view bytes, std::size_t batch_size, std::size_t horizon)
{
  const std::size_t n = batch_size * horizon * 2;
  if (bytes.size() != (3 + n) * 8) {
    throw ProtocolError("response size " + std::to_string(bytes.size()) + " does not match B x T");
  }
  Reader r(bytes);
  BatchResponse out;
  for (auto & v : out.values) {
    v = r.f64();
  }
  out.grad.resize(n);
  for (auto & g : out.grad) {
    g = r.f64();
  }
  return out;
}

std::string evaluate_batch_bytes(std::string_view request, const LossConfig & cfg, Execution exec)
{
  const LossBatch batch = decode_batch(request);
  return encode_response(loss_total(batch, cfg, exec));
}

}  // namespace trajsafe
