#include "nctopo/rlnc.hpp"

#include <stdexcept>
#include <string>

namespace nctopo::rlnc {

Packet source_packet(int n_sources, int self, const std::vector<Element>& symbols) {
  if (self < 1 || self > n_sources) {
    throw std::invalid_argument("source index out of range");
  }
  Packet p;
  p.coeffs.assign(n_sources, 0);
  p.coeffs[self - 1] = 1;
  p.payload = symbols;
  return p;
}

Packet encode_at_node(const gf::Field& field, const Packet& own,
                      const std::vector<Packet>& incoming,
                      const std::vector<Element>& local_coeffs) {
  if (local_coeffs.size() != incoming.size() + 1) {
    throw std::invalid_argument(
        "need one local coefficient per incoming packet plus one for self");
  }
  const size_t n = own.coeffs.size();
  const size_t len = own.payload.size();
  Packet out;
  out.coeffs.assign(n, 0);
  out.payload.assign(len, 0);

  auto accumulate = [&](const Packet& p, Element c) {
    if (p.coeffs.size() != n || p.payload.size() != len) {
      throw std::invalid_argument("packet dimensions disagree");
    }
    for (size_t k = 0; k < n; ++k) {
      out.coeffs[k] = gf::Field::add(out.coeffs[k], field.mul(c, p.coeffs[k]));
    }
    for (size_t k = 0; k < len; ++k) {
      out.payload[k] = gf::Field::add(out.payload[k], field.mul(c, p.payload[k]));
    }
  };

  for (size_t i = 0; i < incoming.size(); ++i) accumulate(incoming[i], local_coeffs[i]);
  accumulate(own, local_coeffs.back());
  return out;
}

std::vector<Element> random_local_coeffs(const gf::Field& field, int count,
                                         Rng& rng) {
  if (count < 0) throw std::invalid_argument("coefficient count must be >= 0");
  std::vector<Element> out(count);
  for (auto& c : out) c = static_cast<Element>(rng.below(field.size()));
  return out;
}

Decoder::Decoder(const gf::Field& field, int n_sources)
    : field_(&field), n_(n_sources), row_of_pivot_(n_sources, -1) {
  if (n_sources < 1) throw std::invalid_argument("need at least one source");
}

bool Decoder::add_row(const std::vector<Element>& coeffs, Element payload) {
  if (static_cast<int>(coeffs.size()) != n_) {
    throw std::invalid_argument("coefficient row has wrong length");
  }
  std::vector<Element> r(coeffs);
  r.push_back(payload);

  for (int col = 0; col < n_; ++col) {
    if (r[col] == 0 || row_of_pivot_[col] < 0) continue;
    const Element factor = r[col];
    const auto& base = rows_[row_of_pivot_[col]];
    for (int k = col; k <= n_; ++k) {
      r[k] = gf::Field::add(r[k], field_->mul(factor, base[k]));
    }
  }

  int pivot = -1;
  for (int col = 0; col < n_; ++col) {
    if (r[col] != 0) {
      pivot = col;
      break;
    }
  }
  if (pivot < 0) return false;  // linearly dependent

  const Element scale = field_->inv(r[pivot]);
  for (int k = pivot; k <= n_; ++k) r[k] = field_->mul(scale, r[k]);

  for (auto& row : rows_) {  // clear the new pivot column above
    if (row[pivot] == 0) continue;
    const Element factor = row[pivot];
    for (int k = pivot; k <= n_; ++k) {
      row[k] = gf::Field::add(row[k], field_->mul(factor, r[k]));
    }
  }

  row_of_pivot_[pivot] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

bool Decoder::recoverable(int source) const {
  if (source < 1 || source > n_) {
    throw std::invalid_argument("source index out of range");
  }
  const int row = row_of_pivot_[source - 1];
  if (row < 0) return false;
  // e_k is in the row space iff the pivot-k row of the RREF *is* e_k.
  for (int col = 0; col < n_; ++col) {
    if (col != source - 1 && rows_[row][col] != 0) return false;
  }
  return true;
}

std::set<int> Decoder::recoverable_set() const {
  std::set<int> out;
  for (int k = 1; k <= n_; ++k) {
    if (recoverable(k)) out.insert(k);
  }
  return out;
}

Element Decoder::symbol(int source) const {
  if (!recoverable(source)) {
    throw std::invalid_argument("source " + std::to_string(source) +
                                " is not recoverable");
  }
  return rows_[row_of_pivot_[source - 1]][n_];
}

std::set<int> recoverable_sources(const gf::Field& field, const CoeffMatrix& m) {
  if (m.n_sources < 1) return {};
  Decoder dec(field, m.n_sources);
  for (const auto& row : m.rows) dec.add_row(row, 0);
  return dec.recoverable_set();
}

std::map<int, Element> decode(const gf::Field& field, const CoeffMatrix& m,
                              const std::vector<Element>& payloads) {
  if (payloads.size() != m.rows.size()) {
    throw std::invalid_argument("one payload per matrix row required");
  }
  std::map<int, Element> out;
  if (m.n_sources < 1) return out;
  Decoder dec(field, m.n_sources);
  for (size_t r = 0; r < m.rows.size(); ++r) dec.add_row(m.rows[r], payloads[r]);
  for (int k : dec.recoverable_set()) out[k] = dec.symbol(k);
  return out;
}

std::vector<uint8_t> pack_packet(int m, const Packet& p) {
  if (m < 1 || m > 16) throw std::invalid_argument("field exponent out of range");
  std::vector<uint8_t> bytes;
  int bitpos = 0;
  auto put = [&](Element v) {
    for (int b = m - 1; b >= 0; --b) {  // most significant bit first
      if (bitpos % 8 == 0) bytes.push_back(0);
      if ((v >> b) & 1u) bytes.back() |= static_cast<uint8_t>(0x80u >> (bitpos % 8));
      ++bitpos;
    }
  };
  for (Element c : p.coeffs) put(c);
  for (Element y : p.payload) put(y);
  return bytes;
}

Packet unpack_packet(int m, int n_sources, int payload_len,
                     const std::vector<uint8_t>& bytes) {
  if (m < 1 || m > 16) throw std::invalid_argument("field exponent out of range");
  const size_t total_bits = static_cast<size_t>(m) * (n_sources + payload_len);
  if (bytes.size() != (total_bits + 7) / 8) {
    throw std::invalid_argument("packed packet has wrong length");
  }
  size_t bitpos = 0;
  auto get = [&]() {
    Element v = 0;
    for (int b = 0; b < m; ++b) {
      const uint8_t byte = bytes[bitpos / 8];
      v = static_cast<Element>((v << 1) | ((byte >> (7 - bitpos % 8)) & 1u));
      ++bitpos;
    }
    return v;
  };
  Packet p;
  p.coeffs.resize(n_sources);
  p.payload.resize(payload_len);
  for (auto& c : p.coeffs) c = get();
  for (auto& y : p.payload) y = get();
  return p;
}

}  // namespace nctopo::rlnc
