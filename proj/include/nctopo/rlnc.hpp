#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "nctopo/gf.hpp"
#include "nctopo/rng.hpp"

namespace nctopo::rlnc {

using gf::Element;

// Coded packet: global coefficient header (one entry per source) plus one or
// more payload symbols. The core simulator uses single-symbol payloads.
struct Packet {
  std::vector<Element> coeffs;
  std::vector<Element> payload;
};

// The node's own contribution as a packet: unit coefficient row at `self`
// (1-based) with the node's source symbols as payload.
Packet source_packet(int n_sources, int self, const std::vector<Element>& symbols);

// One recombination step: output = sum_k local_coeffs[k] * incoming[k]
// (+) local_coeffs.back() * own. local_coeffs holds one entry per incoming
// packet plus a final entry for the node's own packet.
Packet encode_at_node(const gf::Field& field, const Packet& own,
                      const std::vector<Packet>& incoming,
                      const std::vector<Element>& local_coeffs);

std::vector<Element> random_local_coeffs(const gf::Field& field, int count,
                                         Rng& rng);

struct CoeffMatrix {
  int n_sources = 0;
  std::vector<std::vector<Element>> rows;
};

// Incremental Gaussian elimination in reduced row-echelon form, with the
// payload symbol carried as an augmented column.
class Decoder {
 public:
  Decoder(const gf::Field& field, int n_sources);

  // Returns true when the row increased the rank (independent rows only are
  // stored; duplicates and linear combinations are absorbed silently).
  bool add_row(const std::vector<Element>& coeffs, Element payload = 0);

  int rank() const { return static_cast<int>(rows_.size()); }
  bool recoverable(int source) const;
  std::set<int> recoverable_set() const;
  Element symbol(int source) const;  // requires recoverable(source)

 private:
  const gf::Field* field_;
  int n_;
  std::vector<std::vector<Element>> rows_;  // RREF rows, length n_ + 1
  std::vector<int> row_of_pivot_;           // per column; -1 when absent
};

// { k | unit vector e_k lies in the row space }, by Gaussian elimination.
std::set<int> recoverable_sources(const gf::Field& field, const CoeffMatrix& m);

// Decoded symbol per recoverable source; payloads align with matrix rows.
std::map<int, Element> decode(const gf::Field& field, const CoeffMatrix& m,
                              const std::vector<Element>& payloads);

// Trace-dump layout: m-bit big-endian fields, coefficients then payload,
// zero-padded to a whole byte.
std::vector<uint8_t> pack_packet(int m, const Packet& p);
Packet unpack_packet(int m, int n_sources, int payload_len,
                     const std::vector<uint8_t>& bytes);

}  // namespace nctopo::rlnc
