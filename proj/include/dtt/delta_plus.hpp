#ifndef DTT_DELTA_PLUS_HPP
#define DTT_DELTA_PLUS_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dtt::delta_plus {

// A morphism of the augmented semi-simplex category, presented as a finite
// 0/1 sequence stored most-significant-first.  A sequence of length n+1
// with m+1 one-digits is an arrow <m> -> <n>.
class BinarySeq {
 public:
  BinarySeq() = default;
  explicit BinarySeq(std::vector<bool> digits) : digits_(std::move(digits)) {}

  static BinarySeq parse(const std::string& s) {
    std::vector<bool> d;
    d.reserve(s.size());
    for (char c : s) {
      if (c == '0') d.push_back(false);
      else if (c == '1') d.push_back(true);
      else throw std::invalid_argument("binary sequence digit must be 0 or 1");
    }
    return BinarySeq(std::move(d));
  }

  int length() const { return static_cast<int>(digits_.size()); }
  int popcount() const {
    int c = 0;
    for (bool b : digits_) c += b;
    return c;
  }
  // Target object <n>.
  int target() const { return length() - 1; }
  // Source object <m>.
  int source() const { return popcount() - 1; }

  bool operator[](int i) const { return digits_[static_cast<size_t>(i)]; }
  bool operator==(const BinarySeq& o) const { return digits_ == o.digits_; }
  bool operator!=(const BinarySeq& o) const { return digits_ != o.digits_; }

  std::string str() const {
    std::string s;
    s.reserve(digits_.size());
    for (bool b : digits_) s += b ? '1' : '0';
    return s;
  }

  // Reads the sequence as a binary numeral.
  uint64_t numeral() const {
    uint64_t v = 0;
    for (bool b : digits_) v = (v << 1) | (b ? 1u : 0u);
    return v;
  }

  const std::vector<bool>& digits() const { return digits_; }

 private:
  std::vector<bool> digits_;
};

// b1 . b0: replace the 1-digits of b1, left to right, with the digits of b0.
inline BinarySeq compose(const BinarySeq& b1, const BinarySeq& b0) {
  if (b1.popcount() != b0.length())
    throw std::invalid_argument("arity mismatch: source of b1 (" +
                                std::to_string(b1.source()) + ") differs from target of b0 (" +
                                std::to_string(b0.target()) + ")");
  std::vector<bool> out;
  out.reserve(static_cast<size_t>(b1.length()));
  int j = 0;
  for (int i = 0; i < b1.length(); ++i)
    out.push_back(b1[i] ? b0[j++] : false);
  return BinarySeq(std::move(out));
}

// All-ones sequence of length n+1; the empty sequence when n = -1.
inline BinarySeq identity(int n) {
  if (n < -1) throw std::invalid_argument("identity: n must be >= -1");
  return BinarySeq(std::vector<bool>(static_cast<size_t>(n + 1), true));
}

inline BinarySeq one_prefix(const BinarySeq& b) {
  std::vector<bool> d;
  d.reserve(static_cast<size_t>(b.length()) + 1);
  d.push_back(true);
  for (int i = 0; i < b.length(); ++i) d.push_back(b[i]);
  return BinarySeq(std::move(d));
}

inline BinarySeq zero_prefix(const BinarySeq& b) {
  std::vector<bool> d;
  d.reserve(static_cast<size_t>(b.length()) + 1);
  d.push_back(false);
  for (int i = 0; i < b.length(); ++i) d.push_back(b[i]);
  return BinarySeq(std::move(d));
}

// The component of the decalage-to-truncation map: 0 prefixed to 1_<m>,
// an arrow <m> -> <m+1>.
inline BinarySeq rho(int m) { return zero_prefix(identity(m)); }

struct CampionEntry {
  uint64_t label;  // the binary numeral, 1 .. 2^(n+1)-1
  int dimension;   // popcount - 1
};

// Labels 1 .. 2^(n+1)-1 read as (n+1)-bit binary numbers in increasing
// order; the dimension of a label is popcount-1.  Every face of a simplex
// (obtained by zeroing some of its 1-bits) precedes it.
inline std::vector<CampionEntry> campion_order(int n) {
  if (n < 0) throw std::invalid_argument("campion_order: n must be >= 0");
  std::vector<CampionEntry> out;
  uint64_t top = (uint64_t{1} << (n + 1)) - 1;
  out.reserve(top);
  for (uint64_t v = 1; v <= top; ++v)
    out.push_back({v, __builtin_popcountll(v) - 1});
  return out;
}

// All elements of B^{<n>,<m>}: length n+1 sequences with m+1 ones,
// enumerated in increasing numeral order.
inline std::vector<BinarySeq> faces(int n, int m) {
  if (m < -1 || m > n) throw std::invalid_argument("faces: need -1 <= m <= n");
  std::vector<BinarySeq> out;
  std::vector<bool> cur(static_cast<size_t>(n + 1), false);
  auto rec = [&](auto&& self, int pos, int ones) -> void {
    if (pos == n + 1) {
      if (ones == m + 1) out.push_back(BinarySeq(cur));
      return;
    }
    cur[static_cast<size_t>(pos)] = false;
    self(self, pos + 1, ones);
    cur[static_cast<size_t>(pos)] = true;
    self(self, pos + 1, ones + 1);
    cur[static_cast<size_t>(pos)] = false;
  };
  rec(rec, 0, 0);
  return out;
}

// Sub-labels of a simplex label: every nonzero proper submask, in
// increasing numeral order.  These are the boundary faces.
inline std::vector<uint64_t> sub_labels(uint64_t label) {
  std::vector<uint64_t> out;
  for (uint64_t s = (label - 1) & label; s != 0; s = (s - 1) & label)
    out.push_back(s);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace dtt::delta_plus

#endif  // DTT_DELTA_PLUS_HPP
