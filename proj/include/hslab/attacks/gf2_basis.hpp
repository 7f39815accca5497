#pragma once

// Row-echelon basis of a subspace of (Z/2)^n, n <= 64.

#include <array>
#include <bit>
#include <cstdint>
#include <vector>

#include "hslab/error.hpp"

namespace hslab {

class Gf2Basis {
 public:
  explicit Gf2Basis(unsigned n) : n_(n) {
    if (n < 1 || n > 64) throw UsageError("Gf2Basis: dimension must be in [1, 64]");
  }

  unsigned dimension() const { return n_; }
  unsigned rank() const { return rank_; }

  // Adds v; false if v was already in the span.
  bool insert(std::uint64_t v) {
    v &= mask();
    for (int b = static_cast<int>(n_) - 1; b >= 0; --b) {
      if (!((v >> b) & 1)) continue;
      if (!rows_[b]) {
        rows_[b] = v;
        ++rank_;
        return true;
      }
      v ^= rows_[b];
    }
    return false;
  }

  bool in_span(std::uint64_t v) const {
    v &= mask();
    for (int b = static_cast<int>(n_) - 1; b >= 0 && v; --b)
      if ((v >> b) & 1) {
        if (!rows_[b]) return false;
        v ^= rows_[b];
      }
    return v == 0;
  }

  // Basis of {s : y . s = 0 for every y in the span}.
  std::vector<std::uint64_t> orthogonal_complement() const {
    // Fully reduce, then each free column c gives s = e_c + sum of pivots whose row has bit c.
    std::array<std::uint64_t, 64> red = rows_;
    for (int b = 0; b < static_cast<int>(n_); ++b) {
      if (!red[b]) continue;
      for (int c = b + 1; c < static_cast<int>(n_); ++c)
        if (red[c] && ((red[c] >> b) & 1)) red[c] ^= red[b];
    }
    std::vector<std::uint64_t> out;
    for (unsigned c = 0; c < n_; ++c) {
      if (red[c]) continue;
      std::uint64_t s = std::uint64_t{1} << c;
      for (unsigned p = 0; p < n_; ++p)
        if (red[p] && ((red[p] >> c) & 1)) s |= std::uint64_t{1} << p;
      out.push_back(s);
    }
    return out;
  }

  static int dot(std::uint64_t a, std::uint64_t b) { return std::popcount(a & b) & 1; }

 private:
  std::uint64_t mask() const { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }

  unsigned n_;
  unsigned rank_ = 0;
  std::array<std::uint64_t, 64> rows_{};  // rows_[b] has leading bit b
};

}  // namespace hslab
