#pragma once

// 2k-wise independent functions {0,1}^ell -> {0,1}^ell: uniformly random
// polynomials of degree < 2k over GF(2^ell), evaluated on the input read as a
// field element.

#include <memory>
#include <vector>

#include "hslab/error.hpp"
#include "hslab/gf2x.hpp"
#include "hslab/rng.hpp"

namespace hslab {

class KWiseMember {
 public:
  // coeffs[i] multiplies x^i.
  KWiseMember(gf2x::Field field, std::vector<std::uint64_t> coeffs)
      : field_(std::move(field)), coeffs_(std::make_shared<const std::vector<std::uint64_t>>(std::move(coeffs))) {
    if (coeffs_->empty()) throw UsageError("KWiseMember: empty polynomial");
    for (auto c : *coeffs_)
      if (c & ~field_.mask()) throw UsageError("KWiseMember: coefficient outside the field");
  }

  std::size_t in_bits() const { return static_cast<std::size_t>(field_.degree()); }
  std::size_t out_bits() const { return in_bits(); }
  const std::vector<std::uint64_t>& coefficients() const { return *coeffs_; }

  std::uint64_t operator()(std::uint64_t x) const {
    if (x & ~field_.mask()) throw UsageError("KWiseMember: input wider than the field");
    const auto& c = *coeffs_;
    if (c.size() == 1) return c[0];
    if (c.size() == 2) return field_.mul(c[1], x) ^ c[0];
    const gf2x::FixedMultiplier times(field_, x);
    std::uint64_t r = c.back();
    for (std::size_t i = c.size() - 1; i-- > 0;) r = times(r) ^ c[i];
    return r;
  }

 private:
  gf2x::Field field_;
  std::shared_ptr<const std::vector<std::uint64_t>> coeffs_;
};

class KWiseFamily {
 public:
  // Family of 2k-wise independent functions on ell-bit strings.
  KWiseFamily(std::uint64_t k, unsigned ell) : k_(k), field_(gf2x::field(static_cast<int>(ell))) {
    if (k < 1) throw UsageError("KWiseFamily: k must be >= 1");
    if (ell < 1 || ell > 64) throw UsageError("KWiseFamily: ell must be in [1, 64]");
  }

  std::uint64_t independence() const { return 2 * k_; }
  unsigned ell() const { return static_cast<unsigned>(field_.degree()); }
  const gf2x::Field& field() const { return field_; }

  KWiseMember draw(Rng& rng) const {
    std::vector<std::uint64_t> c(2 * k_);
    for (auto& v : c) v = rng.next() & field_.mask();
    return KWiseMember(field_, std::move(c));
  }

  KWiseMember member(std::uint64_t seed) const {
    Rng rng(derive_seed(seed, "kwise-member"));
    return draw(rng);
  }

  // h(x) = x
  KWiseMember identity() const { return KWiseMember(field_, {0, 1}); }

  KWiseMember from_coefficients(std::vector<std::uint64_t> c) const {
    if (c.size() > 2 * k_) throw UsageError("KWiseFamily: degree exceeds 2k - 1");
    return KWiseMember(field_, std::move(c));
  }

 private:
  std::uint64_t k_;
  gf2x::Field field_;
};

}  // namespace hslab
