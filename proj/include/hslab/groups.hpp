#pragma once

// Finite group families with canonical fixed-width encodings.
//
// Every family is a small value type exposing the FiniteGroup interface:
// identity/mul/inv, uniform sampling, encode/decode to a BitString of
// element_bits() bits, and (when |G| < 2^64) a dense rank in [0, |G|).
//
// Permutations compose right-to-left: (a*b)(x) = a(b(x)).

#include <algorithm>
#include <array>
#include <concepts>
#include <limits>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hslab/bitstring.hpp"
#include "hslab/error.hpp"
#include "hslab/finite_field.hpp"
#include "hslab/rng.hpp"

namespace hslab {

using BigUInt = boost::multiprecision::cpp_int;

enum class GroupKind { Xor, CyclicPow2, Cyclic, Symmetric, Gl2, Sl2, ProductS5 };

// Bits needed to index `count` distinct values; 0 for count <= 1.
inline std::size_t bits_for_count(const BigUInt& count) {
  if (count <= 1) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(BigUInt(count - 1))) + 1;
}

inline std::size_t bits_for_count(std::uint64_t count) { return bits_for_count(BigUInt(count)); }

template <class G>
concept FiniteGroup = requires(const G& g, const typename G::element_type& a, Rng& rng,
                               const BitString& bits, std::uint64_t r) {
  typename G::element_type;
  { g.kind() } -> std::same_as<GroupKind>;
  { g.identity() } -> std::same_as<typename G::element_type>;
  { g.mul(a, a) } -> std::same_as<typename G::element_type>;
  { g.inv(a) } -> std::same_as<typename G::element_type>;
  { g.sample(rng) } -> std::same_as<typename G::element_type>;
  { g.encode(a) } -> std::same_as<BitString>;
  { g.decode(bits) } -> std::same_as<typename G::element_type>;
  { g.contains(a) } -> std::same_as<bool>;
  { g.order() } -> std::same_as<BigUInt>;
  { g.element_bits() } -> std::same_as<std::size_t>;
  { g.descriptor() } -> std::same_as<std::string>;
  { g.format(a) } -> std::same_as<std::string>;
  { g.rank(a) } -> std::same_as<std::uint64_t>;
  { g.unrank(r) } -> std::same_as<typename G::element_type>;
  { g.is_abelian() } -> std::same_as<bool>;
  { a == a } -> std::convertible_to<bool>;
};

template <FiniteGroup G>
using element_t = typename G::element_type;

// |G| as a machine word; only for groups with |G| < 2^64.
template <FiniteGroup G>
std::uint64_t order_u64(const G& g) {
  const BigUInt n = g.order();
  if (n > BigUInt(std::numeric_limits<std::uint64_t>::max()))
    throw BudgetError(g.descriptor() + ": group order does not fit in 64 bits");
  return static_cast<std::uint64_t>(n);
}

template <FiniteGroup G>
bool has_u64_order(const G& g) {
  return g.order() <= BigUInt(std::numeric_limits<std::uint64_t>::max());
}

template <FiniteGroup G>
void require_member(const G& g, const element_t<G>& a, const char* where) {
  if (!g.contains(a)) throw UsageError(std::string(where) + ": element is not in " + g.descriptor());
}

// ---------------------------------------------------------------------------
// (Z/2)^n and Z/2^n on machine words, n in [1, 64].

namespace detail {

class WordGroupBase {
 public:
  using element_type = std::uint64_t;

  explicit WordGroupBase(unsigned n) : n_(n) {
    if (n < 1 || n > 64) throw UsageError("bit width must be in [1, 64]");
    mask_ = n == 64 ? ~0ULL : (1ULL << n) - 1;
  }

  unsigned bits() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  element_type identity() const { return 0; }
  bool contains(element_type a) const { return (a & ~mask_) == 0; }
  element_type sample(Rng& rng) const { return rng.next() & mask_; }
  BitString encode(element_type a) const {
    check(a, "encode");
    return BitString::from_uint(a, n_);
  }
  element_type decode(const BitString& b) const {
    if (b.width() != n_) throw DecodeError("codeword width mismatch");
    return b.read(0, n_);
  }
  BigUInt order() const { return BigUInt(1) << n_; }
  std::size_t element_bits() const { return n_; }
  std::string format(element_type a) const { return std::to_string(a); }
  std::uint64_t rank(element_type a) const { return a; }
  element_type unrank(std::uint64_t r) const {
    if (!contains(r)) throw UsageError("unrank: rank out of range");
    return r;
  }
  bool is_abelian() const { return true; }

 protected:
  void check(element_type a, const char* where) const {
    if (!contains(a)) throw UsageError(std::string(where) + ": element outside the group");
  }

  unsigned n_;
  std::uint64_t mask_;
};

}  // namespace detail

class XorGroup : public detail::WordGroupBase {
 public:
  using WordGroupBase::WordGroupBase;
  GroupKind kind() const { return GroupKind::Xor; }
  element_type mul(element_type a, element_type b) const {
    check(a, "mul");
    check(b, "mul");
    return a ^ b;
  }
  element_type inv(element_type a) const {
    check(a, "inv");
    return a;
  }
  std::string descriptor() const { return "xor:" + std::to_string(n_); }
  friend bool operator==(const XorGroup& a, const XorGroup& b) { return a.n_ == b.n_; }
};

class CyclicPow2Group : public detail::WordGroupBase {
 public:
  using WordGroupBase::WordGroupBase;
  GroupKind kind() const { return GroupKind::CyclicPow2; }
  element_type mul(element_type a, element_type b) const {
    check(a, "mul");
    check(b, "mul");
    return (a + b) & mask_;
  }
  element_type inv(element_type a) const {
    check(a, "inv");
    return (~a + 1) & mask_;
  }
  std::string descriptor() const { return "z2n:" + std::to_string(n_); }
  friend bool operator==(const CyclicPow2Group& a, const CyclicPow2Group& b) { return a.n_ == b.n_; }
};

// Z/N for arbitrary N >= 1; residues in ceil(log2 N) bits.
class CyclicGroup {
 public:
  using element_type = std::uint64_t;

  explicit CyclicGroup(std::uint64_t modulus) : n_(modulus), bits_(bits_for_count(modulus)) {
    if (modulus < 1) throw UsageError("zn: modulus must be >= 1");
  }

  GroupKind kind() const { return GroupKind::Cyclic; }
  std::uint64_t modulus() const { return n_; }
  element_type identity() const { return 0; }
  element_type mul(element_type a, element_type b) const {
    check(a, "mul");
    check(b, "mul");
    return static_cast<element_type>((static_cast<unsigned __int128>(a) + b) % n_);
  }
  element_type inv(element_type a) const {
    check(a, "inv");
    return a == 0 ? 0 : n_ - a;
  }
  element_type sample(Rng& rng) const { return rng.below(n_); }
  BitString encode(element_type a) const {
    check(a, "encode");
    return BitString::from_uint(a, bits_);
  }
  element_type decode(const BitString& b) const {
    if (b.width() != bits_) throw DecodeError("codeword width mismatch");
    const std::uint64_t v = bits_ == 0 ? 0 : b.read(0, bits_);
    if (v >= n_) throw DecodeError("zn: residue out of range");
    return v;
  }
  bool contains(element_type a) const { return a < n_; }
  BigUInt order() const { return BigUInt(n_); }
  std::size_t element_bits() const { return bits_; }
  std::string descriptor() const { return "zn:" + std::to_string(n_); }
  std::string format(element_type a) const { return std::to_string(a); }
  std::uint64_t rank(element_type a) const { return a; }
  element_type unrank(std::uint64_t r) const {
    if (r >= n_) throw UsageError("unrank: rank out of range");
    return r;
  }
  bool is_abelian() const { return true; }
  friend bool operator==(const CyclicGroup& a, const CyclicGroup& b) { return a.n_ == b.n_; }

 private:
  void check(element_type a, const char* where) const {
    if (a >= n_) throw UsageError(std::string(where) + ": residue outside Z/N");
  }
  std::uint64_t n_;
  std::size_t bits_;
};

// ---------------------------------------------------------------------------
// Symmetric group S_n, n in [1, 255].

// One-line notation with 0-based images: p.images[x] = p(x).
struct Permutation {
  std::vector<std::uint8_t> images;
  friend bool operator==(const Permutation&, const Permutation&) = default;
};

namespace lehmer {

inline constexpr int kMaxRankedDegree = 20;

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Lexicographic rank via the factorial number system.
inline std::uint64_t rank(const std::vector<std::uint8_t>& p) {
  const int n = static_cast<int>(p.size());
  std::uint64_t r = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += p[j] < p[i];
    r = r * static_cast<std::uint64_t>(n - i) + smaller;
  }
  return r;
}

inline std::vector<std::uint8_t> unrank(std::uint64_t r, int n) {
  std::vector<std::uint8_t> digits(n);
  for (int i = n - 1; i >= 0; --i) {
    const auto base = static_cast<std::uint64_t>(n - i);
    digits[i] = static_cast<std::uint8_t>(r % base);
    r /= base;
  }
  std::vector<std::uint8_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::uint8_t{0});
  std::vector<std::uint8_t> p(n);
  for (int i = 0; i < n; ++i) {
    p[i] = pool[digits[i]];
    pool.erase(pool.begin() + digits[i]);
  }
  return p;
}

}  // namespace lehmer

class SymmetricGroup {
 public:
  using element_type = Permutation;

  explicit SymmetricGroup(int n) : n_(n) {
    if (n < 1 || n > 255) throw UsageError("sym: degree must be in [1, 255]");
    bits_ = ranked() ? bits_for_count(lehmer::factorial(n)) : static_cast<std::size_t>(8 * n);
  }

  GroupKind kind() const { return GroupKind::Symmetric; }
  int degree() const { return n_; }
  bool ranked() const { return n_ <= lehmer::kMaxRankedDegree; }

  element_type identity() const {
    Permutation p{std::vector<std::uint8_t>(n_)};
    std::iota(p.images.begin(), p.images.end(), std::uint8_t{0});
    return p;
  }
  element_type mul(const element_type& a, const element_type& b) const {
    check(a, "mul");
    check(b, "mul");
    Permutation c{std::vector<std::uint8_t>(n_)};
    for (int x = 0; x < n_; ++x) c.images[x] = a.images[b.images[x]];
    return c;
  }
  element_type inv(const element_type& a) const {
    check(a, "inv");
    Permutation c{std::vector<std::uint8_t>(n_)};
    for (int x = 0; x < n_; ++x) c.images[a.images[x]] = static_cast<std::uint8_t>(x);
    return c;
  }
  element_type sample(Rng& rng) const {
    if (ranked()) return unrank(rng.below(lehmer::factorial(n_)));
    Permutation p = identity();
    for (int i = n_ - 1; i > 0; --i) std::swap(p.images[i], p.images[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    return p;
  }
  BitString encode(const element_type& a) const {
    check(a, "encode");
    if (ranked()) return BitString::from_uint(lehmer::rank(a.images), bits_);
    BitString b;
    for (auto v : a.images) b.append(static_cast<std::uint64_t>(v) + 1, 8);
    return b;
  }
  element_type decode(const BitString& b) const {
    if (b.width() != bits_) throw DecodeError("sym: codeword width mismatch");
    if (ranked()) {
      const std::uint64_t r = bits_ == 0 ? 0 : b.read(0, bits_);
      if (r >= lehmer::factorial(n_)) throw DecodeError("sym: Lehmer rank out of range");
      return Permutation{lehmer::unrank(r, n_)};
    }
    Permutation p{std::vector<std::uint8_t>(n_)};
    std::vector<bool> seen(n_, false);
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t letter = b.read(8 * static_cast<std::size_t>(i), 8);
      if (letter < 1 || letter > static_cast<std::uint64_t>(n_) || seen[letter - 1])
        throw DecodeError("sym: image sequence is not a permutation");
      seen[letter - 1] = true;
      p.images[i] = static_cast<std::uint8_t>(letter - 1);
    }
    return p;
  }
  bool contains(const element_type& a) const {
    if (static_cast<int>(a.images.size()) != n_) return false;
    std::vector<bool> seen(n_, false);
    for (auto v : a.images) {
      if (v >= n_ || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
  BigUInt order() const {
    BigUInt f = 1;
    for (int i = 2; i <= n_; ++i) f *= i;
    return f;
  }
  std::size_t element_bits() const { return bits_; }
  std::string descriptor() const { return "sym:" + std::to_string(n_); }
  std::string format(const element_type& a) const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      if (i) s += ' ';
      s += std::to_string(a.images[i] + 1);
    }
    return s + "]";
  }
  std::uint64_t rank(const element_type& a) const {
    if (!ranked()) throw UnsupportedError("sym: dense rank needs n <= 20");
    check(a, "rank");
    return lehmer::rank(a.images);
  }
  element_type unrank(std::uint64_t r) const {
    if (!ranked()) throw UnsupportedError("sym: dense rank needs n <= 20");
    if (r >= lehmer::factorial(n_)) throw UsageError("unrank: rank out of range");
    return Permutation{lehmer::unrank(r, n_)};
  }
  bool is_abelian() const { return n_ <= 2; }

  // 1-based one-line notation, e.g. {2,3,1} maps 1->2, 2->3, 3->1.
  element_type from_one_line(const std::vector<int>& one_based) const {
    Permutation p{std::vector<std::uint8_t>(one_based.size())};
    for (std::size_t i = 0; i < one_based.size(); ++i) p.images[i] = static_cast<std::uint8_t>(one_based[i] - 1);
    if (!contains(p)) throw UsageError("from_one_line: not a permutation of 1..n");
    return p;
  }
  // Transposition of 1-based letters i and j (identity when i == j).
  element_type transposition(int i, int j) const {
    Permutation p = identity();
    std::swap(p.images[i - 1], p.images[j - 1]);
    return p;
  }

  friend bool operator==(const SymmetricGroup& a, const SymmetricGroup& b) { return a.n_ == b.n_; }

 private:
  void check(const element_type& a, const char* where) const {
    if (static_cast<int>(a.images.size()) != n_)
      throw UsageError(std::string(where) + ": permutation degree does not match " + descriptor());
  }
  int n_;
  std::size_t bits_;
};

// ---------------------------------------------------------------------------
// GL_2(F_q) and SL_2(F_q).

// [[a, b], [c, d]]
struct Mat2 {
  std::uint32_t a = 0, b = 0, c = 0, d = 0;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

namespace detail {

class MatrixGroupBase {
 public:
  using element_type = Mat2;

  explicit MatrixGroupBase(std::uint32_t q) : field_(q), q_(q) {}

  const FiniteField& field() const { return field_; }
  std::uint32_t q() const { return q_; }

  element_type identity() const { return {1, 0, 0, 1}; }
  element_type mul(const Mat2& x, const Mat2& y) const {
    check(x, "mul");
    check(y, "mul");
    const auto& F = field_;
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)), F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)), F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
  }
  element_type inv(const Mat2& x) const {
    check(x, "inv");
    const auto& F = field_;
    const std::uint32_t di = F.inv(det(x));
    return {F.mul(di, x.d), F.mul(di, F.neg(x.b)), F.mul(di, F.neg(x.c)), F.mul(di, x.a)};
  }
  std::uint32_t det(const Mat2& x) const { return field_.sub(field_.mul(x.a, x.d), field_.mul(x.b, x.c)); }
  std::string format(const Mat2& x) const {
    return "[[" + std::to_string(x.a) + "," + std::to_string(x.b) + "],[" + std::to_string(x.c) + "," +
           std::to_string(x.d) + "]]";
  }
  bool is_abelian() const { return false; }

 protected:
  bool entries_in_field(const Mat2& x) const { return x.a < q_ && x.b < q_ && x.c < q_ && x.d < q_; }
  void check(const Mat2& x, const char* where) const {
    if (!entries_in_field(x)) throw UsageError(std::string(where) + ": matrix entry outside F_q");
  }

  // First column (a, c) != 0 ranked over the q^2 - 1 nonzero pairs.
  std::uint64_t column_rank(const Mat2& x) const { return std::uint64_t{x.a} * q_ + x.c - 1; }
  void column_unrank(std::uint64_t r, Mat2& x) const {
    const std::uint64_t idx = r + 1;
    x.a = static_cast<std::uint32_t>(idx / q_);
    x.c = static_cast<std::uint32_t>(idx % q_);
  }
  std::uint64_t column_count() const { return std::uint64_t{q_} * q_ - 1; }

  // lambda with (b, d) = lambda * (a, c) + mu * w, w = (0,1) if a != 0 else (1,0).
  void second_column_coords(const Mat2& x, std::uint32_t& lambda, std::uint32_t& mu) const {
    const auto& F = field_;
    if (x.a != 0) {
      lambda = F.div(x.b, x.a);
      mu = F.sub(x.d, F.mul(lambda, x.c));
    } else {
      lambda = F.div(x.d, x.c);
      mu = x.b;
    }
  }
  void second_column_from(Mat2& x, std::uint32_t lambda, std::uint32_t mu) const {
    const auto& F = field_;
    if (x.a != 0) {
      x.b = F.mul(lambda, x.a);
      x.d = F.add(F.mul(lambda, x.c), mu);
    } else {
      x.b = mu;
      x.d = F.mul(lambda, x.c);
    }
  }

  FiniteField field_;
  std::uint32_t q_;
};

}  // namespace detail

class Gl2Group : public detail::MatrixGroupBase {
 public:
  explicit Gl2Group(std::uint32_t q)
      : MatrixGroupBase(q),
        bits_col_(bits_for_count(column_count())),
        bits_rest_(bits_for_count(std::uint64_t{q} * q - q)) {}

  GroupKind kind() const { return GroupKind::Gl2; }
  element_type sample(Rng& rng) const { return unrank(rng.below(order_small())); }
  bool contains(const Mat2& x) const { return entries_in_field(x) && det(x) != 0; }
  BigUInt order() const { return BigUInt(order_small()); }
  std::size_t element_bits() const { return bits_col_ + bits_rest_; }
  std::string descriptor() const { return "gl2:" + std::to_string(q_); }

  std::uint64_t rank(const Mat2& x) const {
    if (!contains(x)) throw UsageError("rank: matrix is not in " + descriptor());
    std::uint32_t lambda, mu;
    second_column_coords(x, lambda, mu);
    const std::uint64_t rest = std::uint64_t{lambda} * (q_ - 1) + (mu - 1);
    return column_rank(x) * rest_count() + rest;
  }
  element_type unrank(std::uint64_t r) const {
    if (r >= order_small()) throw UsageError("unrank: rank out of range");
    Mat2 x;
    column_unrank(r / rest_count(), x);
    const std::uint64_t rest = r % rest_count();
    second_column_from(x, static_cast<std::uint32_t>(rest / (q_ - 1)), static_cast<std::uint32_t>(rest % (q_ - 1) + 1));
    return x;
  }
  BitString encode(const Mat2& x) const {
    const std::uint64_t r = rank(x);
    BitString b;
    b.append(r / rest_count(), bits_col_);
    b.append(r % rest_count(), bits_rest_);
    return b;
  }
  element_type decode(const BitString& b) const {
    if (b.width() != element_bits()) throw DecodeError("gl2: codeword width mismatch");
    const std::uint64_t col = bits_col_ ? b.read(0, bits_col_) : 0;
    const std::uint64_t rest = bits_rest_ ? b.read(bits_col_, bits_rest_) : 0;
    if (col >= column_count() || rest >= rest_count()) throw DecodeError("gl2: rank field out of range");
    return unrank(col * rest_count() + rest);
  }
  friend bool operator==(const Gl2Group& a, const Gl2Group& b) { return a.q_ == b.q_; }

 private:
  std::uint64_t rest_count() const { return std::uint64_t{q_} * q_ - q_; }
  std::uint64_t order_small() const { return column_count() * rest_count(); }
  std::size_t bits_col_, bits_rest_;
};

class Sl2Group : public detail::MatrixGroupBase {
 public:
  explicit Sl2Group(std::uint32_t q)
      : MatrixGroupBase(q), bits_col_(bits_for_count(column_count())), bits_rest_(bits_for_count(std::uint64_t{q})) {}

  GroupKind kind() const { return GroupKind::Sl2; }
  element_type sample(Rng& rng) const { return unrank(rng.below(order_small())); }
  bool contains(const Mat2& x) const { return entries_in_field(x) && det(x) == 1; }
  BigUInt order() const { return BigUInt(order_small()); }
  std::size_t element_bits() const { return bits_col_ + bits_rest_; }
  std::string descriptor() const { return "sl2:" + std::to_string(q_); }

  std::uint64_t rank(const Mat2& x) const {
    if (!contains(x)) throw UsageError("rank: matrix is not in " + descriptor());
    return column_rank(x) * q_ + line_parameter(x);
  }
  element_type unrank(std::uint64_t r) const {
    if (r >= order_small()) throw UsageError("unrank: rank out of range");
    Mat2 x;
    column_unrank(r / q_, x);
    set_line_parameter(x, static_cast<std::uint32_t>(r % q_));
    return x;
  }
  BitString encode(const Mat2& x) const {
    const std::uint64_t r = rank(x);
    BitString b;
    b.append(r / q_, bits_col_);
    b.append(r % q_, bits_rest_);
    return b;
  }
  element_type decode(const BitString& b) const {
    if (b.width() != element_bits()) throw DecodeError("sl2: codeword width mismatch");
    const std::uint64_t col = bits_col_ ? b.read(0, bits_col_) : 0;
    const std::uint64_t lam = bits_rest_ ? b.read(bits_col_, bits_rest_) : 0;
    if (col >= column_count() || lam >= q_) throw DecodeError("sl2: rank field out of range");
    return unrank(col * q_ + lam);
  }
  friend bool operator==(const Sl2Group& a, const Sl2Group& b) { return a.q_ == b.q_; }

 private:
  // Solutions of ad - bc = 1 for fixed (a, c) form the line
  // (b, d) = (0, a^-1) + lambda (a, c) when a != 0, else (-c^-1, 0) + lambda (0, c).
  std::uint32_t line_parameter(const Mat2& x) const {
    return x.a != 0 ? field_.div(x.b, x.a) : field_.div(x.d, x.c);
  }
  void set_line_parameter(Mat2& x, std::uint32_t lambda) const {
    const auto& F = field_;
    if (x.a != 0) {
      x.b = F.mul(lambda, x.a);
      x.d = F.add(F.inv(x.a), F.mul(lambda, x.c));
    } else {
      x.b = F.neg(F.inv(x.c));
      x.d = F.mul(lambda, x.c);
    }
  }
  std::uint64_t order_small() const { return column_count() * q_; }
  std::size_t bits_col_, bits_rest_;
};

// ---------------------------------------------------------------------------
// S_5^n: n independent S_5 coordinates, each stored as its Lehmer code.

struct S5Word {
  std::vector<std::uint8_t> codes;
  friend bool operator==(const S5Word&, const S5Word&) = default;
};

namespace detail {

struct S5Tables {
  std::array<std::array<std::uint8_t, 120>, 120> mul{};
  std::array<std::uint8_t, 120> inv{};

  S5Tables() {
    std::array<std::vector<std::uint8_t>, 120> perms;
    for (std::uint64_t r = 0; r < 120; ++r) perms[r] = lehmer::unrank(r, 5);
    for (int i = 0; i < 120; ++i)
      for (int j = 0; j < 120; ++j) {
        std::vector<std::uint8_t> c(5);
        for (int x = 0; x < 5; ++x) c[x] = perms[i][perms[j][x]];
        mul[i][j] = static_cast<std::uint8_t>(lehmer::rank(c));
        if (lehmer::rank(c) == 0) inv[i] = static_cast<std::uint8_t>(j);
      }
  }

  static const S5Tables& get() {
    static const S5Tables t;
    return t;
  }
};

}  // namespace detail

class ProductS5Group {
 public:
  using element_type = S5Word;
  static constexpr std::size_t kCodeBits = 7;

  explicit ProductS5Group(int n) : n_(n) {
    if (n < 1 || n > 4096) throw UsageError("prods5: n must be in [1, 4096]");
  }

  GroupKind kind() const { return GroupKind::ProductS5; }
  int copies() const { return n_; }
  element_type identity() const { return S5Word{std::vector<std::uint8_t>(n_, 0)}; }
  element_type mul(const S5Word& x, const S5Word& y) const {
    check(x, "mul");
    check(y, "mul");
    const auto& t = detail::S5Tables::get();
    S5Word z{std::vector<std::uint8_t>(n_)};
    for (int i = 0; i < n_; ++i) z.codes[i] = t.mul[x.codes[i]][y.codes[i]];
    return z;
  }
  element_type inv(const S5Word& x) const {
    check(x, "inv");
    const auto& t = detail::S5Tables::get();
    S5Word z{std::vector<std::uint8_t>(n_)};
    for (int i = 0; i < n_; ++i) z.codes[i] = t.inv[x.codes[i]];
    return z;
  }
  element_type sample(Rng& rng) const {
    S5Word z{std::vector<std::uint8_t>(n_)};
    for (auto& c : z.codes) c = static_cast<std::uint8_t>(rng.below(120));
    return z;
  }
  BitString encode(const S5Word& x) const {
    check(x, "encode");
    BitString b;
    for (auto c : x.codes) b.append(c, kCodeBits);
    return b;
  }
  element_type decode(const BitString& b) const {
    if (b.width() != element_bits()) throw DecodeError("prods5: codeword width mismatch");
    S5Word z{std::vector<std::uint8_t>(n_)};
    for (int i = 0; i < n_; ++i) {
      const std::uint64_t c = b.read(kCodeBits * static_cast<std::size_t>(i), kCodeBits);
      if (c >= 120) throw DecodeError("prods5: S_5 Lehmer code out of range");
      z.codes[i] = static_cast<std::uint8_t>(c);
    }
    return z;
  }
  bool contains(const S5Word& x) const {
    return static_cast<int>(x.codes.size()) == n_ &&
           std::all_of(x.codes.begin(), x.codes.end(), [](std::uint8_t c) { return c < 120; });
  }
  BigUInt order() const { return boost::multiprecision::pow(BigUInt(120), static_cast<unsigned>(n_)); }
  std::size_t element_bits() const { return kCodeBits * static_cast<std::size_t>(n_); }
  std::string descriptor() const { return "prods5:" + std::to_string(n_); }
  std::string format(const S5Word& x) const {
    std::string s = "[";
    for (int i = 0; i < n_; ++i) {
      if (i) s += ' ';
      s += std::to_string(x.codes[i]);
    }
    return s + "]";
  }
  std::uint64_t rank(const S5Word& x) const {
    if (n_ > 9) throw UnsupportedError("prods5: dense rank needs n <= 9");
    check(x, "rank");
    std::uint64_t r = 0;
    for (auto c : x.codes) r = r * 120 + c;
    return r;
  }
  element_type unrank(std::uint64_t r) const {
    if (n_ > 9) throw UnsupportedError("prods5: dense rank needs n <= 9");
    S5Word z{std::vector<std::uint8_t>(n_)};
    for (int i = n_ - 1; i >= 0; --i) {
      z.codes[i] = static_cast<std::uint8_t>(r % 120);
      r /= 120;
    }
    if (r != 0) throw UsageError("unrank: rank out of range");
    return z;
  }
  bool is_abelian() const { return false; }
  friend bool operator==(const ProductS5Group& a, const ProductS5Group& b) { return a.n_ == b.n_; }

 private:
  void check(const S5Word& x, const char* where) const {
    if (static_cast<int>(x.codes.size()) != n_)
      throw UsageError(std::string(where) + ": word length does not match " + descriptor());
  }
  int n_;
};

// ---------------------------------------------------------------------------
// G x G with componentwise operations; used for the key-recovery reduction.

template <FiniteGroup G>
class DirectSquare {
 public:
  using base_element = element_t<G>;
  using element_type = std::pair<base_element, base_element>;

  explicit DirectSquare(G base) : base_(std::move(base)) {}

  const G& base() const { return base_; }
  GroupKind kind() const { return base_.kind(); }
  element_type identity() const { return {base_.identity(), base_.identity()}; }
  element_type mul(const element_type& x, const element_type& y) const {
    return {base_.mul(x.first, y.first), base_.mul(x.second, y.second)};
  }
  element_type inv(const element_type& x) const { return {base_.inv(x.first), base_.inv(x.second)}; }
  element_type sample(Rng& rng) const {
    auto a = base_.sample(rng);
    return {std::move(a), base_.sample(rng)};
  }
  BitString encode(const element_type& x) const {
    const BitString a = base_.encode(x.first), b = base_.encode(x.second);
    BitString out = a;
    for (std::size_t i = 0; i < b.width(); ++i) out.append(b.bit(i), 1);
    return out;
  }
  element_type decode(const BitString& bits) const {
    const std::size_t w = base_.element_bits();
    if (bits.width() != 2 * w) throw DecodeError("G x G: codeword width mismatch");
    BitString a, b;
    for (std::size_t i = 0; i < w; ++i) a.append(bits.bit(i), 1);
    for (std::size_t i = 0; i < w; ++i) b.append(bits.bit(w + i), 1);
    return {base_.decode(a), base_.decode(b)};
  }
  bool contains(const element_type& x) const { return base_.contains(x.first) && base_.contains(x.second); }
  BigUInt order() const { return base_.order() * base_.order(); }
  std::size_t element_bits() const { return 2 * base_.element_bits(); }
  std::string descriptor() const { return base_.descriptor() + "^2"; }
  std::string format(const element_type& x) const {
    return "(" + base_.format(x.first) + ", " + base_.format(x.second) + ")";
  }
  std::uint64_t rank(const element_type& x) const { return base_.rank(x.first) * order_u64(base_) + base_.rank(x.second); }
  element_type unrank(std::uint64_t r) const {
    const std::uint64_t n = order_u64(base_);
    return {base_.unrank(r / n), base_.unrank(r % n)};
  }
  bool is_abelian() const { return base_.is_abelian(); }

 private:
  G base_;
};

static_assert(FiniteGroup<XorGroup>);
static_assert(FiniteGroup<CyclicPow2Group>);
static_assert(FiniteGroup<CyclicGroup>);
static_assert(FiniteGroup<SymmetricGroup>);
static_assert(FiniteGroup<Gl2Group>);
static_assert(FiniteGroup<Sl2Group>);
static_assert(FiniteGroup<ProductS5Group>);
static_assert(FiniteGroup<DirectSquare<CyclicPow2Group>>);

// Calls fn(element) for every element in rank order. Requires |G| <= limit.
template <FiniteGroup G, class Fn>
void for_each_element(const G& g, Fn&& fn, std::uint64_t limit = std::uint64_t{1} << 24) {
  const std::uint64_t n = order_u64(g);
  if (n > limit) throw BudgetError(g.descriptor() + ": too large to enumerate");
  for (std::uint64_t r = 0; r < n; ++r) fn(g.unrank(r));
}

}  // namespace hslab
