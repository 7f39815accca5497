#pragma once

#include <sodium.h>

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

#include "hslab/error.hpp"

namespace hslab {

namespace detail {

inline void sodium_once() {
  static const int status = sodium_init();
  if (status < 0) throw std::runtime_error("libsodium failed to initialise");
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline void store_le64(unsigned char* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out[i] = static_cast<unsigned char>(v >> (8 * i));
}

inline std::uint64_t load_le64(const unsigned char* in) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | in[i];
  return v;
}

}  // namespace detail

/// SipHash-2-4 of `msg` under a 128-bit key expanded from `key`.
inline std::uint64_t keyed_hash(std::uint64_t key, std::span<const unsigned char> msg) {
  detail::sodium_once();
  unsigned char k[crypto_shorthash_KEYBYTES];
  static_assert(crypto_shorthash_KEYBYTES == 16 && crypto_shorthash_BYTES == 8);
  detail::store_le64(k, detail::splitmix64(key));
  detail::store_le64(k + 8, detail::splitmix64(key ^ 0x5851f42d4c957f2dULL));
  unsigned char out[crypto_shorthash_BYTES];
  crypto_shorthash(out, msg.data(), msg.size(), k);
  return detail::load_le64(out);
}

inline std::uint64_t keyed_hash(std::uint64_t key, std::string_view msg) {
  return keyed_hash(key, std::span(reinterpret_cast<const unsigned char*>(msg.data()), msg.size()));
}

/// Hash of a short list of words; used for tags, seeds and round keys.
inline std::uint64_t keyed_hash_words(std::uint64_t key, std::initializer_list<std::uint64_t> words) {
  std::array<unsigned char, 8 * 8> buf{};
  if (words.size() > 8) throw UsageError("keyed_hash_words: at most 8 words");
  std::size_t i = 0;
  for (auto w : words) detail::store_le64(buf.data() + 8 * i++, w);
  return keyed_hash(key, std::span<const unsigned char>(buf.data(), 8 * i));
}

/// Child seed for a named sub-experiment; stable across processes and platforms.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
  return keyed_hash_words(seed, {keyed_hash(0x68736c6162ULL, tag), index});
}

// Deterministic random source. Built on mt19937_64 (fully specified by the
// standard); bounded draws use mask-and-reject so streams do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound == 0 means the full 64-bit range.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return next();
    if (bound == 1) return 0;
    const int shift = __builtin_clzll(bound - 1);
    for (;;) {
      const std::uint64_t v = next() >> shift;
      if (v < bound) return v;
    }
  }

  bool coin() { return (next() >> 63) != 0; }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  Rng fork(std::string_view tag) { return Rng(derive_seed(next(), tag)); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hslab
