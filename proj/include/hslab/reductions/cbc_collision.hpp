#pragma once

// Hidden shift from a CBC-MAC collision. The instrumented MAC replaces the
// block cipher at stage t by F_b(m_t * h(m)), where h(m) is the chaining state
// after t-1 blocks and b(m) is a keyed bit of the first t blocks. A collision
// that first appears at stage t with b(m) != b(m') reveals the shift.

#include <json.hpp>

#include "hslab/ciphers/cbc_mac.hpp"
#include "hslab/instance.hpp"

namespace hslab {

template <FiniteGroup G>
class InstrumentedMac {
 public:
  using Message = std::vector<element_t<G>>;

  InstrumentedMac(G g, const MacKey& key, std::size_t stage, GroupOracle<G> f0, GroupOracle<G> f1,
                  std::uint64_t bit_key)
      : mac_(g, key), g_(std::move(g)), stage_(stage), f0_(std::move(f0)), f1_(std::move(f1)), bit_key_(bit_key) {
    if (stage < 1) throw UsageError("instrumented MAC: stage must be >= 1");
  }

  const G& group() const { return g_; }
  std::size_t stage() const { return stage_; }
  const CbcMac<G>& mac() const { return mac_; }
  const GroupOracle<G>& f0() const { return f0_; }
  const GroupOracle<G>& f1() const { return f1_; }

  // Chaining state after the first stage-1 blocks.
  element_t<G> h(const Message& m) const {
    return mac_.chain(std::span<const element_t<G>>(m.data(), std::min(m.size(), stage_ - 1)));
  }

  int bit(const Message& m) const {
    if (m.size() < stage_) throw UsageError("instrumented MAC: message shorter than the stage");
    std::uint64_t acc = keyed_hash_words(bit_key_, {stage_});
    for (std::size_t i = 0; i < stage_; ++i) acc = keyed_hash_words(bit_key_, {acc, element_hash(g_, bit_key_, m[i])});
    return static_cast<int>(acc & 1);
  }

  // Chaining state after each block (the transcript).
  std::vector<element_t<G>> states(const Message& m) const {
    std::vector<element_t<G>> out;
    auto state = g_.identity();
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j + 1 == stage_) {
        state = (bit(m) ? f1_ : f0_)(g_.mul(m[j], state));
      } else {
        state = mac_.inner()(g_.mul(m[j], state));
      }
      out.push_back(state);
    }
    return out;
  }

  element_t<G> tag(const Message& m) const {
    if (m.empty()) throw UsageError("cbc_mac: empty message");
    return mac_.outer()(states(m).back());
  }

  Oracle<Message, element_t<G>> oracle() const {
    auto self = *this;
    return Oracle<Message, element_t<G>>([self](const Message& m) { return self.tag(m); }, g_.element_bits());
  }

 private:
  CbcMac<G> mac_;
  G g_;
  std::size_t stage_;
  GroupOracle<G> f0_, f1_;
  std::uint64_t bit_key_;
};

// F0 = f, F1 = g read as group elements; g(x) = f(s x) gives F1(z) = F0(s z).
template <FiniteGroup G>
InstrumentedMac<G> instrument_mac(const G& grp, const LabelOracle<G>& f, const LabelOracle<G>& g, std::size_t stage,
                                  std::uint64_t seed) {
  return InstrumentedMac<G>(grp, mac_keygen(derive_seed(seed, "cbc-mac-key")), stage, group_valued(grp, f),
                            group_valued(grp, g), derive_seed(seed, "cbc-bit"));
}

enum class ExtractionStatus { Ok, SameBit, PrefixCollision, UnequalLength, NotACollision, NotAtStage, CheckFailed };

inline std::string to_string(ExtractionStatus s) {
  switch (s) {
    case ExtractionStatus::Ok: return "ok";
    case ExtractionStatus::SameBit: return "retry: equal bits";
    case ExtractionStatus::PrefixCollision: return "minimal-collision violation";
    case ExtractionStatus::UnequalLength: return "out of model: unequal lengths";
    case ExtractionStatus::NotACollision: return "not a collision";
    case ExtractionStatus::NotAtStage: return "collision does not arise at the instrumented stage";
    case ExtractionStatus::CheckFailed: return "F0/F1 equality check failed";
  }
  return "?";
}

template <FiniteGroup G>
struct Extraction {
  ExtractionStatus status = ExtractionStatus::NotACollision;
  std::optional<element_t<G>> shift;
  nlohmann::json diagnostics = nlohmann::json::object();
};

template <FiniteGroup G>
Extraction<G> extract_shift_from_mac_collision(const InstrumentedMac<G>& mac, const std::vector<element_t<G>>& m1,
                                               const std::vector<element_t<G>>& m2) {
  const auto& grp = mac.group();
  const std::size_t t = mac.stage();
  Extraction<G> res;
  if (m1.size() != m2.size()) {
    res.status = ExtractionStatus::UnequalLength;
    return res;
  }
  if (m1 == m2 || m1.size() < t) {
    res.status = ExtractionStatus::NotACollision;
    res.diagnostics = {{"length", m1.size()}, {"stage", t}};
    return res;
  }
  const auto s1 = mac.states(m1), s2 = mac.states(m2);
  std::size_t first = s1.size();
  for (std::size_t j = 0; j < s1.size(); ++j)
    if (s1[j] == s2[j]) {
      first = j + 1;
      break;
    }
  if (first > s1.size()) {
    res.status = ExtractionStatus::NotACollision;
    return res;
  }
  if (first < s1.size()) {
    res.status = ExtractionStatus::PrefixCollision;
    res.diagnostics = {{"prefix_blocks", first}};
    return res;
  }
  if (first != t) {
    res.status = ExtractionStatus::NotAtStage;
    res.diagnostics = {{"collision_stage", first}, {"stage", t}};
    return res;
  }
  const int b1 = mac.bit(m1), b2 = mac.bit(m2);
  if (b1 == b2) {
    res.status = ExtractionStatus::SameBit;
    return res;
  }
  // Order so that the first message went through F0.
  const auto& a = b1 == 0 ? m1 : m2;
  const auto& b = b1 == 0 ? m2 : m1;
  const auto u = grp.mul(a[t - 1], mac.h(a));
  const auto v = grp.mul(b[t - 1], mac.h(b));
  if (mac.f0()(u) != mac.f1()(v)) {
    res.status = ExtractionStatus::CheckFailed;
    return res;
  }
  res.status = ExtractionStatus::Ok;
  res.shift = grp.mul(u, grp.inv(v));
  return res;
}

// A stage-t collision built from the secret shift: equal-length messages of t
// blocks with distinct random prefixes, last blocks y and s^-1 y h h'^-1, and
// bits 0 and 1.
template <FiniteGroup G>
std::pair<std::vector<element_t<G>>, std::vector<element_t<G>>> synthetic_mac_collision(const InstrumentedMac<G>& mac,
                                                                                        const element_t<G>& s,
                                                                                        Rng& rng,
                                                                                        int max_attempts = 1000) {
  const auto& grp = mac.group();
  const std::size_t t = mac.stage();
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::vector<element_t<G>> m1, m2;
    for (std::size_t i = 0; i + 1 < t; ++i) {
      m1.push_back(grp.sample(rng));
      m2.push_back(grp.sample(rng));
    }
    const auto y1 = grp.sample(rng);
    const auto h1 = mac.h(m1), h2 = mac.h(m2);
    m1.push_back(y1);
    m2.push_back(grp.mul(grp.mul(grp.inv(s), y1), grp.mul(h1, grp.inv(h2))));
    if (m1 == m2 || mac.bit(m1) != 0 || mac.bit(m2) != 1) continue;
    const auto s1 = mac.states(m1), s2 = mac.states(m2);
    bool prefix_clash = false;
    for (std::size_t j = 0; j + 1 < t; ++j) prefix_clash = prefix_clash || s1[j] == s2[j];
    if (!prefix_clash) return {m1, m2};
  }
  throw BudgetError("synthetic collision: no valid message pair found");
}

// A collision finder sees only the MAC oracle.
template <FiniteGroup G>
using MacCollisionFinder = std::function<std::optional<std::pair<std::vector<element_t<G>>, std::vector<element_t<G>>>>(
    const InstrumentedMac<G>&, const Oracle<std::vector<element_t<G>>, element_t<G>>&, Rng&)>;

template <FiniteGroup G>
struct CollisionSearchResult {
  std::optional<element_t<G>> shift;
  std::size_t stage = 0;
  std::uint64_t finder_calls = 0;
  std::vector<std::string> log;
};

// Guesses the stage t = 1..max_blocks; on equal bits the finder is rerun.
template <FiniteGroup G>
CollisionSearchResult<G> shift_from_mac_collisions(const MacCollisionFinder<G>& finder, const G& grp,
                                                   const LabelOracle<G>& f, const LabelOracle<G>& g,
                                                   std::size_t max_blocks, std::uint64_t seed, int retries = 8) {
  CollisionSearchResult<G> res;
  Rng rng(derive_seed(seed, "cbc-harness"));
  for (std::size_t t = 1; t <= max_blocks; ++t) {
    const auto mac = instrument_mac(grp, f, g, t, seed);
    const auto oracle = mac.oracle();
    for (int r = 0; r < retries; ++r) {
      ++res.finder_calls;
      const auto found = finder(mac, oracle, rng);
      if (!found) break;
      const auto ex = extract_shift_from_mac_collision(mac, found->first, found->second);
      res.log.push_back("t=" + std::to_string(t) + ": " + to_string(ex.status));
      if (ex.status == ExtractionStatus::Ok) {
        res.shift = ex.shift;
        res.stage = t;
        return res;
      }
      if (ex.status != ExtractionStatus::SameBit) break;
    }
  }
  return res;
}

}  // namespace hslab
