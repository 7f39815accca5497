#pragma once

// Runtime group selection from descriptors such as "sym:5" or "gl2:4".

#include <charconv>
#include <string>
#include <string_view>
#include <variant>

#include "hslab/error.hpp"
#include "hslab/groups.hpp"

namespace hslab {

using AnyGroup = std::variant<XorGroup, CyclicPow2Group, CyclicGroup, SymmetricGroup, Gl2Group, Sl2Group, ProductS5Group>;

namespace detail {

inline std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw UsageError("bad " + std::string(what) + " parameter '" + std::string(text) + "'");
  return v;
}

}  // namespace detail

// Grammar: xor:<n> | z2n:<n> | zn:<N> | sym:<n> | gl2:<q> | sl2:<q> | prods5:<n>
inline AnyGroup parse_group(std::string_view desc) {
  const auto colon = desc.find(':');
  if (colon == std::string_view::npos) throw UsageError("group descriptor needs <family>:<param>, got '" + std::string(desc) + "'");
  const std::string_view fam = desc.substr(0, colon);
  const std::uint64_t p = detail::parse_u64(desc.substr(colon + 1), fam);
  auto narrow = [&](std::uint64_t hi) {
    if (p > hi) throw UsageError(std::string(desc) + ": parameter too large");
    return p;
  };
  if (fam == "xor") return XorGroup(static_cast<unsigned>(narrow(64)));
  if (fam == "z2n") return CyclicPow2Group(static_cast<unsigned>(narrow(64)));
  if (fam == "zn") return CyclicGroup(p);
  if (fam == "sym") return SymmetricGroup(static_cast<int>(narrow(255)));
  if (fam == "gl2") return Gl2Group(static_cast<std::uint32_t>(narrow(65536)));
  if (fam == "sl2") return Sl2Group(static_cast<std::uint32_t>(narrow(65536)));
  if (fam == "prods5") return ProductS5Group(static_cast<int>(narrow(4096)));
  throw UsageError("unknown group family '" + std::string(fam) + "'");
}

inline std::string descriptor(const AnyGroup& g) {
  return std::visit([](const auto& x) { return x.descriptor(); }, g);
}

}  // namespace hslab
