#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace causaltopo {

/// Subsets of a fixed finite carrier. All relations and set families in this
/// library are stored as dense bitsets keyed by carrier indices.
using Bits = boost::dynamic_bitset<>;

inline Bits bits_of(std::size_t n, std::initializer_list<std::size_t> idx) {
  Bits b(n);
  for (std::size_t i : idx) b.set(i);
  return b;
}

inline Bits bits_from_mask(std::size_t n, std::uint64_t mask) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1u) b.set(i);
  return b;
}

inline std::uint64_t mask_from_bits(const Bits& b) {
  std::uint64_t m = 0;
  for (std::size_t i = b.find_first(); i != Bits::npos; i = b.find_next(i))
    m |= std::uint64_t{1} << i;
  return m;
}

inline std::vector<std::size_t> bit_indices(const Bits& b) {
  std::vector<std::size_t> out;
  for (std::size_t i = b.find_first(); i != Bits::npos; i = b.find_next(i))
    out.push_back(i);
  return out;
}

template <typename Fn>
void for_each_bit(const Bits& b, Fn&& fn) {
  for (std::size_t i = b.find_first(); i != Bits::npos; i = b.find_next(i)) fn(i);
}

}  // namespace causaltopo
