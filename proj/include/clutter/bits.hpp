#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace clutter {

// Subsets of a ground set of at most 64 elements, element i <-> bit i.
using Mask = std::uint64_t;

inline constexpr int max_elements = 64;

inline int popcount(Mask m) { return std::popcount(m); }

inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }

inline bool contains(Mask m, int i) { return (m >> i) & 1u; }

inline Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
}

inline int lowest_bit(Mask m) {
  if (m == 0) throw std::invalid_argument("lowest_bit: empty mask");
  return std::countr_zero(m);
}

inline std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

template <typename It>
Mask mask_of(It first, It last) {
  Mask m = 0;
  for (; first != last; ++first) {
    int i = static_cast<int>(*first);
    if (i < 0 || i >= max_elements) throw std::out_of_range("mask_of: element out of range");
    m |= Mask{1} << i;
  }
  return m;
}

inline Mask mask_of(std::initializer_list<int> xs) { return mask_of(xs.begin(), xs.end()); }

// Convenience for literals written with 1-based element names.
inline Mask mask_of_one_based(std::initializer_list<int> xs) {
  Mask m = 0;
  for (int x : xs) {
    if (x < 1 || x > max_elements) throw std::out_of_range("mask_of_one_based: element out of range");
    m |= Mask{1} << (x - 1);
  }
  return m;
}

// "0101..." with character j giving membership of element j.
inline std::string mask_to_string(Mask m, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if (contains(m, i)) s[i] = '1';
  return s;
}

inline Mask mask_from_string(const std::string& s) {
  if (s.size() > max_elements) throw std::out_of_range("mask_from_string: too long");
  Mask m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      m |= Mask{1} << i;
    else if (s[i] != '0')
      throw std::invalid_argument("mask_from_string: expected 0/1 string");
  }
  return m;
}

}  // namespace clutter
