#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qdc {

/// A classical n-bit string. Bit i belongs to node/qubit i; the text form
/// renders node 0 leftmost, while the amplitude-index form puts qubit 0 in
/// the least significant bit.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::size_t n) : bits_(n, 0) {}
  explicit Bitstring(std::vector<std::uint8_t> bits);

  static Bitstring from_string(std::string_view text);
  static Bitstring from_index(std::uint64_t index, int num_bits);
  static Bitstring ones(std::size_t n) { return Bitstring(std::vector<std::uint8_t>(n, 1)); }

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  void set(std::size_t i, bool value = true) { bits_[i] = value ? 1 : 0; }

  std::uint64_t to_index() const;
  std::string to_string() const;
  std::vector<int> support() const;
  const std::vector<std::uint8_t>& bits() const { return bits_; }

  auto operator<=>(const Bitstring&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Number of set bits.
int hamming_weight(const Bitstring& b);

}  // namespace qdc
