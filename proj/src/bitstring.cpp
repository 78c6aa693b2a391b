#include "qdc/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdc {

Bitstring::Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) {
    if (b > 1) throw std::invalid_argument("Bitstring: bit values must be 0 or 1");
  }
}

Bitstring Bitstring::from_string(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("Bitstring: invalid character '" + std::string(1, c) + "'");
    }
    bits.push_back(c == '1' ? 1 : 0);
  }
  return Bitstring(std::move(bits));
}

Bitstring Bitstring::from_index(std::uint64_t index, int num_bits) {
  Bitstring b(static_cast<std::size_t>(num_bits));
  for (int i = 0; i < num_bits; ++i) b.bits_[i] = (index >> i) & 1U;
  return b;
}

std::uint64_t Bitstring::to_index() const {
  if (bits_.size() > 64) throw std::length_error("Bitstring::to_index: more than 64 bits");
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) index |= std::uint64_t{1} << i;
  }
  return index;
}

std::string Bitstring::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) s[i] = '1';
  }
  return s;
}

std::vector<int> Bitstring::support() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

int hamming_weight(const Bitstring& b) {
  return static_cast<int>(std::count(b.bits().begin(), b.bits().end(), std::uint8_t{1}));
}

}  // namespace qdc
