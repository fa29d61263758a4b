#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace spacing {

/// Arbitrary-precision integer used for every position, length and spacing.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& value) { return value.str(); }

/// Parses a nonnegative decimal string. Signs, whitespace and empty input are rejected.
inline BigInt parse_decimal(std::string_view text)
{
  if (text.empty())
    throw std::invalid_argument("empty decimal string");
  for (char c : text)
    if (c < '0' || c > '9')
      throw std::invalid_argument("not a nonnegative decimal: '" + std::string(text) + "'");
  if (text.size() > 1 && text.front() == '0')
    throw std::invalid_argument("non-canonical decimal (leading zero): '" + std::string(text) + "'");
  return BigInt(std::string(text));
}

inline std::optional<std::uint64_t> to_u64(const BigInt& value)
{
  if (value < 0 || value > std::numeric_limits<std::uint64_t>::max())
    return std::nullopt;
  return value.convert_to<std::uint64_t>();
}

inline BigInt pow(const BigInt& base, std::uint64_t exponent)
{
  BigInt result = 1;
  BigInt b = base;
  while (exponent != 0) {
    if (exponent & 1U)
      result *= b;
    exponent >>= 1U;
    if (exponent != 0)
      b *= b;
  }
  return result;
}

/// Largest e with base^e <= value, by exact integer arithmetic. Requires value >= 1, base >= 2.
inline std::uint64_t floor_log(const BigInt& value, std::uint64_t base)
{
  if (value < 1 || base < 2)
    throw std::domain_error("floor_log requires value >= 1 and base >= 2");
  if (auto small = to_u64(value)) {
    std::uint64_t v = *small;
    std::uint64_t e = 0;
    while (v >= base) {
      v /= base;
      ++e;
    }
    return e;
  }
  std::uint64_t e = 0;
  BigInt power = base;
  while (power <= value) {
    power *= base;
    ++e;
  }
  return e;
}

inline std::size_t bit_length(const BigInt& value)
{
  return value == 0 ? 0 : boost::multiprecision::msb(value) + 1;
}

} // namespace spacing
