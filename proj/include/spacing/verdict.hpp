#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spacing/bigint.hpp"

namespace spacing {

enum class Status { Proven, VerifiedUpToHorizon, Refuted };

inline const char* to_string(Status s)
{
  switch (s) {
  case Status::Proven: return "proven";
  case Status::VerifiedUpToHorizon: return "verified";
  case Status::Refuted: return "refuted";
  }
  return "?";
}

/// Tagged evidence: a run, a failing pair, a violating value, ...
struct Certificate {
  std::string tag;
  std::vector<BigInt> values;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Three-valued outcome of a bounded check.
///
/// `horizon` is set whenever the claim only covers [1, horizon]; a Refuted
/// verdict without a horizon is absolute. `structural` names an argument that
/// settles the property for all n (e.g. "block-lengths-unbounded").
struct HorizonVerdict {
  Status status = Status::VerifiedUpToHorizon;
  std::optional<std::uint64_t> horizon;
  std::optional<Certificate> certificate;
  std::optional<std::string> structural;

  static HorizonVerdict proven(std::string reason, std::optional<Certificate> cert = std::nullopt)
  {
    return {Status::Proven, std::nullopt, std::move(cert), std::move(reason)};
  }
  static HorizonVerdict verified(std::uint64_t horizon, std::optional<Certificate> cert = std::nullopt)
  {
    return {Status::VerifiedUpToHorizon, horizon, std::move(cert), std::nullopt};
  }
  static HorizonVerdict refuted(Certificate cert, std::optional<std::uint64_t> horizon = std::nullopt)
  {
    return {Status::Refuted, horizon, std::move(cert), std::nullopt};
  }

  bool holds() const noexcept { return status != Status::Refuted; }

  friend bool operator==(const HorizonVerdict&, const HorizonVerdict&) = default;
};

/// Thrown when a construction would exceed a feasibility bound.
class InfeasibleError : public std::runtime_error {
public:
  InfeasibleError(std::string quantity, BigInt value, const std::string& detail)
      : std::runtime_error(detail + " (" + quantity + " = " + abbreviate(value) + ")")
      , quantity_(std::move(quantity))
      , value_(std::move(value))
      , detail_(detail)
  {
  }

  /// Same blocking quantity, with `context` prepended to the message.
  InfeasibleError within(const std::string& context) const { return {quantity_, value_, context + ": " + detail_}; }

  const std::string& quantity() const noexcept { return quantity_; }
  const BigInt& value() const noexcept { return value_; }

private:
  static std::string abbreviate(const BigInt& v)
  {
    auto s = to_decimal(v);
    if (s.size() <= 40)
      return s;
    return s.substr(0, 12) + "...(" + std::to_string(s.size()) + " digits)";
  }

  std::string quantity_;
  BigInt value_;
  std::string detail_;
};

} // namespace spacing
