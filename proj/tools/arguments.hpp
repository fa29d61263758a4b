#pragma once

// Parsing of the compact command-line forms for sets, words and patterns.
//
//   set:      blocks:M | explicit:3,7,10..20 | <path to a descriptor, staged or lemma JSON>
//   word:     0/1 string ("1001") or sparse "LEN:P1+P2+..." ("9:0+8")
//   pattern:  as word (a cylinder), or a 0/1/* string where * leaves the position free
//   lists:    comma separated; a single entry is broadcast where a list is expected

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spacing/spacing.hpp"

namespace spacing::cli {

inline std::vector<std::string> split(std::string_view text, char sep)
{
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos)
      return out;
    start = pos + 1;
  }
}

inline std::uint64_t parse_u64(std::string_view text)
{
  const auto v = parse_decimal(text);
  auto small = to_u64(v);
  if (!small)
    throw std::invalid_argument("value out of range: " + std::string(text));
  return *small;
}

inline std::vector<std::uint64_t> parse_u64_list(std::string_view text)
{
  std::vector<std::uint64_t> out;
  for (const auto& part : split(text, ','))
    out.push_back(parse_u64(part));
  return out;
}

inline io::json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::parse_error& e) {
    throw io::FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// Any document that names a spacing set: a descriptor, a staged construction, or a lemma transcript (its B).
inline SpacingSet set_from_document(const io::json& doc)
{
  if (doc.contains("kind"))
    return io::set_from(doc);
  const auto type = io::field(doc, "type");
  if (type == "staged")
    return io::staged_from(doc).spacing_set();
  if (type == "lemma")
    return io::lemma_from(doc).B;
  if (doc.contains("set"))
    return io::set_from(doc.at("set"));
  throw io::FormatError("document does not describe a spacing set");
}

/// `stage` picks one stage of a staged union as an explicit set.
inline SpacingSet parse_set(std::string_view text, std::optional<std::uint64_t> stage = std::nullopt)
{
  SpacingSet set = [&]() -> SpacingSet {
    if (text.starts_with("blocks:"))
      return BlockFamily{parse_u64(text.substr(7))};
    if (text.starts_with("explicit:")) {
      std::vector<BigInt> values;
      const auto body = text.substr(9);
      if (!body.empty())
        for (const auto& part : split(body, ',')) {
          if (auto dots = part.find(".."); dots != std::string::npos) {
            const auto lo = parse_u64(std::string_view(part).substr(0, dots));
            const auto hi = parse_u64(std::string_view(part).substr(dots + 2));
            for (auto v = lo; v <= hi && lo <= hi; ++v)
              values.emplace_back(v);
          } else {
            values.push_back(parse_decimal(part));
          }
        }
      return SpacingSet::explicit_set(std::move(values));
    }
    return set_from_document(read_json_file(std::string(text)));
  }();
  if (!stage)
    return set;
  const auto* staged = set.as_staged();
  if (staged == nullptr)
    throw std::invalid_argument("--stage needs a staged set");
  if (*stage >= staged->stages().size())
    throw std::invalid_argument("stage " + std::to_string(*stage) + " does not exist");
  return staged->stages()[*stage];
}

inline Word parse_word(std::string_view text)
{
  if (auto colon = text.find(':'); colon != std::string_view::npos) {
    std::vector<BigInt> support;
    const auto body = text.substr(colon + 1);
    if (!body.empty())
      for (const auto& p : split(body, '+'))
        support.push_back(parse_decimal(p));
    return Word(parse_decimal(text.substr(0, colon)), std::move(support));
  }
  return Word::from_string(text);
}

inline PartialPattern parse_pattern(std::string_view text)
{
  if (text.find_first_of("*.") != std::string_view::npos)
    return PartialPattern::from_text(text);
  return PartialPattern::cylinder(parse_word(text));
}

/// Comma-separated patterns, broadcast to `count` entries when a single one is given.
inline std::vector<PartialPattern> parse_patterns(std::string_view text, std::size_t count)
{
  std::vector<PartialPattern> out;
  for (const auto& part : split(text, ','))
    out.push_back(parse_pattern(part));
  if (out.size() == 1 && count > 1)
    out.assign(count, out.front());
  if (count != 0 && out.size() != count)
    throw std::invalid_argument("expected " + std::to_string(count) + " patterns, got " + std::to_string(out.size()));
  return out;
}

/// "u/v,u/v,..." into sources and targets.
inline std::pair<std::vector<PartialPattern>, std::vector<PartialPattern>> parse_pairs(std::string_view text,
                                                                                     std::size_t count)
{
  std::vector<PartialPattern> sources;
  std::vector<PartialPattern> targets;
  for (const auto& pair : split(text, ',')) {
    const auto parts = split(pair, '/');
    if (parts.size() != 2)
      throw std::invalid_argument("pair '" + pair + "' must have the form u/v");
    sources.push_back(parse_pattern(parts[0]));
    targets.push_back(parse_pattern(parts[1]));
  }
  if (sources.size() == 1 && count > 1) {
    sources.assign(count, sources.front());
    targets.assign(count, targets.front());
  }
  if (count != 0 && sources.size() != count)
    throw std::invalid_argument("expected " + std::to_string(count) + " pairs, got " + std::to_string(sources.size()));
  return {sources, targets};
}

} // namespace spacing::cli
