#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rodcomp/io.hpp"

namespace rodcomp {

namespace detail {

inline PackingDocument::RodEntry entry(long dx, long dy, long dz, const char* bx, const char* by,
                                       const char* bz) {
  return {IntVec3{Int(dx), Int(dy), Int(dz)},
          RatVec3{parse_rational(bx), parse_rational(by), parse_rational(bz)}};
}

}  // namespace detail

// Built-in example packings. "blocked_5rod" was found by the brute-force
// oracle: the diagonal rod's line family cuts the only candidate lift out
// of the source cell, so the parallel pair (0,1) is not linearly isotopic.
inline const std::vector<std::pair<std::string, PackingDocument>>& catalog_entries() {
  using detail::entry;
  static const std::vector<std::pair<std::string, PackingDocument>> entries = [] {
    std::vector<std::pair<std::string, PackingDocument>> v;
    v.push_back({"single", {std::string("single"), {entry(1, 0, 0, "0", "0", "0")}}});
    v.push_back({"parallel_pair",
                 {std::string("parallel_pair"),
                  {entry(1, 0, 0, "0", "0", "0"), entry(1, 0, 0, "0", "0", "1/2")}}});
    v.push_back({"axes2",
                 {std::string("axes2"),
                  {entry(1, 0, 0, "0", "0", "0"), entry(0, 1, 0, "0", "0", "1/2")}}});
    v.push_back({"axes3",
                 {std::string("axes3"),
                  {entry(1, 0, 0, "0", "0", "0"), entry(0, 1, 0, "1/2", "0", "1/2"),
                   entry(0, 0, 1, "1/4", "1/2", "0")}}});
    v.push_back({"isotopic_4rod",
                 {std::string("isotopic_4rod"),
                  {entry(1, 0, 0, "0", "0", "0"), entry(1, 0, 0, "0", "1/2", "1/2"),
                   entry(0, 1, 0, "1/2", "0", "1/4"), entry(0, 0, 1, "0", "1/4", "0")}}});
    v.push_back({"blocked_5rod",
                 {std::string("blocked_5rod"),
                  {entry(1, 0, 0, "0", "0", "0"), entry(1, 0, 0, "0", "1/2", "1/2"),
                   entry(0, 1, 0, "1/2", "0", "3/4"), entry(0, 0, 1, "0", "1/4", "0"),
                   entry(0, 1, 1, "1/4", "1/8", "0")}}});
    return v;
  }();
  return entries;
}

inline std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& [name, doc] : catalog_entries()) names.push_back(name);
  return names;
}

inline std::optional<PackingDocument> catalog_get(const std::string& name) {
  for (const auto& [n, doc] : catalog_entries())
    if (n == name) return doc;
  return std::nullopt;
}

// The six invariant cubic rod packings of O'Keeffe et al. (Acta Cryst. A57,
// 2001) are deliberately not bundled: their coordinates are not part of
// this distribution, and shipping approximations would defeat the
// exactness contract. Encode them from the original source if needed.
inline const char* catalog_note() {
  return "The six O'Keeffe cubic rod packings are not bundled; take their "
         "coordinates from O'Keeffe, Plevert, Teshima, Watanabe & Yamada, "
         "Acta Cryst. A57 (2001) 110-111, and encode them as packing files.";
}

}  // namespace rodcomp
