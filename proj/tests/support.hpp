#pragma once

#include <string>
#include <vector>

#include "morgan/io.hpp"
#include "morgan/poset.hpp"

#ifndef MORGAN_DATA_DIR
#define MORGAN_DATA_DIR "tests/data"
#endif

namespace support {

inline std::string data(const std::string& name) { return std::string(MORGAN_DATA_DIR) + "/" + name; }

inline morgan::Poset golden_poset(const std::string& name) {
  return std::get<morgan::Poset>(morgan::io::read_document(data(name)));
}

inline morgan::InvPoset golden_inv(const std::string& name) {
  return std::get<morgan::InvPoset>(morgan::io::read_document(data(name)));
}

inline morgan::Poset poset(std::vector<std::string> names,
                           std::vector<std::pair<std::string, std::string>> covers) {
  return morgan::validate_poset({std::move(names), std::move(covers), morgan::Closure::cover_relation});
}

inline morgan::Poset chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t k = 0; k < n; ++k) {
    names.push_back(std::to_string(k));
    if (k > 0) covers.emplace_back(std::to_string(k - 1), std::to_string(k));
  }
  return poset(names, covers);
}

inline morgan::Poset antichain(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(std::to_string(k));
  return poset(names, {});
}

inline std::vector<std::string> names_of(const morgan::Poset& p, const morgan::ElemSet& xs) {
  std::vector<std::string> out;
  for (auto x : xs) out.push_back(p.name(x));
  return out;
}

}  // namespace support
