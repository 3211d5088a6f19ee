#pragma once

#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace metabranch {

struct Assertion {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

/// Named list of expected/actual checks for one verified statement.
struct Report {
  std::string lemma_id;
  std::string anchor;
  std::string field;
  std::string extension;
  std::vector<Assertion> assertions;

  void check(const std::string& name, const std::string& expected, const std::string& actual) {
    assertions.push_back({name, expected, actual, expected == actual});
  }
  template <std::integral T, std::integral U>
  void check(const std::string& name, T expected, U actual) {
    check(name, std::to_string(expected), std::to_string(actual));
  }
  void check(const std::string& name, bool expected, bool actual) {
    check(name, std::string(expected ? "true" : "false"), std::string(actual ? "true" : "false"));
  }
  void append(const Report& other);

  std::size_t failures() const;
  bool all_pass() const { return failures() == 0; }

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

}  // namespace metabranch
