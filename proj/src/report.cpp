#include "metabranch/report.hpp"

#include <sstream>

namespace metabranch {

void Report::append(const Report& other) {
  assertions.insert(assertions.end(), other.assertions.begin(), other.assertions.end());
}

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const Assertion& a : assertions) n += a.pass ? 0 : 1;
  return n;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["lemma_id"] = lemma_id;
  j["anchor"] = anchor;
  j["field"] = field;
  j["extension"] = extension.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(extension);
  j["assertions"] = nlohmann::ordered_json::array();
  for (const Assertion& a : assertions)
    j["assertions"].push_back({{"name", a.name}, {"expected", a.expected}, {"actual", a.actual}, {"pass", a.pass}});
  return j;
}

std::string Report::to_text() const {
  std::ostringstream out;
  out << lemma_id << " [" << field;
  if (!extension.empty()) out << ", " << extension;
  out << "] " << anchor << ": " << (assertions.size() - failures()) << "/" << assertions.size()
      << " assertions pass\n";
  for (const Assertion& a : assertions) {
    if (a.pass) continue;
    out << "  FAIL " << a.name << ": expected " << a.expected << ", got " << a.actual << "\n";
  }
  return out.str();
}

}  // namespace metabranch
