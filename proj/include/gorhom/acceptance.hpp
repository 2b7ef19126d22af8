#pragma once

// The eleven acceptance criteria, shared by the acceptance binary and `gorhom verify paper-suite`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gorhom::acceptance {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // counts on success, first failure otherwise
  double seconds = 0;
};

inline constexpr int kCriteria = 11;

/// Runs one criterion; exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, std::uint64_t seed = 2024);
/// Runs every criterion in order, calling `each` after each one.
std::vector<CriterionResult> run_all(std::uint64_t seed = 2024, const std::function<void(const CriterionResult&)>& each = {});

/// "PASS  3  bridging lemma: 50 complexes, 150 degrees"
std::string format_line(const CriterionResult& r);

}  // namespace gorhom::acceptance
