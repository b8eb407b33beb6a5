#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace opbar::acceptance {

struct Result {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;
};

/// Runs criteria 1 to 11. `golden` is the square-zero table written by the
/// brute-force oracle.
std::vector<Result> run(const std::string& golden, unsigned seed = 20261018);

/// One line per criterion: id, PASS/FAIL, time against budget, detail.
void print(std::ostream& os, const std::vector<Result>& results);

}  // namespace opbar::acceptance
