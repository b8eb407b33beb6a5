#include <iostream>

#include "acceptance.hpp"

int main(int argc, char** argv) {
  const std::string golden = argc > 1 ? argv[1] : OPBAR_GOLDEN;
  const auto results = opbar::acceptance::run(golden);
  opbar::acceptance::print(std::cout, results);
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}
