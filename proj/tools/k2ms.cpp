#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <iostream>

#include "k2ms/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const int code = k2ms::cli::run(args, std::cout, std::cerr);
  // The report itself never carries a timestamp.
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (std::getenv("K2MS_LOG")) std::clog << std::put_time(std::gmtime(&now), "%FT%TZ") << " exit=" << code << "\n";
  return code;
}
