#include <iostream>
#include <string>
#include <vector>

#include <zsum/cli.hpp>

int main(int argc, char** argv) {
  return zsum::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout,
                        std::cerr);
}
