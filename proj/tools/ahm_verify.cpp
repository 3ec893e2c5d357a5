#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ahm/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume verification runner for the attractive Hubbard model"};
  std::string config;
  std::string output;
  app.add_option("config", config, "JSON run configuration")->required();
  app.add_option("-o,--output", output, "Override output.path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return ahm::run_file(config, std::cout, std::cerr, output);
}
