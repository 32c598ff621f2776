#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "owdvv/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact open/closed Gromov-Witten engine for toric Calabi-Yau 3-folds"};

  owdvv::RunConfig config;
  std::string max_class = "2,2";
  app.add_option("--geometry", config.geometry, "preset (c3, conifold) or fan file path")
      ->capture_default_str();
  app.add_option("--framing", config.framing, "integer framing of the brane")
      ->capture_default_str();
  app.add_option("--max-class", max_class, "class caps A,B: beta coordinates <= A, winding <= B")
      ->capture_default_str();
  app.add_option("--max-tdeg", config.caps.tdeg, "t-degree cap beyond the third derivatives")
      ->capture_default_str();
  app.add_option("--idem-order", config.idem_order, "idempotent basis order (mod I^n)")
      ->capture_default_str();
  app.add_option("--out", config.out_path, "write the report to this file");
  app.add_option("--command", config.command,
                 "invariants | potentials | extract | verify-wdvv | verify-open-wdvv | "
                 "frobenius | fmanifold | all")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  size_t comma = max_class.find(',');
  try {
    if (comma == std::string::npos) {
      config.caps.beta = config.caps.d = std::stoi(max_class);
    } else {
      config.caps.beta = std::stoi(max_class.substr(0, comma));
      config.caps.d = std::stoi(max_class.substr(comma + 1));
    }
  } catch (const std::exception&) {
    std::cerr << "bad --max-class value '" << max_class << "'\n";
    return 2;
  }
  if (config.caps.beta < 1 || config.caps.d < 1) {
    if (config.command != "invariants" && config.command != "potentials") {
      std::cerr << "verification commands need class caps of at least 1,1\n";
      return 2;
    }
  }

  try {
    owdvv::Report report = owdvv::run_pipeline(config);
    std::cout << report.text;
    return report.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
