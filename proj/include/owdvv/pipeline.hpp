#pragma once

#include "owdvv/frobenius.hpp"

namespace owdvv {

struct RunConfig {
  std::string geometry = "c3";  // preset name or fan file path
  int framing = 1;
  Caps caps;
  int idem_order = 3;
  std::string command = "all";
  std::string out_path;  // empty: stdout only
};

struct GeometryBundle {
  FanInput input;
  Fan3 fan;
  Fan4 fan4;
  CurveClassLattice lat;
  LocTarget x3, x4;
  int m() const { return x3.num_points; }
};

/// Load a preset ("c3", "conifold") or a fan file, validate and normalize.
/// Throws std::invalid_argument with the itemized validation report when the
/// input is not a smooth toric CY3 with an outer brane.
GeometryBundle load_geometry(const RunConfig& config);

struct Report {
  std::string text;
  bool pass = true;
};

/// Execute the requested command and render the deterministic report.
Report run_pipeline(const RunConfig& config);

}  // namespace owdvv
