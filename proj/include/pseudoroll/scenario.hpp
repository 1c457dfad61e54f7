#pragma once

#include <string>
#include <vector>

#include "pseudoroll/geometry.hpp"
#include "pseudoroll/rolling.hpp"

namespace pseudoroll {

/// Parsed scenario file: the common simulation inputs plus the
/// command-specific optional sections.  Which sections are mandatory is
/// decided by the command that consumes the scenario, not by the parser.
struct Scenario {
  Signature sig = Signature(3, 1);
  double level = 1.0;
  VectorXd x0;

  double t_end = 1.0;
  double step = 1e-3;

  bool has_control = false;
  Control control;

  bool has_target = false;  ///< reach
  VectorXd target;

  int grid_na = 81;  ///< partition
  int grid_nb = 128;
  double a_max = 2.5;

  bool has_transport = false;  ///< transport
  VectorXd transport_y0;
  FrameFlavor transport_flavor = FrameFlavor::Tangent;

  std::vector<VectorXd> frame_tangent;  ///< frames / config-matrices
  std::vector<VectorXd> frame_normal;
  std::vector<VectorXd> frame_hat_tangent;
  std::vector<VectorXd> frame_hat_normal;

  std::string input_csv;  ///< lift-check: precomputed trivialized curve
};

/// Parse scenario JSON.  `path` is used only to position error messages.
/// Malformed JSON or ill-typed fields raise ParseError (with line/column
/// when the JSON itself does not parse).
Scenario parse_scenario(const std::string& text, const std::string& path);

/// Read and parse a scenario file (IoError when unreadable).
Scenario load_scenario(const std::string& path);

}  // namespace pseudoroll
