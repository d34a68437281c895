#pragma once

#include <string>
#include <vector>

#include "fockband/grid.hpp"

namespace fockband {

// One instance of the model operator: the torus grid, the scalar w0 and the
// nine parameter functions, pre-sampled on the grid.  All downstream modules
// consume these arrays and never re-evaluate symbolic forms.
struct ModelProblem {
  TorusGrid grid;
  double w0 = 0.0;
  std::vector<double> w1, v1, v2, v3, v21, v22;  // arity 1, size N
  std::vector<double> w2;                        // arity 2, size N^2
  std::vector<double> w3;                        // arity 3, size N^3

  int points() const { return grid.points(); }
  double weight() const { return grid.weight(); }
};

// Parses a problem file.  Schema:
//   {"nu": int, "n": int, "w0": number,
//    "functions": {"w1": spec, "v1": spec, "v2": spec, "v3": spec,
//                  "v21": spec, "v22": spec, "w2": spec, "w3": spec}}
// where spec is a FunctionSpec payload.  Unknown keys are rejected and every
// sampled value must be finite; errors name the offending field.
ModelProblem parse_problem(const std::string& json_text);

// Named presets: "decoupled", "remark", "symmetric", "gap".
// The gap preset shifts w1 upward by the smallest constant that puts the
// whole spectrum of the C block below the essential-spectrum surrogate of
// the A block with a 0.5 margin, computed at the requested grid.
ModelProblem preset(const std::string& name, int nu = 1, int n = 12);

}  // namespace fockband
