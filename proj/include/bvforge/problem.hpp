#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bvforge/bounds.hpp"
#include "bvforge/variational.hpp"

namespace bvforge {

/// A declarative problem: variables, a Lagrangian and truncation bounds.
///
/// File layout (`#` starts a comment):
///
///     [problem]
///     name = maxwell2d
///     base_dim = 2          # 0 or omitted: finite-dimensional
///
///     [variables]
///     field A1
///     field psi odd
///     parameter m
///     coordinate t
///
///     [lagrangian]
///     1/2*(A2[1,0] - A1[0,1])^2
///
///     [bounds]
///     jet_order = 3
///     degree_bound = 6
struct ProblemSpec {
  std::string name;
  JetRingSpec ring;  // declaration order; max_jet_order mirrors bounds
  std::string lagrangian;
  Bounds bounds;

  bool finite_mode() const { return ring.finite_mode(); }
  bool operator==(const ProblemSpec& o) const;
};

struct Diagnostic {
  int line = 0;
  int column = 0;
  std::string message;
};

class ProblemError : public std::runtime_error {
 public:
  ProblemError(std::string origin, std::vector<Diagnostic> diags);
  const std::vector<Diagnostic>& diagnostics() const { return diags_; }
  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::vector<Diagnostic> diags_;
};

ProblemSpec parse_problem_text(const std::string& text, const std::string& origin = "<input>");
ProblemSpec parse_problem(const std::string& path);
std::string print_problem(const ProblemSpec& spec);

/// Applies the bounds and builds the validated action.
LocalAction problem_action(const ProblemSpec& spec);

}  // namespace bvforge
