#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlie/algebra.hpp"
#include "nlie/simplicity.hpp"
#include "nlie/structure.hpp"

namespace nlie {

/// Axioms, Poisson simplicity, A^[1], the center Z, and the n-Lie algebra
/// A^[1] / (A^[1] cap Z) with its simplicity verdict.
struct PipelineReport {
  std::vector<Verdict> axioms;
  SimplicityVerdict poisson_simplicity;

  SubspaceBasis derived;
  SubspaceBasis center;
  SubspaceBasis intersection;
  std::size_t dim_algebra = 0;
  std::size_t dim_quotient = 0;

  NLieAlgebra quotient;
  Verdict quotient_jacobi;
  SimplicityVerdict quotient_simplicity;

  bool characteristic_zero = false;
  bool axioms_pass = false;
  bool poisson_simple = false;
  /// True only when every hypothesis above is green.
  bool hypotheses_hold = false;
  std::vector<std::string> flags;
};

PipelineReport theorem1_pipeline(const NLiePoissonAlgebra& alg, const SimplicityOptions& options = {});

}  // namespace nlie
