#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlie/algebra.hpp"
#include "nlie/simplicity.hpp"

namespace nlie {

enum class Lemma { L1, L2, L3, L5, L6_0, L6, L7, L8 };

std::string to_string(Lemma l);
/// Accepts "L1", "L6_0", "L6.0" and so on; throws Error otherwise.
Lemma parse_lemma(const std::string& label);
const std::vector<Lemma>& all_lemmas();

/// The statement probed, as a formula. A is the algebra, A1 = A^[1],
/// U^[k] the derived series of U, id_A the associative ideal closure.
std::string lemma_statement(Lemma l);

struct ProbeInput {
  /// Candidate U (L2, L6_0, L6, L7, L8) or I (L3).
  std::optional<SubspaceBasis> subspace;
  SimplicityOptions simplicity;
};

struct ProbeReport {
  Lemma lemma;
  std::string statement;
  /// The lemma's own hypotheses. For L1, L3 and L5 they include simplicity
  /// of (A, ., omega); the other lemmas take that as ambient context, so it
  /// is reported separately in `algebra_simplicity`.
  bool hypotheses_hold = false;
  bool conclusion_holds = false;
  /// Poisson simplicity when a product is present, n-Lie simplicity otherwise.
  SimplicityKind algebra_simplicity = SimplicityKind::Unknown;
  /// Characteristic p > 0; the lemmas are stated over characteristic 0.
  bool outside_char0 = false;
  /// Failing element or subspace, when the conclusion fails.
  std::optional<SubspaceBasis> witness;
  /// Short human-readable notes, e.g. which ad operator is nilpotent.
  std::vector<std::string> notes;

  /// L5: basis tail K of the nilpotent ad and the least m with ad^m = 0.
  std::vector<std::size_t> ad_tail;
  unsigned nilpotency_index = 0;
  /// L2/L6_0/L6/L7/L8: whether U lies inside A^[1] (informational).
  std::optional<bool> contained_in_derived;
};

/// Evaluates hypotheses and conclusion independently. The product may be
/// null for the lemmas that only use the bracket (L6_0, L6, L7, L8).
/// Throws PreconditionError for a malformed subspace: U not stable under
/// omega(., A1, ..., A1), or I failing omega(I, A1, ..., A1) in I.
ProbeReport probe_lemma(const SkewBracketTensor& bracket, const SymProductTensor* product, const Vector* unit,
                        Lemma which, const ProbeInput& input = {});
ProbeReport probe_lemma(const NLiePoissonAlgebra& alg, Lemma which, const ProbeInput& input = {});
ProbeReport probe_lemma(const NLieAlgebra& alg, Lemma which, const ProbeInput& input = {});

}  // namespace nlie
