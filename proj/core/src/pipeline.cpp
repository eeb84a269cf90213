#include "nlie/pipeline.hpp"

#include <algorithm>

namespace nlie {

PipelineReport theorem1_pipeline(const NLiePoissonAlgebra& alg, const SimplicityOptions& options) {
  const FieldSpec f = alg.field();
  const std::size_t d = alg.dim();
  const SubspaceBasis whole = SubspaceBasis::full(f, d);

  std::vector<Verdict> axioms{
      check_generalized_jacobi(alg.bracket(), options.guards),
      check_assoc_comm_unital(alg.product(), alg.unit(), options.guards),
      check_leibniz(alg, options.guards),
      check_poisson_identity(alg, options.guards),
  };
  auto poisson = is_simple(alg, IdealKind::Poisson, options);

  const SubspaceBasis derived = derived_subspace(alg.lie(), whole, options.guards);
  const SubspaceBasis z = center(alg.lie());
  const SubspaceBasis cap = intersect(derived, z);
  auto quotient = subquotient(alg.lie(), derived, cap);
  auto jacobi = check_generalized_jacobi(quotient.algebra.bracket(), options.guards);
  auto simple = is_simple(quotient.algebra, options);

  PipelineReport r{std::move(axioms), std::move(poisson), derived, z, cap, d, quotient.algebra.dim(),
                   std::move(quotient.algebra), std::move(jacobi), std::move(simple),
                   false,           false,          false,     false,       {}};
  r.characteristic_zero = f.is_rational();
  r.axioms_pass = std::all_of(r.axioms.begin(), r.axioms.end(), [](const Verdict& v) { return v.pass; });
  r.poisson_simple = r.poisson_simplicity.kind == SimplicityKind::Simple;
  r.hypotheses_hold = r.characteristic_zero && r.axioms_pass && r.poisson_simple;

  if (!r.characteristic_zero) {
    r.flags.push_back("characteristic " + std::to_string(f.characteristic()) +
                      ": outside characteristic-0 hypotheses");
  }
  for (const auto& v : r.axioms) {
    if (!v.pass) r.flags.push_back("axiom check failed: " + v.check);
  }
  if (!r.poisson_simple) {
    r.flags.push_back("(A, ., omega) is not certified simple: " + to_string(r.poisson_simplicity.kind));
  }
  if (!r.hypotheses_hold) {
    r.flags.push_back("hypotheses not all met: the quotient verdict is a computation on this instance only");
  }
  return r;
}

}  // namespace nlie
