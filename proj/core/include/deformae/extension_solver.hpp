#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deformae/cohomology.hpp"

namespace deformae {

/// One order of the obstruction argument. All six forms vanish on a
/// successful step: the direct ∂̄η_k and each rewriting of it.
struct ObstructionStep {
  int k = 0;
  Form<Scalar> eta;          // η_k = -∂(Σ_{i=1}^k φ_i⌟σ_{k-i})
  Form<Scalar> direct;       // ∂̄η_k
  Form<Scalar> leibniz;      // ∂(Σ_{i>=2} ∂̄φ_i⌟σ_{k-i} + Σ_{i<k} φ_i⌟∂̄σ_{k-i})
  Form<Scalar> maurer_cartan;  // ∂̄φ_i and ∂̄σ_j replaced by ½Σ[φ_j,φ_{i-j}] and η_j
  Form<Scalar> commutator;   // brackets expanded by the commutator formula
  Form<Scalar> cancelled;    // after ∂σ = 0 and ∂∂ = 0: two sums over the same index set
  bool vanishes() const {
    return direct.is_zero() && leibniz.is_zero() && maurer_cartan.is_zero() && commutator.is_zero() &&
           cancelled.is_zero();
  }
};

struct RunFailure {
  ErrorKind kind = ErrorKind::Obstruction;
  int order = 0;
  std::string message;
};

struct ExtensionRun {
  std::string kind;  // "p0" or "0q"
  int order = 0;
  Bidegree bidegree;
  std::vector<Form<Scalar>> sigma;  // σ_0..σ_N (coefficients of t^k, or t̄^k for 0q)
  std::vector<ObstructionStep> obstruction_log;  // k = 1..N, for 0q on the conjugated system
  std::vector<std::string> warnings;
  std::optional<RunFailure> failure;
  // Left side of the defining equation of σ_t, expanded in (t, t̄) and
  // truncated. For p0: ∂̄σ_t + ∂(φ⌟σ_t) - φ⌟∂σ_t. For 0q: the ∂̄_t-closedness
  // expression (1-φ̄φ)^{-1}⌟∂̄σ_t - q∂̄σ_t - ((1-φ̄φ)^{-1}⌟φ)⌟(∂σ_t + ∂̄(φ̄⌟σ_t)).
  Form<Series> residual;
  // The same condition read off the extension formula: the component of
  // bidegree (p,1) (resp. (0,q+1)) of the bracketed argument.
  Form<Series> transport_residual;
  bool success() const { return !failure && residual.is_zero() && transport_residual.is_zero(); }
  Form<Series> sigma_series() const;
  /// Throws the recorded failure as an Error.
  void throw_if_failed() const;
};

/// Extends a holomorphic (p,0)-form σ_0 order by order to t^N.
ExtensionRun extend_p0(const OperatorCache& cache, const BeltramiSeries& phi, const Form<Scalar>& sigma0, int order);
/// Extends a d-closed (0,q)-form σ_0 to a ∂̄_t-closed σ_t in powers of t̄.
ExtensionRun extend_0q(const OperatorCache& cache, const BeltramiSeries& phi, const Form<Scalar>& sigma0, int order);

/// Hypothesis classes of the two invariance theorems, as (label, holds).
std::vector<std::pair<std::string, bool>> p0_hypotheses(const OperatorCache& cache, int p);
std::vector<std::pair<std::string, bool>> q0_hypotheses(const OperatorCache& cache, int q);
bool all_hold(const std::vector<std::pair<std::string, bool>>& h);

struct CorrespondenceSample {
  Scalar t0;
  int h0q_t = 0;
  int h0q_minus_t = 0;  // h^{0,q-1}_t
  int rank = 0;         // rank of the induced map H^{0,q}(X_0) -> H^{0,q}(X_t)
  bool all_closed = true;
};

struct Correspondence {
  int q = 0;
  std::vector<Form<Scalar>> classes;  // representatives of a basis of H^{0,q}(X_0)
  std::vector<Representative> reps;
  bool representatives_unique = true;  // two pivot orders give the same γ_α
  std::vector<ExtensionRun> runs;
  std::vector<CorrespondenceSample> samples;
};

/// Sends each basis class [α] to [e^{i_φ̄}(γ_α(t))] and measures the induced
/// map at the sample values. Throws Hypothesis naming the failing class when
/// the model is outside B^{1,q'} ∩ E^{q',0} ∩ D^{q',1} for some q' <= q.
Correspondence build_0q_correspondence(const OperatorCache& cache, const BeltramiSeries& phi, int q, int order,
                                       const std::vector<Scalar>& t_values);

}  // namespace deformae
