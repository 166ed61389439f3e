#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "deformae/linalg.hpp"
#include "deformae/transport.hpp"

namespace deformae {

/// Printed with every Hodge computation: the engine sees invariant forms only.
inline constexpr const char* kInvariantCaveat =
    "invariant-model Hodge numbers: computed on the finite-dimensional complex of invariant forms; "
    "agreement with manifold Hodge numbers is known background for specific nilmanifold classes, not "
    "proved here";

Vec to_vector(const Form<Scalar>& f, const std::vector<Mask>& basis);
Form<Scalar> from_vector(int n, const std::vector<Mask>& basis, const Vec& v);

using FormOp = std::function<Form<Scalar>(const Form<Scalar>&)>;

/// Matrix of a linear operator A^{src} -> A^{dst} in the lexicographic
/// bases. Throws Bidegree if an image leaves A^{dst}.
DenseMatrix operator_matrix(int n, Bidegree src, Bidegree dst, const FormOp& op);

enum class Op { Delbar, Del, DelbarDel };

/// Operator matrices of one invariant model, each built once. Concurrent
/// callers block on the first computation of an entry and then share it.
class OperatorCache {
 public:
  explicit OperatorCache(const Model& model);
  explicit OperatorCache(Model&&) = delete;  // the cache refers to the model
  const Model& model() const { return *model_; }
  /// Matrix of op on A^{src}; the target is src shifted by the op bidegree.
  /// Out-of-range source or target gives an empty (0-row or 0-column) matrix.
  const DenseMatrix& get(Op op, Bidegree src) const;

 private:
  struct Slot {
    std::once_flag once;
    DenseMatrix value;
  };
  const Model* model_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, Bidegree>, std::shared_ptr<Slot>> slots_;
};

bool valid_bidegree(int n, Bidegree bd);
Bidegree op_target(Op op, Bidegree src);

/// h[p][q] for 0 <= p,q <= n.
struct HodgeTable {
  int n = 0;
  std::string at = "central";  // "central" or the t0 value
  std::vector<std::vector<int>> h;
  int at_pq(int p, int q) const { return h[p][q]; }
  friend bool operator==(const HodgeTable& a, const HodgeTable& b) { return a.h == b.h; }
};

HodgeTable hodge_numbers(const Model& model);
HodgeTable hodge_numbers(const OperatorCache& cache);
/// Hodge numbers of X_{t0} through the transported ∂̄_t. Requires an
/// integrable value context; verifies ∂̄_t∘∂̄_t = 0 and
/// ∂_t∂̄_t + ∂̄_t∂_t = 0 on every bidegree.
HodgeTable hodge_numbers(const TransportContext<Scalar>& ctx);

/// Matrices of ∂̄_t and ∂_t on A^{p,q} in transported coordinates.
DenseMatrix deformed_delbar_matrix(const TransportContext<Scalar>& ctx, Bidegree src);
DenseMatrix deformed_del_matrix(const TransportContext<Scalar>& ctx, Bidegree src);

struct DeRhamCheck {
  std::vector<int> betti;
  int euler_betti = 0;
  int euler_hodge = 0;
  bool frolicher = true;  // b_k <= Σ_{p+q=k} h^{p,q}
  bool pass() const { return euler_betti == euler_hodge && frolicher; }
};
DeRhamCheck de_rham_check(const Model& model, const HodgeTable& h);

/// Membership of the invariant model in the solvability classes at (p,q).
struct ClassMembership {
  Bidegree bd;
  bool vacuous = false;  // p = 0: S = {0}
  bool in_E = true;
  bool in_D = true;
  bool in_B = true;
  int dim_S = 0;
  // A form ∂g in S outside the corresponding image, when membership fails.
  std::optional<Form<Scalar>> witness_E;
  std::optional<Form<Scalar>> witness_D;
  std::optional<Form<Scalar>> witness_B;
};

ClassMembership classify_EDB(const OperatorCache& cache, int p, int q);
ClassMembership classify_EDB(const Model& model, int p, int q);
std::vector<ClassMembership> classify_all(const OperatorCache& cache);

/// ∂∂̄-lemma per bidegree: ∂-exact ∂̄-closed forms, and ∂̄-exact ∂-closed
/// forms, are ∂∂̄-exact.
std::map<Bidegree, bool> ddbar_lemma_check(const OperatorCache& cache);
bool ddbar_lemma_holds(const std::map<Bidegree, bool>& table);

/// Representatives of a basis of H^{p,q}(X_0): ∂̄-closed forms whose classes
/// are independent, chosen greedily from the nullspace basis.
std::vector<Form<Scalar>> dolbeault_basis(const OperatorCache& cache, Bidegree bd);

struct Representative {
  Form<Scalar> gamma;  // α + ∂̄y, d-closed
  Form<Scalar> y;      // solution of ∂̄∂y = ∂α in A^{p,q-1}
};

/// d-closed representative of the Dolbeault class of a ∂̄-closed α. `order`
/// selects the solver's column pivot order (empty: lexicographic). Throws
/// Hypothesis when the model is outside B^{p+1,q}.
Representative d_closed_representative(const OperatorCache& cache, const Form<Scalar>& alpha,
                                       const std::vector<int>& order = {});

/// Column order for the ∂̄∂ system on A^{p,q-1}: reversed lexicographic.
std::vector<int> alternate_pivot_order(const Model& model, Bidegree bd);

}  // namespace deformae
