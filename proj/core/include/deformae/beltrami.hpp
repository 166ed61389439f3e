#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deformae/models.hpp"

namespace deformae {

/// Power series φ(t) = Σ_{k>=1} t^k φ_k of Beltrami differentials. Each φ_k is
/// a T^{1,0}-valued (0,1)-form with constant coefficients: hol row i holds
/// φ_k^i = Σ_j (φ_k)^i_{j̄} ω̄^j.
struct BeltramiSeries {
  int dim = 0;
  int order = kDefaultOrder;
  std::map<int, VectorForm<Scalar>> terms;

  /// Adds `c` to the entry (φ_k)^{row}_{conj_index} (both 1-based).
  void add_entry(int k, int row, int conj_index, const Scalar& c);
  VectorForm<Scalar> term(int k) const;
  /// φ(t) as a vector form with Series coefficients truncated at `order`.
  VectorForm<Series> as_series(int order) const;
  /// φ(t0), summed exactly.
  VectorForm<Scalar> evaluate(const Scalar& t0) const;
  int max_power() const { return terms.empty() ? 0 : terms.rbegin()->first; }
};

/// Entry (row i, conjugate index j) of the matrix Φ of a T^{1,0}-valued
/// (0,1)-form: the coefficient of ω̄^j in φ^i. 0-based.
template <class R>
Matrix<R> beltrami_matrix(const VectorForm<R>& phi) {
  const int n = phi.dim();
  Matrix<R> m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = phi.hol_row(i).coeff(Mask{1} << (n + j));
  }
  return m;
}

template <class R>
VectorForm<R> beltrami_from_matrix(const Matrix<R>& m) {
  const int n = m.size();
  VectorForm<R> phi(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) phi.hol_row(i).add(Mask{1} << (n + j), m(i, j));
  }
  return phi;
}

namespace detail {

template <class R>
VectorForm<R> only_degree(const VectorForm<R>& x, int k) {
  VectorForm<R> out(x.dim());
  for (int g = 0; g < 2 * x.dim(); ++g) out.row(g) = x.row(g).of_degree(k);
  return out;
}

template <class R, class Op>
VectorForm<R> twisted_differential(const Model& model, const VectorForm<R>& x, Op&& op) {
  const int n = x.dim();
  VectorForm<R> out(n);
  for (int g = 0; g < 2 * n; ++g) out.row(g) = op(x.row(g));
  // (DX)⌟ is the graded commutator [D, X⌟]; on the coframe this adds
  // -(-1)^{k-1} X⌟(D ω^g) for the degree-k part of X.
  std::vector<Form<R>> dgen;
  for (int g = 0; g < 2 * n; ++g) dgen.push_back(op(Form<R>::generator(n, g)));
  for (int k = 0; k <= 2 * n; ++k) {
    VectorForm<R> xk = only_degree(x, k);
    if (xk.is_zero()) continue;
    for (int g = 0; g < 2 * n; ++g) {
      Form<R> t = contract(xk, dgen[g]);
      if ((k - 1) % 2 == 0) {
        out.row(g) -= t;
      } else {
        out.row(g) += t;
      }
    }
  }
  (void)model;
  return out;
}

}  // namespace detail

/// ∂̄ on vector-valued forms, characterised by the graded Leibniz rule
/// ∂̄(X⌟α) = (∂̄X)⌟α + (-1)^{k-1} X⌟∂̄α. On the coframe,
/// (∂̄φ)⌟ω^i = ∂̄(φ⌟ω^i) - φ⌟∂̄ω^i for φ ∈ A^{0,1}(T^{1,0}).
template <class R>
VectorForm<R> delbar_vector(const Model& model, const VectorForm<R>& x) {
  return detail::twisted_differential(model, x, [&](const Form<R>& f) { return delbar(model, f); });
}

/// ∂ on vector-valued forms (same rule with ∂).
template <class R>
VectorForm<R> del_vector(const Model& model, const VectorForm<R>& x) {
  return detail::twisted_differential(model, x, [&](const Form<R>& f) { return del(model, f); });
}

template <class R>
VectorForm<R> delbar_vector_form(const VectorForm<R>& phi, const Model& model) {
  return delbar_vector(model, phi);
}

/// Right side of the commutator formula
/// [φ,ψ]⌟α = -∂(ψ⌟(φ⌟α)) - ψ⌟(φ⌟∂α) + φ⌟∂(ψ⌟α) + ψ⌟∂(φ⌟α).
template <class R>
Form<R> commutator_rhs(const Model& model, const VectorForm<R>& phi, const VectorForm<R>& psi,
                       const Form<R>& alpha) {
  Form<R> out = -del(model, contract(psi, contract(phi, alpha)));
  out -= contract(psi, contract(phi, del(model, alpha)));
  out += contract(phi, del(model, contract(psi, alpha)));
  out += contract(psi, del(model, contract(phi, alpha)));
  return out;
}

/// [φ,ψ] ∈ A^{0,2}(T^{1,0}), defined row by row through the commutator
/// formula at α = ω^i.
template <class R>
VectorForm<R> bracket(const VectorForm<R>& phi, const VectorForm<R>& psi, const Model& model) {
  const int n = phi.dim();
  VectorForm<R> out(n);
  for (int i = 0; i < n; ++i) out.hol_row(i) = commutator_rhs(model, phi, psi, Form<R>::generator(n, i));
  return out;
}

/// Frame endomorphisms built from φ: φ̄φ := φ⌟φ̄ on the antiholomorphic
/// sector, φφ̄ := φ̄⌟φ on the holomorphic sector, and the inverses of 1 - ·.
template <class R>
struct Endomorphisms {
  Matrix<R> phi_matrix;             // Φ
  Matrix<R> phibar_phi_matrix;      // Φ̄Φ
  Matrix<R> phi_phibar_matrix;      // ΦΦ̄
  Matrix<R> inv_antihol_matrix;     // (1 - Φ̄Φ)^{-1}
  Matrix<R> inv_hol_matrix;         // (1 - ΦΦ̄)^{-1}
  VectorForm<R> phibar_phi;
  VectorForm<R> phi_phibar;
  VectorForm<R> inv_1_minus_phibar_phi;
  VectorForm<R> inv_1_minus_phi_phibar;
};

/// `order` >= 0 selects the Neumann expansion (Series coefficients); any
/// other ring inverts exactly. Throws NotInvertible naming the matrix.
template <class R>
Endomorphisms<R> build_endomorphisms(const VectorForm<R>& phi, int order = -1) {
  const int n = phi.dim();
  Endomorphisms<R> e;
  VectorForm<R> phibar = phi.conj();
  e.phibar_phi = contract(phi, phibar);
  e.phi_phibar = contract(phibar, phi);
  e.phi_matrix = beltrami_matrix(phi);
  e.phibar_phi_matrix = matrix_of_endomorphism(e.phibar_phi, Sector::Antihol);
  e.phi_phibar_matrix = matrix_of_endomorphism(e.phi_phibar, Sector::Hol);
  const Matrix<R> id = Matrix<R>::identity(n);
  if constexpr (std::is_same_v<R, Series>) {
    if (order >= 0) {
      e.inv_antihol_matrix = neumann_inverse(e.phibar_phi_matrix, order);
      e.inv_hol_matrix = neumann_inverse(e.phi_phibar_matrix, order);
    } else {
      e.inv_antihol_matrix = matrix_inverse(id - e.phibar_phi_matrix, "1 - phibar phi");
      e.inv_hol_matrix = matrix_inverse(id - e.phi_phibar_matrix, "1 - phi phibar");
    }
  } else {
    e.inv_antihol_matrix = matrix_inverse(id - e.phibar_phi_matrix, "1 - phibar phi");
    e.inv_hol_matrix = matrix_inverse(id - e.phi_phibar_matrix, "1 - phi phibar");
  }
  if ((id - e.phibar_phi_matrix) * e.inv_antihol_matrix != id ||
      (id - e.phi_phibar_matrix) * e.inv_hol_matrix != id) {
    throw Error(ErrorKind::NotInvertible, "frame endomorphism inverse failed verification");
  }
  e.inv_1_minus_phibar_phi = endomorphism_from_matrix(n, Sector::Antihol, e.inv_antihol_matrix);
  e.inv_1_minus_phi_phibar = endomorphism_from_matrix(n, Sector::Hol, e.inv_hol_matrix);
  return e;
}

/// Images of ω^i, ω̄^i written in the deformed coframe ζ^i = ω^i + φ^i,
/// ζ̄^i, with ζ renamed back to ω: ω ↦ (1-ΦΦ̄)^{-1}(ω - Φω̄) and
/// ω̄ ↦ (1-Φ̄Φ)^{-1}(ω̄ - Φ̄ω). Substituting these is the inverse of the
/// coframe map ω ↦ ζ.
template <class R>
std::vector<Form<R>> inverse_coframe_images(const Endomorphisms<R>& e) {
  const int n = e.phi_matrix.size();
  const Matrix<R>& phi = e.phi_matrix;
  const Matrix<R> phibar = phi.conj();
  std::vector<Form<R>> base(2 * n, Form<R>(n));
  for (int i = 0; i < n; ++i) {
    base[i] = Form<R>::generator(n, i);
    base[n + i] = Form<R>::generator(n, n + i);
    for (int k = 0; k < n; ++k) {
      base[i].add(Mask{1} << (n + k), -phi(i, k));
      base[n + i].add(Mask{1} << k, -phibar(i, k));
    }
  }
  std::vector<Form<R>> out(2 * n, Form<R>(n));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      out[i] += base[k] * e.inv_hol_matrix(i, k);
      out[n + i] += base[n + k] * e.inv_antihol_matrix(i, k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Integrability

/// Scalar coefficient form of t^j t̄^k in a Series-coefficient form.
Form<Scalar> coefficient_form(const Form<Series>& f, int j, int k);
/// Lowest total (t, t̄) degree among all coefficients, or -1 for zero.
int lowest_order(const Form<Series>& f);
int lowest_order(const VectorForm<Series>& x);

struct OrderResidual {
  int order = 0;                  // total degree in (t, t̄); 0 in value mode
  std::vector<std::string> rows;  // "i: <form>" for each nonzero row
};

struct IntegrabilityCheck {
  bool pass = true;
  int leading_order = -1;  // first order with a nonzero residual, -1 if none
  std::vector<OrderResidual> residuals;  // only nonzero orders
};

struct IntegrabilityReport {
  std::string mode;  // "series" or "value"
  int order = 0;
  std::optional<Scalar> t0;
  IntegrabilityCheck maurer_cartan;  // ∂̄φ - ½[φ,φ]
  IntegrabilityCheck frame_ideal;    // (0,2) part of dζ^i in the ζ coframe
  bool agree() const {
    return maurer_cartan.pass == frame_ideal.pass &&
           maurer_cartan.leading_order == frame_ideal.leading_order;
  }
  bool integrable() const { return maurer_cartan.pass && frame_ideal.pass; }
};

/// Maurer-Cartan residual ∂̄φ - ½[φ,φ].
template <class R>
VectorForm<R> maurer_cartan_residual(const Model& model, const VectorForm<R>& phi) {
  VectorForm<R> out = delbar_vector(model, phi);
  VectorForm<R> br = bracket(phi, phi, model);
  out -= br * R(Scalar::rational(1, 2));
  return out;
}

/// (0,2) part, in the deformed coframe, of dζ^i for every i.
template <class R>
VectorForm<R> frame_ideal_residual(const Model& model, const VectorForm<R>& phi,
                                   const Endomorphisms<R>& e) {
  const int n = phi.dim();
  auto inv = inverse_coframe_images(e);
  VectorForm<R> out(n);
  for (int i = 0; i < n; ++i) {
    Form<R> zeta = Form<R>::generator(n, i) + phi.hol_row(i);
    Form<R> dz = d(model, zeta);
    out.hol_row(i) = substitute_homomorphism(dz, inv).component({0, 2});
  }
  return out;
}

IntegrabilityReport check_integrability(const Model& model, const BeltramiSeries& phi, int order);
IntegrabilityReport check_integrability_at(const Model& model, const BeltramiSeries& phi,
                                           const Scalar& t0);

}  // namespace deformae
