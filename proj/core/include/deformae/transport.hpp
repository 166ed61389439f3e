#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deformae/beltrami.hpp"

namespace deformae {

/// Everything needed to move forms between X_0 and the deformed structure
/// X_t given by φ: the Beltrami form and its conjugate, the frame
/// endomorphisms and the composite vector forms appearing in the extension
/// formulas. R is Series (formal in t, t̄), Scalar (exact value t0) or
/// ChartPoly (chart backend).
template <class R>
struct TransportContext {
  const Model* model = nullptr;
  std::string mode;  // "series", "value" or "chart"
  int order = -1;
  std::optional<Scalar> t0;

  VectorForm<R> phi;
  VectorForm<R> phibar;
  Endomorphisms<R> endos;

  VectorForm<R> inv_hol;      // (1-φφ̄)^{-1}
  VectorForm<R> inv_antihol;  // (1-φ̄φ)^{-1}
  VectorForm<R> hol_tail;     // φφ̄(1-φφ̄)^{-1}
  VectorForm<R> antihol_tail; // φ̄φ(1-φ̄φ)^{-1}
  VectorForm<R> phibar_inv;   // φ̄(1-φφ̄)^{-1} = (1-φφ̄)^{-1}⌟φ̄
  VectorForm<R> phi_inv;      // φ(1-φ̄φ)^{-1} = (1-φ̄φ)^{-1}⌟φ
  // Derivative composites of the twelve-term formula.
  VectorForm<R> del_phibar_inv_phi;      // (∂(φ̄(1-φφ̄)^{-1}))⌟φ
  VectorForm<R> delbar_inv_hol_phibar;   // (∂̄(1-φφ̄)^{-1})⌟φ̄
  VectorForm<R> delbar_phi_inv_phibar;   // (∂̄(φ(1-φ̄φ)^{-1}))⌟φ̄
  VectorForm<R> del_inv_antihol_phi;     // (∂(1-φ̄φ)^{-1})⌟φ

  std::vector<Form<R>> forward_images;  // ω^i ↦ ω^i + φ^i, ω̄^i ↦ ω̄^i + φ̄^i
  std::vector<Form<R>> inverse_images;
};

template <class R>
TransportContext<R> make_context(const Model& model, const VectorForm<R>& phi, int order = -1) {
  const int n = model.dim();
  if (phi.dim() != n) throw Error(ErrorKind::ModelMismatch, "Beltrami form dimension does not match the model");
  TransportContext<R> c;
  c.model = &model;
  c.order = order;
  c.phi = phi;
  c.phibar = phi.conj();
  c.endos = build_endomorphisms(phi, order);
  c.inv_hol = c.endos.inv_1_minus_phi_phibar;
  c.inv_antihol = c.endos.inv_1_minus_phibar_phi;
  c.hol_tail = contract(c.inv_hol, c.endos.phi_phibar);
  c.antihol_tail = contract(c.inv_antihol, c.endos.phibar_phi);
  c.phibar_inv = contract(c.inv_hol, c.phibar);
  c.phi_inv = contract(c.inv_antihol, c.phi);
  c.del_phibar_inv_phi = contract(del_vector(model, c.phibar_inv), c.phi);
  c.delbar_inv_hol_phibar = contract(delbar_vector(model, c.inv_hol), c.phibar);
  c.delbar_phi_inv_phibar = contract(delbar_vector(model, c.phi_inv), c.phibar);
  c.del_inv_antihol_phi = contract(del_vector(model, c.inv_antihol), c.phi);
  c.forward_images.assign(2 * n, Form<R>(n));
  for (int g = 0; g < 2 * n; ++g) {
    c.forward_images[g] = Form<R>::generator(n, g) + (g < n ? c.phi.row(g) : c.phibar.row(g));
  }
  c.inverse_images = inverse_coframe_images(c.endos);
  return c;
}

/// Series-mode context: φ(t) truncated at total (t, t̄) degree `order`.
TransportContext<Series> series_context(const Model& model, const BeltramiSeries& phi, int order);
TransportContext<Series> series_context(Model&&, const BeltramiSeries&, int) = delete;
/// Value-mode context at an exact parameter t0. Throws Degenerate when the
/// deformed coframe fails to be a basis at t0.
TransportContext<Scalar> value_context(const Model& model, const BeltramiSeries& phi,
                                       const Scalar& t0);
TransportContext<Scalar> value_context(Model&&, const BeltramiSeries&, const Scalar&) = delete;
/// Chart-mode context for a polynomial Beltrami form on a chart model.
TransportContext<ChartPoly> chart_context(const Model& model, const VectorForm<ChartPoly>& phi);
TransportContext<ChartPoly> chart_context(Model&&, const VectorForm<ChartPoly>&) = delete;

/// e^{i_φ} a = Σ_k i_φ^k a / k!, the finite sum of iterated contractions.
template <class R>
Form<R> e_iphi(const TransportContext<R>& c, const Form<R>& a) {
  Form<R> out = a;
  Form<R> power = a;
  Scalar fact = 1;
  for (int k = 1; k <= 2 * c.model->dim(); ++k) {
    power = contract_vector_form(c.phi, power);
    if (power.is_zero()) break;
    fact *= Scalar(k);
    out += power * R(fact.inverse());
  }
  return out;
}

/// e^{i_φ} through the substitution homomorphism ω^i ↦ ω^i + φ^i.
template <class R>
Form<R> e_iphi_substitution(const TransportContext<R>& c, const Form<R>& a) {
  const int n = c.model->dim();
  std::vector<Form<R>> rows(2 * n, Form<R>(n));
  for (int g = 0; g < 2 * n; ++g) rows[g] = g < n ? c.forward_images[g] : Form<R>::generator(n, g);
  return substitute_homomorphism(a, rows);
}

/// e^{i_φ̄} as a series of contractions by φ̄.
template <class R>
Form<R> e_iphibar(const TransportContext<R>& c, const Form<R>& a) {
  Form<R> out = a;
  Form<R> power = a;
  Scalar fact = 1;
  for (int k = 1; k <= 2 * c.model->dim(); ++k) {
    power = contract(c.phibar, power);
    if (power.is_zero()) break;
    fact *= Scalar(k);
    out += power * R(fact.inverse());
  }
  return out;
}

/// The canonical map e^{i_φ|i_φ̄}: A^{p,q}(X_0) → A^{p,q}(X_t).
template <class R>
Form<R> canonical_map(const TransportContext<R>& c, const Form<R>& a) {
  return substitute_homomorphism(a, c.forward_images);
}

/// Term-by-term definition: e^{i_φ} on the holomorphic block wedged with
/// e^{i_φ̄} on the antiholomorphic block.
template <class R>
Form<R> canonical_map_by_blocks(const TransportContext<R>& c, const Form<R>& a) {
  const int n = c.model->dim();
  Form<R> out(n);
  for (const auto& [m, coeff] : a.terms()) {
    Form<R> h = e_iphi(c, Form<R>::monomial(n, hol_part(m, n), R(Scalar(1))));
    Form<R> b = e_iphibar(c, Form<R>::monomial(n, antihol_part(m, n), R(Scalar(1))));
    out += wedge(h, b) * coeff;
  }
  return out;
}

template <class R>
Form<R> inverse_canonical_map(const TransportContext<R>& c, const Form<R>& a) {
  return substitute_homomorphism(a, c.inverse_images);
}


/// Bracketed argument of the (p,0) extension formula:
/// (1-φ̄φ)^{-1}⌟(∂̄ω + ∂(φ⌟ω) - φ⌟∂ω) + (1-φφ̄)^{-1}⌟∂ω - p∂ω
///   - ((1-φφ̄)^{-1}⌟φ̄)⌟(∂̄ω + ∂(φ⌟ω)).
template <class R>
Form<R> extension_formula_p0(const TransportContext<R>& c, const Form<R>& w) {
  const Model& m = *c.model;
  const int n = m.dim();
  int p = -1;
  for (int k = 0; k <= n && p < 0; ++k) {
    if (w.is_homogeneous({k, 0})) p = k;
  }
  if (p < 0 && !w.is_zero()) throw Error(ErrorKind::Bidegree, "extension_formula_p0 needs a (p,0)-form");
  if (w.is_zero()) return w;
  const Form<R> dw = del(m, w);
  const Form<R> dbw = delbar(m, w);
  const Form<R> dphiw = del(m, contract_vector_form(c.phi, w));
  Form<R> out = contract(c.inv_antihol, dbw + dphiw - contract_vector_form(c.phi, dw));
  out += contract(c.inv_hol, dw);
  out -= dw * R(Scalar(p));
  out -= contract(c.phibar_inv, dbw + dphiw);
  return out;
}

/// Bracketed argument of the (0,q) extension formula (conjugate shape of
/// the (p,0) one).
template <class R>
Form<R> extension_formula_0q(const TransportContext<R>& c, const Form<R>& w) {
  const Model& m = *c.model;
  const int n = m.dim();
  int q = -1;
  for (int k = 0; k <= n && q < 0; ++k) {
    if (w.is_homogeneous({0, k})) q = k;
  }
  if (q < 0 && !w.is_zero()) throw Error(ErrorKind::Bidegree, "extension_formula_0q needs a (0,q)-form");
  if (w.is_zero()) return w;
  const Form<R> dw = del(m, w);
  const Form<R> dbw = delbar(m, w);
  const Form<R> dbphiw = delbar(m, contract(c.phibar, w));
  Form<R> out = contract(c.inv_hol, dw + dbphiw - contract(c.phibar, dbw));
  out += contract(c.inv_antihol, dbw);
  out -= dbw * R(Scalar(q));
  out -= contract(c.phi_inv, dw + dbphiw);
  return out;
}

/// Bracketed argument F(ω) of the general extension formula
/// d(e^{i_φ|i_φ̄} ω) = e^{i_φ|i_φ̄} F(ω), for forms of any bidegree.
template <class R>
Form<R> extension_formula_general(const TransportContext<R>& c, const Form<R>& w) {
  const Model& m = *c.model;
  const Form<R> dw = del(m, w);
  const Form<R> dbw = delbar(m, w);
  // (p+1, q) group.
  Form<R> out = dw;
  out += contract(c.hol_tail, dw);
  out -= del(m, contract(c.hol_tail, w));
  out += contract(c.del_phibar_inv_phi, w);
  out -= contract(c.phibar_inv, dbw);
  out += delbar(m, contract(c.phibar_inv, w));
  out -= contract(c.delbar_inv_hol_phibar, w);
  // (p, q+1) group.
  out += dbw;
  out += contract(c.antihol_tail, dbw);
  out -= delbar(m, contract(c.antihol_tail, w));
  out += contract(c.delbar_phi_inv_phibar, w);
  out -= contract(c.phi_inv, dw);
  out += del(m, contract(c.phi_inv, w));
  out -= contract(c.del_inv_antihol_phi, w);
  return out;
}

template <class R>
struct ExtensionResidual {
  Form<R> lhs;       // d(e^{i_φ|i_φ̄} ω)
  Form<R> rhs;       // e^{i_φ|i_φ̄}(F(ω))
  Form<R> residual;  // lhs - rhs
};

template <class R>
ExtensionResidual<R> extension_residual(const TransportContext<R>& c, const Form<R>& w) {
  ExtensionResidual<R> r;
  r.lhs = d(*c.model, canonical_map(c, w));
  r.rhs = canonical_map(c, extension_formula_general(c, w));
  r.residual = r.lhs - r.rhs;
  return r;
}

template <class R>
struct DeformedDolbeault {
  Form<R> del_t;     // (p+1,q) coefficient form: ∂_t(Tω) = T(del_t)
  Form<R> delbar_t;  // (p,q+1) coefficient form: ∂̄_t(Tω) = T(delbar_t)
};

/// Splits F(ω) by bidegree into the transported ∂_t, ∂̄_t. Requires an
/// integrable value context.
DeformedDolbeault<Scalar> deformed_dolbeault(const TransportContext<Scalar>& c, const Form<Scalar>& w);
/// Whether φ of the context satisfies the Maurer-Cartan equation exactly.
bool context_integrable(const TransportContext<Scalar>& c);

/// Chart-backend holomorphicity check for a function f.
struct HolomorphicityResult {
  Form<ChartPoly> obstruction;  // (∂̄ - φ⌟∂) f
  Form<ChartPoly> df_residual;  // df - e^{i_φ|i_φ̄}(...), restricted below degree D-1
  bool holomorphic = false;
  bool df_identity_holds = false;
};
HolomorphicityResult holomorphicity_criterion(const TransportContext<ChartPoly>& c,
                                              const Form<ChartPoly>& f);

struct DvzResult {
  std::vector<Form<ChartPoly>> lhs;       // d(e^{i_φ}(dz^i))
  std::vector<Form<ChartPoly>> rhs;       // local-frame expression
  std::vector<Form<ChartPoly>> residual;  // below degree D-1
  bool pass = false;
  bool integrable = false;
};
DvzResult verify_dvz(const TransportContext<ChartPoly>& c);

/// Keeps coefficient terms of polynomial degree <= deg.
Form<ChartPoly> below_degree(const Form<ChartPoly>& f, int deg);

}  // namespace deformae
