#include "deformae/beltrami.hpp"

namespace deformae {

void BeltramiSeries::add_entry(int k, int row, int conj_index, const Scalar& c) {
  if (k < 1) throw Error(ErrorKind::Parse, "Beltrami terms start at t^1");
  if (row < 1 || row > dim || conj_index < 1 || conj_index > dim) {
    throw Error(ErrorKind::Parse, "Beltrami entry index out of range");
  }
  auto [it, inserted] = terms.try_emplace(k, VectorForm<Scalar>(dim));
  it->second.hol_row(row - 1).add(Mask{1} << (dim + conj_index - 1), c);
  if (it->second.is_zero()) terms.erase(it);
}

VectorForm<Scalar> BeltramiSeries::term(int k) const {
  auto it = terms.find(k);
  return it == terms.end() ? VectorForm<Scalar>(dim) : it->second;
}

VectorForm<Series> BeltramiSeries::as_series(int order) const {
  VectorForm<Series> out(dim);
  for (const auto& [k, phik] : terms) {
    if (k > order) continue;
    Series tk = series_term(1, k, 0, order);
    out += lift<Series>(phik) * tk;
  }
  // Shape every row even when φ = 0 so downstream series carry the order.
  return out;
}

VectorForm<Scalar> BeltramiSeries::evaluate(const Scalar& t0) const {
  VectorForm<Scalar> out(dim);
  for (const auto& [k, phik] : terms) {
    Scalar p = 1;
    for (int e = 0; e < k; ++e) p *= t0;
    out += phik * p;
  }
  return out;
}

Form<Scalar> coefficient_form(const Form<Series>& f, int j, int k) {
  Form<Scalar> out(f.dim());
  for (const auto& [m, c] : f.terms()) out.add(m, series_coeff(c, j, k));
  return out;
}

int lowest_order(const Form<Series>& f) {
  int best = -1;
  for (const auto& [m, c] : f.terms()) {
    int d = c.lowest_degree();
    if (d >= 0 && (best < 0 || d < best)) best = d;
  }
  return best;
}

int lowest_order(const VectorForm<Series>& x) {
  int best = -1;
  for (const auto& r : x.rows()) {
    int d = lowest_order(r);
    if (d >= 0 && (best < 0 || d < best)) best = d;
  }
  return best;
}

namespace {

Form<Series> homogeneous_part(const Form<Series>& f, int deg) {
  Form<Series> out(f.dim());
  for (const auto& [m, c] : f.terms()) out.add(m, c.homogeneous(deg));
  return out;
}

IntegrabilityCheck summarize(const VectorForm<Series>& residual, int order) {
  IntegrabilityCheck chk;
  const int n = residual.dim();
  for (int k = 0; k <= order; ++k) {
    OrderResidual r{k, {}};
    for (int i = 0; i < n; ++i) {
      Form<Series> part = homogeneous_part(residual.hol_row(i), k);
      if (!part.is_zero()) r.rows.push_back(std::to_string(i + 1) + ": " + form_str(part));
    }
    if (!r.rows.empty()) {
      if (chk.leading_order < 0) chk.leading_order = k;
      chk.residuals.push_back(std::move(r));
    }
  }
  chk.pass = chk.leading_order < 0;
  return chk;
}

IntegrabilityCheck summarize(const VectorForm<Scalar>& residual) {
  IntegrabilityCheck chk;
  OrderResidual r{0, {}};
  for (int i = 0; i < residual.dim(); ++i) {
    if (!residual.hol_row(i).is_zero()) {
      r.rows.push_back(std::to_string(i + 1) + ": " + form_str(residual.hol_row(i)));
    }
  }
  if (!r.rows.empty()) {
    chk.leading_order = 0;
    chk.residuals.push_back(std::move(r));
  }
  chk.pass = chk.leading_order < 0;
  return chk;
}

}  // namespace

IntegrabilityReport check_integrability(const Model& model, const BeltramiSeries& phi, int order) {
  if (phi.dim != model.dim()) throw Error(ErrorKind::ModelMismatch, "Beltrami series dimension does not match the model");
  IntegrabilityReport rep;
  rep.mode = "series";
  rep.order = order;
  VectorForm<Series> p = phi.as_series(order);
  auto e = build_endomorphisms(p, order);
  rep.maurer_cartan = summarize(maurer_cartan_residual(model, p), order);
  rep.frame_ideal = summarize(frame_ideal_residual(model, p, e), order);
  return rep;
}

IntegrabilityReport check_integrability_at(const Model& model, const BeltramiSeries& phi,
                                           const Scalar& t0) {
  if (phi.dim != model.dim()) throw Error(ErrorKind::ModelMismatch, "Beltrami series dimension does not match the model");
  IntegrabilityReport rep;
  rep.mode = "value";
  rep.order = phi.max_power();
  rep.t0 = t0;
  VectorForm<Scalar> p = phi.evaluate(t0);
  Endomorphisms<Scalar> e;
  try {
    e = build_endomorphisms(p);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotInvertible) throw;
    throw Error(ErrorKind::Degenerate, "degenerate deformation at t = " + t0.str() +
                                           ": deformed coframe is not a basis (" + err.what() + ")");
  }
  rep.maurer_cartan = summarize(maurer_cartan_residual(model, p));
  rep.frame_ideal = summarize(frame_ideal_residual(model, p, e));
  return rep;
}

}  // namespace deformae
