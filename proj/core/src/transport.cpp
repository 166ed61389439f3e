#include "deformae/transport.hpp"

namespace deformae {

TransportContext<Series> series_context(const Model& model, const BeltramiSeries& phi, int order) {
  if (order < 1) throw Error(ErrorKind::Unsupported, "series order must be at least 1");
  auto c = make_context(model, phi.as_series(order), order);
  c.mode = "series";
  return c;
}

TransportContext<Scalar> value_context(const Model& model, const BeltramiSeries& phi,
                                       const Scalar& t0) {
  try {
    auto c = make_context(model, phi.evaluate(t0));
    c.mode = "value";
    c.order = phi.max_power();
    c.t0 = t0;
    return c;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotInvertible) throw;
    throw Error(ErrorKind::Degenerate, "degenerate deformation at t = " + t0.str() +
                                           ": deformed coframe is not a basis (" + err.what() + ")");
  }
}

TransportContext<ChartPoly> chart_context(const Model& model, const VectorForm<ChartPoly>& phi) {
  if (model.backend() != Backend::Chart) {
    throw Error(ErrorKind::Unsupported, "chart context needs a chart model");
  }
  auto c = make_context(model, phi);
  c.mode = "chart";
  c.order = model.maxdeg();
  return c;
}

bool context_integrable(const TransportContext<Scalar>& c) {
  return maurer_cartan_residual(*c.model, c.phi).is_zero();
}

DeformedDolbeault<Scalar> deformed_dolbeault(const TransportContext<Scalar>& c, const Form<Scalar>& w) {
  if (!context_integrable(c)) {
    throw Error(ErrorKind::Integrability,
                "the deformed Dolbeault operators need an integrable Beltrami form at this parameter");
  }
  auto bd = w.bidegree();
  if (!bd && !w.is_zero()) throw Error(ErrorKind::Bidegree, "deformed_dolbeault needs a homogeneous form");
  DeformedDolbeault<Scalar> out{Form<Scalar>(w.dim()), Form<Scalar>(w.dim())};
  if (w.is_zero()) return out;
  Form<Scalar> f = extension_formula_general(c, w);
  out.del_t = f.component({bd->p + 1, bd->q});
  out.delbar_t = f.component({bd->p, bd->q + 1});
  if (f != out.del_t + out.delbar_t) {
    throw Error(ErrorKind::Integrability, "transported differential has components outside (p+1,q)+(p,q+1)");
  }
  return out;
}

Form<ChartPoly> below_degree(const Form<ChartPoly>& f, int deg) {
  Form<ChartPoly> out(f.dim());
  for (const auto& [m, c] : f.terms()) out.add(m, c.below(deg));
  return out;
}

HolomorphicityResult holomorphicity_criterion(const TransportContext<ChartPoly>& c,
                                              const Form<ChartPoly>& f) {
  if (!f.is_homogeneous({0, 0})) throw Error(ErrorKind::Bidegree, "holomorphicity criterion needs a function");
  const Model& m = *c.model;
  HolomorphicityResult r;
  const Form<ChartPoly> df = del(m, f);
  const Form<ChartPoly> dbf = delbar(m, f);
  const int cutoff = m.maxdeg() - 1;
  r.obstruction = below_degree(dbf - contract(c.phi, df), cutoff);
  Form<ChartPoly> inner = contract(c.inv_hol, df - contract(c.phibar, dbf)) +
                          contract(c.inv_antihol, dbf - contract(c.phi, df));
  r.df_residual = below_degree(d(m, f) - canonical_map(c, inner), cutoff - 1);
  r.holomorphic = r.obstruction.is_zero();
  r.df_identity_holds = r.df_residual.is_zero();
  return r;
}

DvzResult verify_dvz(const TransportContext<ChartPoly>& c) {
  const Model& m = *c.model;
  const int n = m.dim();
  DvzResult r;
  r.integrable = true;
  const VectorForm<ChartPoly> mc = maurer_cartan_residual(m, c.phi);
  for (const auto& row : mc.rows()) {
    if (!below_degree(row, m.maxdeg() - 2).is_zero()) r.integrable = false;
  }
  const Matrix<ChartPoly>& e = c.endos.inv_antihol_matrix;
  const Matrix<ChartPoly> ephibar = e * c.endos.phi_matrix.conj();
  const Matrix<ChartPoly>& phi = c.endos.phi_matrix;
  std::vector<Form<ChartPoly>> zeta(n), zetabar(n);
  for (int k = 0; k < n; ++k) {
    zeta[k] = c.forward_images[k];
    zetabar[k] = c.forward_images[n + k];
  }
  r.pass = true;
  const int cutoff = m.maxdeg() - 2;
  for (int i = 0; i < n; ++i) {
    Form<ChartPoly> lhs = d(m, e_iphi(c, Form<ChartPoly>::generator(n, i)));
    Form<ChartPoly> rhs(n);
    for (int l = 0; l < n; ++l) {
      for (int j = 0; j < n; ++j) {
        ChartPoly dphi = phi(i, l).derivative(j);
        if (dphi.is_zero()) continue;
        for (int k = 0; k < n; ++k) {
          if (!ephibar(l, k).is_zero()) rhs += wedge(zeta[k], zeta[j]) * (ephibar(l, k) * dphi);
          if (!e(l, k).is_zero()) rhs -= wedge(zetabar[k], zeta[j]) * (e(l, k) * dphi);
        }
      }
    }
    Form<ChartPoly> res = below_degree(lhs - rhs, cutoff);
    if (!res.is_zero()) r.pass = false;
    r.lhs.push_back(std::move(lhs));
    r.rhs.push_back(std::move(rhs));
    r.residual.push_back(std::move(res));
  }
  return r;
}

}  // namespace deformae
