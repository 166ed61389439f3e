#include "deformae/extension_solver.hpp"

namespace deformae {

namespace {

std::string bd_label(const std::string& cls, int p, int q) {
  return cls + "^{" + std::to_string(p) + "," + std::to_string(q) + "}";
}

Form<Scalar> sum_contractions(const BeltramiSeries& phi, const std::vector<Form<Scalar>>& sigma, int k) {
  Form<Scalar> acc(phi.dim);
  for (int i = 1; i <= k; ++i) acc += contract(phi.term(i), sigma[k - i]);
  return acc;
}

ObstructionStep obstruction_step(const Model& m, const BeltramiSeries& phi, const std::vector<Form<Scalar>>& sigma,
                                 const std::vector<Form<Scalar>>& eta, int k) {
  const int n = m.dim();
  ObstructionStep st;
  st.k = k;
  st.eta = -del(m, sum_contractions(phi, sigma, k));
  st.direct = delbar(m, st.eta);

  Form<Scalar> b(n);
  for (int i = 1; i <= k; ++i) {
    b += contract(delbar_vector(m, phi.term(i)), sigma[k - i]);
    b += contract(phi.term(i), delbar(m, sigma[k - i]));
  }
  st.leibniz = del(m, b);

  Form<Scalar> brackets(n), expanded(n), second(n);
  for (int i = 2; i <= k; ++i) {
    for (int j = 1; j < i; ++j) {
      brackets += contract(bracket(phi.term(j), phi.term(i - j), m), sigma[k - i]);
      expanded += commutator_rhs(m, phi.term(j), phi.term(i - j), sigma[k - i]);
    }
  }
  for (int i = 1; i < k; ++i) second += contract(phi.term(i), -eta[k - i - 1]);
  const Scalar half = Scalar::rational(1, 2);
  st.maurer_cartan = del(m, brackets * half - second);
  st.commutator = del(m, expanded * half - second);

  Form<Scalar> e(n);
  for (int i = 2; i <= k; ++i) {
    for (int j = 1; j < i; ++j) e += contract(phi.term(j), del(m, contract(phi.term(i - j), sigma[k - i])));
  }
  for (int i = 1; i < k; ++i) {
    for (int j = 1; j <= k - i; ++j) e -= contract(phi.term(i), del(m, contract(phi.term(j), sigma[k - i - j])));
  }
  st.cancelled = del(m, e);
  return st;
}

// The iteration shared by both kinds: σ_0 a d-closed (p,0)-form.
void iterate(const OperatorCache& cache, const BeltramiSeries& phi, ExtensionRun& run, int p) {
  const Model& m = cache.model();
  const int n = m.dim();
  const auto src = basis(n, {p, 0});
  const auto rows_a = basis(n, {p, 1});
  const auto rows_b = p + 1 <= n ? basis(n, {p + 1, 0}) : std::vector<Mask>{};
  const DenseMatrix& dbar = cache.get(Op::Delbar, {p, 0});
  const DenseMatrix& dl = cache.get(Op::Del, {p, 0});
  DenseMatrix stacked(dbar.rows() + dl.rows(), static_cast<int>(src.size()));
  for (int c = 0; c < stacked.cols(); ++c) {
    for (int r = 0; r < dbar.rows(); ++r) stacked(r, c) = dbar(r, c);
    for (int r = 0; r < dl.rows(); ++r) stacked(dbar.rows() + r, c) = dl(r, c);
  }
  std::vector<Form<Scalar>> eta;
  for (int k = 1; k <= run.order; ++k) {
    ObstructionStep st = obstruction_step(m, phi, run.sigma, eta, k);
    eta.push_back(st.eta);
    const bool ok = st.vanishes();
    run.obstruction_log.push_back(st);
    if (!ok) {
      const ObstructionStep& s = run.obstruction_log.back();
      run.failure = RunFailure{ErrorKind::Obstruction, k,
                               "obstruction at order " + std::to_string(k) + ": delbar eta_" + std::to_string(k) +
                                   " = " + form_str(s.direct) + " (leibniz " + form_str(s.leibniz) +
                                   ", maurer-cartan " + form_str(s.maurer_cartan) + ", commutator " +
                                   form_str(s.commutator) + ", cancelled " + form_str(s.cancelled) + ")"};
      return;
    }
    Vec rhs = to_vector(st.eta, rows_a);
    rhs.resize(rows_a.size() + rows_b.size());
    auto x = solve(stacked, rhs);
    if (!x) {
      run.failure = RunFailure{ErrorKind::Obstruction, k,
                               "no del-closed solution of delbar x = eta_" + std::to_string(k) + " = " +
                                   form_str(st.eta) + " in A^{" + std::to_string(p) + ",0} (" +
                                   bd_label("D", p, 1) + " solve, " + std::to_string(stacked.rows()) + "x" +
                                   std::to_string(stacked.cols()) + " system)"};
      return;
    }
    run.sigma.push_back(from_vector(n, src, *x));
  }
}

Form<Series> series_of(const std::vector<Form<Scalar>>& sigma, bool antiholomorphic, int order, int n) {
  Form<Series> out(n);
  for (std::size_t k = 0; k < sigma.size() && static_cast<int>(k) <= order; ++k) {
    const int kk = static_cast<int>(k);
    Series tk = antiholomorphic ? series_term(1, 0, kk, order) : series_term(1, kk, 0, order);
    out += lift<Series>(sigma[k]) * tk;
  }
  return out;
}

void integrability_warning(const Model& m, const BeltramiSeries& phi, int order, ExtensionRun& run) {
  auto rep = check_integrability(m, phi, order);
  if (!rep.integrable()) {
    run.warnings.push_back("Beltrami series is not integrable: Maurer-Cartan residual at order " +
                           std::to_string(rep.maurer_cartan.leading_order));
  }
}

}  // namespace

Form<Series> ExtensionRun::sigma_series() const {
  const int n = sigma.empty() ? 0 : sigma.front().dim();
  return series_of(sigma, kind == "0q", order, n);
}

void ExtensionRun::throw_if_failed() const {
  if (failure) throw Error(failure->kind, failure->message);
}

bool all_hold(const std::vector<std::pair<std::string, bool>>& h) {
  for (const auto& [label, ok] : h) {
    if (!ok) return false;
  }
  return true;
}

std::vector<std::pair<std::string, bool>> p0_hypotheses(const OperatorCache& cache, int p) {
  const int n = cache.model().dim();
  std::vector<std::pair<std::string, bool>> out;
  out.emplace_back(bd_label("D", p, 1), classify_EDB(cache, p, 1).in_D);
  if (p + 1 <= n) {
    out.emplace_back(bd_label("E", p + 1, 0), classify_EDB(cache, p + 1, 0).in_E);
  } else {
    out.emplace_back(bd_label("E", p + 1, 0), true);
  }
  return out;
}

std::vector<std::pair<std::string, bool>> q0_hypotheses(const OperatorCache& cache, int q) {
  std::vector<std::pair<std::string, bool>> out;
  for (int qq = 1; qq <= q; ++qq) {
    out.emplace_back(bd_label("B", 1, qq), classify_EDB(cache, 1, qq).in_B);
    out.emplace_back(bd_label("E", qq, 0), classify_EDB(cache, qq, 0).in_E);
    out.emplace_back(bd_label("D", qq, 1), classify_EDB(cache, qq, 1).in_D);
  }
  return out;
}

ExtensionRun extend_p0(const OperatorCache& cache, const BeltramiSeries& phi, const Form<Scalar>& sigma0, int order) {
  const Model& m = cache.model();
  const int n = m.dim();
  if (phi.dim != n) throw Error(ErrorKind::ModelMismatch, "Beltrami series dimension does not match the model");
  if (order < 1) throw Error(ErrorKind::Validation, "extension order must be at least 1");
  int p = -1;
  for (int k = 0; k <= n; ++k) {
    if (!sigma0.is_zero() && sigma0.is_homogeneous({k, 0})) p = k;
  }
  if (p < 0) throw Error(ErrorKind::Bidegree, "extend_p0 needs a nonzero (p,0)-form");
  ExtensionRun run;
  run.kind = "p0";
  run.order = order;
  run.bidegree = {p, 0};
  if (!delbar(m, sigma0).is_zero()) {
    throw Error(ErrorKind::Validation, "sigma_0 is not holomorphic: delbar sigma_0 = " + form_str(delbar(m, sigma0)));
  }
  for (const auto& [label, ok] : p0_hypotheses(cache, p)) {
    if (!ok) run.warnings.push_back("model is not in " + label);
  }
  integrability_warning(m, phi, order, run);
  run.sigma.push_back(sigma0);
  const Form<Scalar> ds = del(m, sigma0);
  if (!ds.is_zero()) {
    run.failure = RunFailure{ErrorKind::Obstruction, 0,
                             "del sigma_0 = " + form_str(ds) + " is nonzero, so delbar x = del sigma_0 has no solution: " +
                                 bd_label("E", p + 1, 0) + " fails on this input"};
    return run;
  }
  iterate(cache, phi, run, p);
  if (run.failure) return run;

  auto ctx = series_context(m, phi, order);
  const Form<Series> st = run.sigma_series();
  run.residual = delbar(m, st) + del(m, contract(ctx.phi, st)) - contract(ctx.phi, del(m, st));
  run.transport_residual = extension_formula_p0(ctx, st).component({p, 1});
  return run;
}

ExtensionRun extend_0q(const OperatorCache& cache, const BeltramiSeries& phi, const Form<Scalar>& sigma0, int order) {
  const Model& m = cache.model();
  const int n = m.dim();
  if (phi.dim != n) throw Error(ErrorKind::ModelMismatch, "Beltrami series dimension does not match the model");
  if (order < 1) throw Error(ErrorKind::Validation, "extension order must be at least 1");
  int q = -1;
  for (int k = 0; k <= n; ++k) {
    if (!sigma0.is_zero() && sigma0.is_homogeneous({0, k})) q = k;
  }
  if (q < 0) throw Error(ErrorKind::Bidegree, "extend_0q needs a nonzero (0,q)-form");
  if (!d(m, sigma0).is_zero()) {
    throw Error(ErrorKind::Validation, "sigma_0 is not d-closed: d sigma_0 = " + form_str(d(m, sigma0)));
  }
  ExtensionRun run;
  run.kind = "0q";
  run.order = order;
  run.bidegree = {0, q};
  for (const auto& [label, ok] : q0_hypotheses(cache, q)) {
    if (!ok) run.warnings.push_back("model is not in " + label);
  }
  integrability_warning(m, phi, order, run);

  ExtensionRun conj_run;
  conj_run.order = order;
  conj_run.sigma.push_back(sigma0.conj());
  iterate(cache, phi, conj_run, q);
  run.obstruction_log = conj_run.obstruction_log;
  run.failure = conj_run.failure;
  for (const auto& s : conj_run.sigma) run.sigma.push_back(s.conj());
  if (run.failure) return run;

  auto ctx = series_context(m, phi, order);
  const Form<Series> st = run.sigma_series();
  const Form<Series> dbs = delbar(m, st);
  run.residual = contract(ctx.inv_antihol, dbs) - dbs * Series(Scalar(q)) -
                 contract(ctx.phi_inv, del(m, st) + delbar(m, contract(ctx.phibar, st)));
  run.transport_residual = extension_formula_0q(ctx, st).component({0, q + 1});
  return run;
}

Correspondence build_0q_correspondence(const OperatorCache& cache, const BeltramiSeries& phi, int q, int order,
                                       const std::vector<Scalar>& t_values) {
  const Model& m = cache.model();
  const int n = m.dim();
  if (q < 1 || q > n) throw Error(ErrorKind::Bidegree, "q out of range");
  for (const auto& [label, ok] : q0_hypotheses(cache, q)) {
    if (!ok) throw Error(ErrorKind::Hypothesis, "the (0,q) correspondence needs the model in " + label);
  }
  Correspondence c;
  c.q = q;
  c.classes = dolbeault_basis(cache, {0, q});
  for (const auto& a : c.classes) {
    Representative r1 = d_closed_representative(cache, a);
    Representative r2 = d_closed_representative(cache, a, alternate_pivot_order(m, {0, q}));
    if (!(r1.gamma == r2.gamma)) c.representatives_unique = false;
    c.reps.push_back(r1);
    ExtensionRun run = extend_0q(cache, phi, r1.gamma, order);
    run.throw_if_failed();
    c.runs.push_back(std::move(run));
  }
  const auto b = basis(n, {0, q});
  for (const auto& t0 : t_values) {
    auto ctx = value_context(m, phi, t0);
    CorrespondenceSample s;
    s.t0 = t0;
    HodgeTable h = hodge_numbers(ctx);
    s.h0q_t = h.h[0][q];
    s.h0q_minus_t = h.h[0][q - 1];
    const DenseMatrix closed = deformed_delbar_matrix(ctx, {0, q});
    DenseMatrix exact = deformed_delbar_matrix(ctx, {0, q - 1});
    const int base = rank(exact);
    std::vector<Vec> cols;
    const Scalar tb = t0.conj();
    for (const auto& run : c.runs) {
      Form<Scalar> tau(n);
      Scalar pw = 1;
      for (const auto& sk : run.sigma) {
        tau += sk * pw;
        pw *= tb;
      }
      Vec v = to_vector(tau, b);
      if (!is_zero(closed.apply(v))) s.all_closed = false;
      cols.push_back(std::move(v));
    }
    s.rank = rank(exact.augment(DenseMatrix::from_columns(static_cast<int>(b.size()), cols))) - base;
    c.samples.push_back(s);
  }
  return c;
}

}  // namespace deformae
