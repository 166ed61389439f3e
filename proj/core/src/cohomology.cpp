#include "deformae/cohomology.hpp"

#include <algorithm>

namespace deformae {

Vec to_vector(const Form<Scalar>& f, const std::vector<Mask>& basis) {
  Vec v(basis.size());
  std::size_t found = 0;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    v[k] = f.coeff(basis[k]);
    if (!v[k].is_zero()) ++found;
  }
  if (found != f.size()) throw Error(ErrorKind::Bidegree, "form has terms outside the target basis: " + form_str(f));
  return v;
}

Form<Scalar> from_vector(int n, const std::vector<Mask>& basis, const Vec& v) {
  Form<Scalar> f(n);
  for (std::size_t k = 0; k < basis.size(); ++k) f.add(basis[k], v[k]);
  return f;
}

bool valid_bidegree(int n, Bidegree bd) { return bd.p >= 0 && bd.q >= 0 && bd.p <= n && bd.q <= n; }

namespace {

std::vector<Mask> safe_basis(int n, Bidegree bd) {
  return valid_bidegree(n, bd) ? basis(n, bd) : std::vector<Mask>{};
}

}  // namespace

DenseMatrix operator_matrix(int n, Bidegree src, Bidegree dst, const FormOp& op) {
  const auto sb = safe_basis(n, src);
  const auto db = safe_basis(n, dst);
  DenseMatrix m(static_cast<int>(db.size()), static_cast<int>(sb.size()));
  for (std::size_t c = 0; c < sb.size(); ++c) {
    Form<Scalar> img = op(Form<Scalar>::monomial(n, sb[c], 1));
    Vec v = to_vector(img, db);
    for (std::size_t r = 0; r < db.size(); ++r) m(static_cast<int>(r), static_cast<int>(c)) = v[r];
  }
  return m;
}

Bidegree op_target(Op op, Bidegree src) {
  switch (op) {
    case Op::Delbar:
      return {src.p, src.q + 1};
    case Op::Del:
      return {src.p + 1, src.q};
    case Op::DelbarDel:
      return {src.p + 1, src.q + 1};
  }
  return src;
}

OperatorCache::OperatorCache(const Model& model) : model_(&model) {
  if (model.backend() != Backend::Invariant) {
    throw Error(ErrorKind::Unsupported, "cohomology needs the invariant backend");
  }
}

const DenseMatrix& OperatorCache::get(Op op, Bidegree src) const {
  std::shared_ptr<Slot> slot;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto& s = slots_[{static_cast<int>(op), src}];
    if (!s) s = std::make_shared<Slot>();
    slot = s;
  }
  std::call_once(slot->once, [&] {
    const Model& m = *model_;
    FormOp f;
    switch (op) {
      case Op::Delbar:
        f = [&m](const Form<Scalar>& a) { return delbar(m, a); };
        break;
      case Op::Del:
        f = [&m](const Form<Scalar>& a) { return del(m, a); };
        break;
      case Op::DelbarDel:
        f = [&m](const Form<Scalar>& a) { return delbar(m, del(m, a)); };
        break;
    }
    slot->value = operator_matrix(m.dim(), src, op_target(op, src), f);
  });
  return slot->value;
}

namespace {

int dim_of(int n, Bidegree bd) { return static_cast<int>(safe_basis(n, bd).size()); }

HodgeTable table_from(int n, const std::function<const DenseMatrix&(Bidegree)>& delbar_on) {
  HodgeTable t;
  t.n = n;
  t.h.assign(n + 1, std::vector<int>(n + 1, 0));
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      const int out_rank = rank(delbar_on({p, q}));
      const int in_rank = q > 0 ? rank(delbar_on({p, q - 1})) : 0;
      t.h[p][q] = dim_of(n, {p, q}) - out_rank - in_rank;
    }
  }
  return t;
}

}  // namespace

HodgeTable hodge_numbers(const OperatorCache& cache) {
  return table_from(cache.model().dim(), [&](Bidegree bd) -> const DenseMatrix& { return cache.get(Op::Delbar, bd); });
}

HodgeTable hodge_numbers(const Model& model) {
  OperatorCache cache(model);
  return hodge_numbers(cache);
}

DenseMatrix deformed_delbar_matrix(const TransportContext<Scalar>& ctx, Bidegree src) {
  return operator_matrix(ctx.model->dim(), src, {src.p, src.q + 1},
                         [&](const Form<Scalar>& w) { return deformed_dolbeault(ctx, w).delbar_t; });
}

DenseMatrix deformed_del_matrix(const TransportContext<Scalar>& ctx, Bidegree src) {
  return operator_matrix(ctx.model->dim(), src, {src.p + 1, src.q},
                         [&](const Form<Scalar>& w) { return deformed_dolbeault(ctx, w).del_t; });
}

HodgeTable hodge_numbers(const TransportContext<Scalar>& ctx) {
  if (!context_integrable(ctx)) {
    throw Error(ErrorKind::Integrability, "Hodge numbers of X_t need an integrable Beltrami form at t0");
  }
  const int n = ctx.model->dim();
  std::map<Bidegree, DenseMatrix> dbar, dl;
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      dbar.emplace(Bidegree{p, q}, deformed_delbar_matrix(ctx, {p, q}));
      dl.emplace(Bidegree{p, q}, deformed_del_matrix(ctx, {p, q}));
    }
  }
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (!(dbar.at({p, q + 1}) * dbar.at({p, q})).is_zero()) {
        throw Error(ErrorKind::Integrability, "transported delbar does not square to zero");
      }
      if (p < n) {
        DenseMatrix a = dl.at({p, q + 1}) * dbar.at({p, q});
        DenseMatrix b = dbar.at({p + 1, q}) * dl.at({p, q});
        for (int r = 0; r < a.rows(); ++r) {
          for (int c = 0; c < a.cols(); ++c) {
            if (!(a(r, c) + b(r, c)).is_zero()) {
              throw Error(ErrorKind::Integrability, "transported del and delbar do not anticommute");
            }
          }
        }
      }
    }
  }
  HodgeTable t = table_from(n, [&](Bidegree bd) -> const DenseMatrix& {
    static const DenseMatrix empty;
    auto it = dbar.find(bd);
    return it == dbar.end() ? empty : it->second;
  });
  t.at = ctx.t0 ? ctx.t0->str() : "t0";
  return t;
}

DeRhamCheck de_rham_check(const Model& model, const HodgeTable& h) {
  const int n = model.dim();
  DeRhamCheck c;
  std::vector<std::vector<Mask>> by_degree(2 * n + 2);
  for (Mask m = 0; m < (Mask{1} << (2 * n)); ++m) by_degree[degree(m)].push_back(m);
  std::vector<int> rk(2 * n + 1, 0);
  for (int k = 0; k <= 2 * n; ++k) {
    const auto& src = by_degree[k];
    const auto& dst = by_degree[k + 1];
    DenseMatrix mat(static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t j = 0; j < src.size(); ++j) {
      Vec v = to_vector(d(model, Form<Scalar>::monomial(n, src[j], 1)), dst);
      for (std::size_t i = 0; i < dst.size(); ++i) mat(static_cast<int>(i), static_cast<int>(j)) = v[i];
    }
    rk[k] = rank(mat);
  }
  for (int k = 0; k <= 2 * n; ++k) {
    const int b = static_cast<int>(by_degree[k].size()) - rk[k] - (k > 0 ? rk[k - 1] : 0);
    c.betti.push_back(b);
    c.euler_betti += (k % 2 ? -b : b);
    int hs = 0;
    for (int p = 0; p <= std::min(k, n); ++p) {
      if (k - p <= n) hs += h.h[p][k - p];
    }
    if (b > hs) c.frolicher = false;
  }
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) c.euler_hodge += ((p + q) % 2 ? -h.h[p][q] : h.h[p][q]);
  }
  return c;
}

namespace {

std::vector<Vec> columns(const DenseMatrix& m) {
  std::vector<Vec> out;
  for (int c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

DenseMatrix image_of(const DenseMatrix& m, const std::vector<Vec>& vecs) {
  std::vector<Vec> cols;
  for (const auto& v : vecs) cols.push_back(m.apply(v));
  return DenseMatrix::from_columns(m.rows(), cols);
}

std::optional<Form<Scalar>> first_outside(int n, Bidegree bd, const DenseMatrix& s, const DenseMatrix& target) {
  const auto b = basis(n, bd);
  for (const auto& v : columns(s)) {
    if (is_zero(v)) continue;
    if (target.cols() == 0 || !in_column_span(target, v)) return from_vector(n, b, v);
  }
  return std::nullopt;
}

}  // namespace

ClassMembership classify_EDB(const OperatorCache& cache, int p, int q) {
  const int n = cache.model().dim();
  if (!valid_bidegree(n, {p, q})) {
    throw Error(ErrorKind::Bidegree, "bidegree (" + std::to_string(p) + "," + std::to_string(q) + ") out of range");
  }
  ClassMembership cm;
  cm.bd = {p, q};
  if (p == 0) {
    cm.vacuous = true;
    return cm;
  }
  const int rows = dim_of(n, {p, q});
  // S = ∂(ker ∂̄∂ on A^{p-1,q}).
  const DenseMatrix& del_g = cache.get(Op::Del, {p - 1, q});
  const DenseMatrix& dbd_g = cache.get(Op::DelbarDel, {p - 1, q});
  const DenseMatrix s = image_of(del_g, nullspace(dbd_g));
  cm.dim_S = rank(s);
  if (cm.dim_S == 0) return cm;

  DenseMatrix e_target(rows, 0), d_target(rows, 0), b_target(rows, 0);
  if (q > 0) {
    const DenseMatrix& dbar_x = cache.get(Op::Delbar, {p, q - 1});
    e_target = dbar_x;
    d_target = image_of(dbar_x, nullspace(cache.get(Op::Del, {p, q - 1})));
    b_target = cache.get(Op::DelbarDel, {p - 1, q - 1});
  }
  cm.witness_E = first_outside(n, {p, q}, s, e_target);
  cm.witness_D = first_outside(n, {p, q}, s, d_target);
  cm.witness_B = first_outside(n, {p, q}, s, b_target);
  cm.in_E = !cm.witness_E;
  cm.in_D = !cm.witness_D;
  cm.in_B = !cm.witness_B;
  if ((cm.in_B && !cm.in_D) || (cm.in_D && !cm.in_E)) {
    throw Error(ErrorKind::Validation, "class inclusion chain B <= D <= E violated; internal error");
  }
  return cm;
}

ClassMembership classify_EDB(const Model& model, int p, int q) {
  OperatorCache cache(model);
  return classify_EDB(cache, p, q);
}

std::vector<ClassMembership> classify_all(const OperatorCache& cache) {
  std::vector<ClassMembership> out;
  const int n = cache.model().dim();
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) out.push_back(classify_EDB(cache, p, q));
  }
  return out;
}

std::map<Bidegree, bool> ddbar_lemma_check(const OperatorCache& cache) {
  const int n = cache.model().dim();
  std::map<Bidegree, bool> out;
  for (int p = 0; p <= n; ++p) {
    for (int q = 0; q <= n; ++q) {
      const int rows = dim_of(n, {p, q});
      const DenseMatrix target = (p > 0 && q > 0) ? cache.get(Op::DelbarDel, {p - 1, q - 1}) : DenseMatrix(rows, 0);
      bool ok = true;
      if (p > 0) {
        DenseMatrix s = image_of(cache.get(Op::Del, {p - 1, q}), nullspace(cache.get(Op::DelbarDel, {p - 1, q})));
        ok = ok && !first_outside(n, {p, q}, s, target);
      }
      if (q > 0) {
        const DenseMatrix& dbar = cache.get(Op::Delbar, {p, q - 1});
        DenseMatrix del_after = cache.get(Op::Del, {p, q}) * dbar;
        DenseMatrix s = image_of(dbar, nullspace(del_after));
        ok = ok && !first_outside(n, {p, q}, s, target);
      }
      out[{p, q}] = ok;
    }
  }
  return out;
}

bool ddbar_lemma_holds(const std::map<Bidegree, bool>& table) {
  return std::all_of(table.begin(), table.end(), [](const auto& kv) { return kv.second; });
}

std::vector<Form<Scalar>> dolbeault_basis(const OperatorCache& cache, Bidegree bd) {
  const int n = cache.model().dim();
  const auto b = basis(n, bd);
  DenseMatrix acc = bd.q > 0 ? cache.get(Op::Delbar, {bd.p, bd.q - 1}) : DenseMatrix(static_cast<int>(b.size()), 0);
  int acc_rank = rank(acc);
  std::vector<Form<Scalar>> out;
  for (const auto& z : nullspace(cache.get(Op::Delbar, bd))) {
    DenseMatrix next = acc.augment(DenseMatrix::from_columns(static_cast<int>(b.size()), {z}));
    const int r = rank(next);
    if (r == acc_rank) continue;
    acc = std::move(next);
    acc_rank = r;
    out.push_back(from_vector(n, b, z));
  }
  return out;
}

std::vector<int> alternate_pivot_order(const Model& model, Bidegree bd) {
  return reversed_order(dim_of(model.dim(), {bd.p, bd.q - 1}));
}

Representative d_closed_representative(const OperatorCache& cache, const Form<Scalar>& alpha,
                                       const std::vector<int>& order) {
  const Model& m = cache.model();
  const int n = m.dim();
  auto bdo = alpha.bidegree();
  if (!bdo) {
    if (!alpha.is_zero()) throw Error(ErrorKind::Bidegree, "representative needs a homogeneous form");
    return {alpha, alpha};
  }
  const Bidegree bd = *bdo;
  if (!delbar(m, alpha).is_zero()) {
    throw Error(ErrorKind::Validation, "form is not delbar-closed: delbar = " + form_str(delbar(m, alpha)));
  }
  if (bd.p + 1 <= n) {
    ClassMembership cm = classify_EDB(cache, bd.p + 1, bd.q);
    if (!cm.in_B) {
      throw Error(ErrorKind::Hypothesis, "d-closed representatives need the model in B^{" + std::to_string(bd.p + 1) +
                                             "," + std::to_string(bd.q) + "}; violated by " +
                                             form_str(*cm.witness_B));
    }
  }
  const Form<Scalar> da = del(m, alpha);
  Representative rep{alpha, Form<Scalar>(n)};
  if (da.is_zero()) return rep;
  if (bd.q == 0) throw Error(ErrorKind::Obstruction, "no solution of delbar del y = del alpha in bidegree (p,-1)");
  const Bidegree ybd{bd.p, bd.q - 1};
  const DenseMatrix& mat = cache.get(Op::DelbarDel, ybd);
  auto y = solve(mat, to_vector(da, basis(n, {bd.p + 1, bd.q})), order);
  if (!y) {
    throw Error(ErrorKind::Obstruction, "no solution of delbar del y = del alpha for alpha = " + form_str(alpha));
  }
  rep.y = from_vector(n, basis(n, ybd), *y);
  rep.gamma = alpha + delbar(m, rep.y);
  if (!d(m, rep.gamma).is_zero()) throw Error(ErrorKind::Obstruction, "representative is not d-closed; internal error");
  return rep;
}

}  // namespace deformae
