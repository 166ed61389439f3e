#include "deformae/models.hpp"

namespace deformae {

Model Model::invariant(std::string name, int n, std::vector<Form<Scalar>> structure) {
  if (n < 1 || n > kMaxDim) throw Error(ErrorKind::Validation, "dimension must be in 1.." + std::to_string(kMaxDim));
  if (static_cast<int>(structure.size()) != n) throw Error(ErrorKind::Validation, "structure equations must be given for every generator");
  Model m;
  m.name_ = std::move(name);
  m.n_ = n;
  m.backend_ = Backend::Invariant;
  m.images_.assign(2 * n, Form<Scalar>(n));
  for (int i = 0; i < n; ++i) {
    const Form<Scalar>& f = structure[i];
    if (f.dim() != n && !f.is_zero()) throw Error(ErrorKind::Validation, "structure form has wrong dimension");
    for (const auto& [mask, c] : f.terms()) {
      if (degree(mask) != 2) {
        throw Error(ErrorKind::Validation, "d(w" + std::to_string(i + 1) + ") must be a 2-form");
      }
      if (bidegree_of(mask, n) == Bidegree{0, 2}) {
        throw Error(ErrorKind::Validation,
                    "d(w" + std::to_string(i + 1) + ") has a (0,2) component " +
                        form_str(f.component({0, 2})) +
                        "; the almost complex structure of X_0 is not integrable");
      }
    }
    m.images_[i] = f;
    m.images_[n + i] = f.conj();
  }
  m.finish();
  for (int g = 0; g < 2 * n; ++g) {
    Form<Scalar> dd = d(m, m.images_[g]);
    if (!dd.is_zero()) {
      throw Error(ErrorKind::Validation, "d^2 != 0 on generator " + monomial_str(n, Mask{1} << g) +
                                             ": d(d(" + monomial_str(n, Mask{1} << g) +
                                             ")) = " + form_str(dd));
    }
  }
  return m;
}

Model Model::chart(std::string name, int n, int maxdeg) {
  if (n < 1 || n > kMaxPairs) throw Error(ErrorKind::Validation, "chart dimension must be in 1.." + std::to_string(kMaxPairs));
  if (maxdeg < 1) throw Error(ErrorKind::Validation, "chart truncation degree must be positive");
  Model m;
  m.name_ = std::move(name);
  m.n_ = n;
  m.backend_ = Backend::Chart;
  m.maxdeg_ = maxdeg;
  m.images_.assign(2 * n, Form<Scalar>(n));
  m.finish();
  return m;
}

void Model::finish() {
  del_images_.assign(2 * n_, Form<Scalar>(n_));
  delbar_images_.assign(2 * n_, Form<Scalar>(n_));
  for (int g = 0; g < 2 * n_; ++g) {
    const Bidegree b = g < n_ ? Bidegree{1, 0} : Bidegree{0, 1};
    del_images_[g] = images_[g].component({b.p + 1, b.q});
    delbar_images_[g] = images_[g].component({b.p, b.q + 1});
  }
}

}  // namespace deformae
