#pragma once

#include <string>
#include <type_traits>
#include <vector>

#include "deformae/algebra.hpp"

namespace deformae {

enum class Backend { Invariant, Chart };

/// A finite model of a compact complex manifold X_0 together with its
/// differential. The invariant backend stands in for left-invariant forms on
/// a Lie group: the coframe ω^i has constant structure equations dω^i and
/// forms have constant coefficients. The chart backend is a polynomial
/// neighbourhood in coordinates z^i with the closed coframe dz^i and
/// coefficients truncated at total degree `maxdeg`.
class Model {
 public:
  /// `structure[i]` is d(ω^{i+1}); d(ω̄^i) is its conjugate. Throws a
  /// validation error if the data violate d∘d = 0 or X_0 integrability.
  static Model invariant(std::string name, int n, std::vector<Form<Scalar>> structure);
  static Model chart(std::string name, int n, int maxdeg);

  const std::string& name() const { return name_; }
  int dim() const { return n_; }
  Backend backend() const { return backend_; }
  int maxdeg() const { return maxdeg_; }

  /// d of generator g, 0 <= g < 2n (zero on the chart backend).
  const Form<Scalar>& d_generator(int g) const { return images_[g]; }
  const std::vector<Form<Scalar>>& structure_images() const { return images_; }
  const Form<Scalar>& del_generator(int g) const { return del_images_[g]; }
  const Form<Scalar>& delbar_generator(int g) const { return delbar_images_[g]; }

  /// Zero coefficient shaped for this model's chart ring.
  ChartPoly chart_zero() const { return Truncated::zero(n_, maxdeg_); }

 private:
  Model() = default;
  void finish();

  std::string name_;
  int n_ = 0;
  Backend backend_ = Backend::Invariant;
  int maxdeg_ = 0;
  std::vector<Form<Scalar>> images_;
  std::vector<Form<Scalar>> del_images_;
  std::vector<Form<Scalar>> delbar_images_;
};

namespace detail {

enum class Part { All, Del, Delbar };

template <class R>
Form<R> differential(const Model& model, const Form<R>& a, Part part) {
  const int n = model.dim();
  if (a.dim() != n && !a.is_zero()) {
    throw Error(ErrorKind::ModelMismatch, "form does not belong to model " + model.name());
  }
  std::vector<Form<Scalar>> images;
  images.reserve(2 * n);
  for (int g = 0; g < 2 * n; ++g) {
    images.push_back(part == Part::All   ? model.d_generator(g)
                     : part == Part::Del ? model.del_generator(g)
                                         : model.delbar_generator(g));
  }
  Form<R> out = substitute_derivation(a, images);
  if constexpr (std::is_same_v<R, Truncated>) {
    if (model.backend() == Backend::Chart) {
      // Coefficient part: sum over variables v of (dc/dv) dv ^ m, where z^i
      // pairs with dz^i and zbar^i with dzbar^i.
      for (const auto& [m, c] : a.terms()) {
        if (c.bound() && c.pairs() != n) {
          throw Error(ErrorKind::ModelMismatch, "chart coefficient ring does not match model");
        }
        for (int v = 0; v < 2 * n; ++v) {
          if (part == Part::Del && v >= n) continue;
          if (part == Part::Delbar && v < n) continue;
          Truncated dc = c.derivative(v);
          if (dc.is_zero()) continue;
          const Mask bit = Mask{1} << v;
          const int s = merge_sign(bit, m);
          if (s == 0) continue;
          out.add(bit | m, s < 0 ? -dc : dc);
        }
      }
    }
  }
  return out;
}

}  // namespace detail

/// Exterior derivative.
template <class R>
Form<R> d(const Model& model, const Form<R>& a) {
  return detail::differential(model, a, detail::Part::All);
}

/// (1,0) part ∂ of d.
template <class R>
Form<R> del(const Model& model, const Form<R>& a) {
  return detail::differential(model, a, detail::Part::Del);
}

/// (0,1) part ∂̄ of d.
template <class R>
Form<R> delbar(const Model& model, const Form<R>& a) {
  return detail::differential(model, a, detail::Part::Delbar);
}

/// Basis of A^{p,q} for this model.
inline std::vector<Mask> basis(const Model& model, Bidegree bd) { return basis(model.dim(), bd); }

}  // namespace deformae
