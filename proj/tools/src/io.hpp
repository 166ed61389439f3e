#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "deformae/beltrami.hpp"

namespace deformae::io {

using nlohmann::json;

/// Polynomial Beltrami form for chart models: entry (row, conj_index) is a
/// polynomial in z, z̄ given as monomials.
struct ChartBeltrami {
  struct Monomial {
    Scalar coeff;
    std::vector<int> z;
    std::vector<int> zbar;
  };
  struct Entry {
    int row = 0;
    int conj_index = 0;
    std::vector<Monomial> poly;
  };
  int dim = 0;
  std::vector<Entry> entries;
  VectorForm<ChartPoly> build(const Model& model) const;
};

struct BeltramiFile {
  std::optional<BeltramiSeries> series;
  std::optional<ChartBeltrami> chart;
};

std::string read_file(const std::string& path);
json parse_json(const std::string& text, const std::string& what);

Model model_from_json(const json& j);
/// `dim` is the model dimension the file must match.
BeltramiFile beltrami_from_json(const json& j, int dim);
Form<Scalar> form_from_json(const json& j, int dim);

Model load_model(const std::string& path);
BeltramiFile load_beltrami(const std::string& path, int dim);
Form<Scalar> load_form(const std::string& path, int dim);

json form_to_json(const Form<Scalar>& f);
json model_to_json(const Model& m);
json series_to_json(const BeltramiSeries& s);

}  // namespace deformae::io
