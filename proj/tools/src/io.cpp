#include "io.hpp"

#include <fstream>
#include <sstream>

namespace deformae::io {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where + ": missing field '" + key + "'");
  return j.at(key);
}

int as_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where + ": expected an integer");
  return j.get<int>();
}

Scalar as_scalar(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) fail(where + ": coefficients must be exact strings such as \"1/2+3i\"");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const Error& e) {
    fail(where + ": " + e.what());
  }
}

std::vector<int> int_list(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where + ": expected a list of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(as_int(x, where));
  return out;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    fail(what + ": malformed JSON (" + e.what() + ")");
  }
}

Model model_from_json(const json& j) {
  try {
    const std::string name = field(j, "name", "model").get<std::string>();
    const int n = as_int(field(j, "dim", "model"), "model.dim");
    const std::string backend = j.value("backend", std::string("invariant"));
    if (backend == "chart") {
      return Model::chart(name, n, as_int(field(j, "maxdeg", "model"), "model.maxdeg"));
    }
    if (backend != "invariant") fail("model.backend must be \"invariant\" or \"chart\"");
    if (n < 1 || n > kMaxDim) throw Error(ErrorKind::Validation, "dimension must be in 1.." + std::to_string(kMaxDim));
    std::vector<Form<Scalar>> structure(n, Form<Scalar>(n));
    if (j.contains("structure")) {
      const json& st = j.at("structure");
      if (!st.is_object()) fail("model.structure must be an object keyed by generator index");
      for (const auto& [key, terms] : st.items()) {
        int i = 0;
        try {
          std::size_t used = 0;
          i = std::stoi(key, &used);
          if (used != key.size()) throw std::invalid_argument(key);
        } catch (const std::exception&) {
          fail("model.structure: key '" + key + "' is not a generator index");
        }
        if (i < 1 || i > n) throw Error(ErrorKind::Validation, "model.structure: generator " + key + " out of range");
        if (!terms.is_array()) fail("model.structure." + key + " must be a list of terms");
        for (const auto& t : terms) {
          const std::string where = "model.structure." + key;
          const Scalar c = as_scalar(field(t, "coeff", where), where);
          const std::vector<int> factors = int_list(field(t, "factors", where), where);
          for (int f : factors) {
            if (f == 0 || f > n || f < -n) throw Error(ErrorKind::Validation, where + ": factor index out of range");
          }
          auto [mask, sign] = normalize_factors(n, factors);
          if (sign != 0) structure[i - 1].add(mask, sign > 0 ? c : -c);
        }
      }
    }
    return Model::invariant(name, n, std::move(structure));
  } catch (const json::exception& e) {
    fail(std::string("model: ") + e.what());
  }
}

VectorForm<ChartPoly> ChartBeltrami::build(const Model& model) const {
  if (model.backend() != Backend::Chart) throw Error(ErrorKind::Validation, "polynomial Beltrami forms need a chart model");
  const int n = model.dim();
  VectorForm<ChartPoly> phi(n);
  for (const auto& e : entries) {
    ChartPoly c = model.chart_zero();
    for (const auto& m : e.poly) {
      std::array<int, kMaxPairs> z{}, zb{};
      for (int k = 0; k < n; ++k) {
        z[k] = m.z[k];
        zb[k] = m.zbar[k];
      }
      c += chart_term(m.coeff, z, zb, n, model.maxdeg());
    }
    phi.hol_row(e.row - 1).add(Mask{1} << (n + e.conj_index - 1), c);
  }
  return phi;
}

BeltramiFile beltrami_from_json(const json& j, int dim) {
  BeltramiFile out;
  try {
    if (j.value("chart", false)) {
      ChartBeltrami cb;
      cb.dim = dim;
      const json& entries = field(j, "entries", "beltrami");
      if (!entries.is_array()) fail("beltrami.entries must be a list");
      for (const auto& e : entries) {
        ChartBeltrami::Entry en;
        en.row = as_int(field(e, "row", "beltrami entry"), "beltrami entry row");
        en.conj_index = as_int(field(e, "conj_index", "beltrami entry"), "beltrami entry conj_index");
        if (en.row < 1 || en.row > dim || en.conj_index < 1 || en.conj_index > dim) {
          throw Error(ErrorKind::Validation, "beltrami entry index out of range");
        }
        for (const auto& m : field(e, "poly", "beltrami entry")) {
          ChartBeltrami::Monomial mono;
          mono.coeff = as_scalar(field(m, "coeff", "beltrami poly"), "beltrami poly");
          mono.z = m.contains("z") ? int_list(m.at("z"), "beltrami poly z") : std::vector<int>(dim, 0);
          mono.zbar = m.contains("zbar") ? int_list(m.at("zbar"), "beltrami poly zbar") : std::vector<int>(dim, 0);
          if (static_cast<int>(mono.z.size()) != dim || static_cast<int>(mono.zbar.size()) != dim) {
            throw Error(ErrorKind::Validation, "beltrami poly exponents must have one entry per coordinate");
          }
          for (int x : mono.z) {
            if (x < 0) throw Error(ErrorKind::Validation, "negative exponent");
          }
          for (int x : mono.zbar) {
            if (x < 0) throw Error(ErrorKind::Validation, "negative exponent");
          }
          en.poly.push_back(std::move(mono));
        }
        cb.entries.push_back(std::move(en));
      }
      out.chart = std::move(cb);
      return out;
    }
    BeltramiSeries s;
    s.dim = dim;
    s.order = j.contains("order") ? as_int(j.at("order"), "beltrami.order") : kDefaultOrder;
    if (s.order < 1) throw Error(ErrorKind::Validation, "beltrami.order must be positive");
    const json& terms = field(j, "terms", "beltrami");
    if (!terms.is_object()) fail("beltrami.terms must be an object keyed by power of t");
    for (const auto& [key, entries] : terms.items()) {
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        fail("beltrami.terms: key '" + key + "' is not a power of t");
      }
      if (k < 1) throw Error(ErrorKind::Validation, "beltrami.terms: powers start at 1");
      for (const auto& e : entries) {
        const int row = as_int(field(e, "row", "beltrami entry"), "beltrami entry row");
        const int ci = as_int(field(e, "conj_index", "beltrami entry"), "beltrami entry conj_index");
        if (row < 1 || row > dim || ci < 1 || ci > dim) throw Error(ErrorKind::Validation, "beltrami entry index out of range");
        s.add_entry(k, row, ci, as_scalar(field(e, "coeff", "beltrami entry"), "beltrami entry coeff"));
      }
    }
    out.series = std::move(s);
    return out;
  } catch (const json::exception& e) {
    fail(std::string("beltrami: ") + e.what());
  }
}

Form<Scalar> form_from_json(const json& j, int dim) {
  try {
    const std::vector<int> bd = int_list(field(j, "bidegree", "form"), "form.bidegree");
    if (bd.size() != 2) fail("form.bidegree must be [p, q]");
    if (bd[0] < 0 || bd[1] < 0 || bd[0] > dim || bd[1] > dim) throw Error(ErrorKind::Validation, "form.bidegree out of range");
    Form<Scalar> f(dim);
    for (const auto& t : field(j, "terms", "form")) {
      const Scalar c = as_scalar(field(t, "coeff", "form term"), "form term");
      Monomial m{int_list(field(t, "hol", "form term"), "form term hol"),
                 int_list(field(t, "antihol", "form term"), "form term antihol")};
      if (static_cast<int>(m.hol.size()) != bd[0] || static_cast<int>(m.antihol.size()) != bd[1]) {
        throw Error(ErrorKind::Validation, "form term does not match the declared bidegree");
      }
      std::vector<int> factors = m.hol;
      for (int a : m.antihol) factors.push_back(-a);
      for (int x : factors) {
        if (x == 0 || x > dim || x < -dim) throw Error(ErrorKind::Validation, "form term index out of range");
      }
      auto [mask, sign] = normalize_factors(dim, factors);
      if (sign != 0) f.add(mask, sign > 0 ? c : -c);
    }
    return f;
  } catch (const json::exception& e) {
    fail(std::string("form: ") + e.what());
  }
}

Model load_model(const std::string& path) { return model_from_json(parse_json(read_file(path), path)); }

BeltramiFile load_beltrami(const std::string& path, int dim) {
  return beltrami_from_json(parse_json(read_file(path), path), dim);
}

Form<Scalar> load_form(const std::string& path, int dim) { return form_from_json(parse_json(read_file(path), path), dim); }

json form_to_json(const Form<Scalar>& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms()) {
    Monomial mono = monomial_of(f.dim(), m);
    terms.push_back({{"coeff", c.str()}, {"hol", mono.hol}, {"antihol", mono.antihol}});
  }
  json out = {{"terms", terms}, {"text", form_str(f)}};
  if (auto bd = f.bidegree()) out["bidegree"] = {bd->p, bd->q};
  return out;
}

json model_to_json(const Model& m) {
  json out = {{"name", m.name()}, {"dim", m.dim()},
              {"backend", m.backend() == Backend::Chart ? "chart" : "invariant"}};
  if (m.backend() == Backend::Chart) {
    out["maxdeg"] = m.maxdeg();
  } else {
    json st = json::object();
    for (int i = 0; i < m.dim(); ++i) st[std::to_string(i + 1)] = form_str(m.d_generator(i));
    out["structure"] = st;
  }
  return out;
}

json series_to_json(const BeltramiSeries& s) {
  json terms = json::object();
  for (const auto& [k, phik] : s.terms) {
    json rows = json::object();
    for (int i = 0; i < s.dim; ++i) {
      if (!phik.hol_row(i).is_zero()) rows[std::to_string(i + 1)] = form_str(phik.hol_row(i));
    }
    terms[std::to_string(k)] = rows;
  }
  return {{"order", s.order}, {"terms", terms}};
}

}  // namespace deformae::io
