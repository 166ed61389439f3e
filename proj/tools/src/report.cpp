#include "report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace deformae::cli {

void Report::add_input(const std::string& role, const std::string& path) {
  inputs[role] = {{"path", path}, {"sha256", sha256_hex(io::read_file(path))}};
}

void Report::warn(const std::string& w) {
  for (const auto& x : warnings) {
    if (x == w) return;
  }
  warnings.push_back(w);
}

void Report::fail(const Error& e) {
  exit_code = e.exit_code();
  error = json{{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
  line(std::string("error: ") + e.what());
}

json Report::body() const {
  json out = {{"command", command},
              {"inputs", inputs},
              {"results", results},
              {"warnings", warnings},
              {"exact_arithmetic", true},
              {"exit_code", exit_code}};
  if (error) out["error"] = *error;
  return out;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, data.data(), data.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return ss.str();
}

std::string error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Obstruction: return "obstruction";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::OrderMismatch: return "order_mismatch";
    case ErrorKind::NotInvertible: return "not_invertible";
    case ErrorKind::ModelMismatch: return "model_mismatch";
    case ErrorKind::Bidegree: return "bidegree";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Integrability: return "integrability";
    case ErrorKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

void write_report(const Report& r, const std::string& path) {
  const std::string body = r.body().dump(2) + "\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Validation, "cannot write " + path);
  out << body;

  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream stamp;
  stamp << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  json meta = {{"generated_at", stamp.str()}, {"body_sha256", sha256_hex(body)}, {"report", path}};
  std::ofstream side(path + ".meta.json", std::ios::binary);
  side << meta.dump(2) << "\n";
}

std::string render_text(const Report& r) {
  std::ostringstream ss;
  ss << "deformae " << r.command << "\n";
  for (const auto& l : r.text) ss << l << "\n";
  for (const auto& w : r.warnings) ss << "warning: " << w << "\n";
  ss << "exit " << r.exit_code << "\n";
  return ss.str();
}

json hodge_json(const HodgeTable& h) {
  return {{"at", h.at}, {"h", h.h}, {"caveat", kInvariantCaveat}};
}

std::string hodge_text(const HodgeTable& h) {
  std::ostringstream ss;
  ss << "h^{p,q} at " << h.at << " (rows p, columns q)\n";
  for (int p = 0; p <= h.n; ++p) {
    ss << "  ";
    for (int q = 0; q <= h.n; ++q) ss << std::setw(3) << h.h[p][q];
    ss << "\n";
  }
  ss << "  " << kInvariantCaveat;
  return ss.str();
}

}  // namespace deformae::cli
