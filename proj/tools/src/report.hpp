#pragma once

#include <string>
#include <vector>

#include "deformae/cohomology.hpp"
#include "io.hpp"

namespace deformae::cli {

using nlohmann::json;

/// Machine-readable result of one command. `body()` is deterministic: it
/// depends only on the inputs and flags.
struct Report {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> text;  // human-readable lines
  int exit_code = 0;
  std::optional<json> error;

  void add_input(const std::string& role, const std::string& path);
  void warn(const std::string& w);
  void line(const std::string& s) { text.push_back(s); }
  void fail(const Error& e);
  json body() const;
};

std::string sha256_hex(const std::string& data);
std::string error_kind_name(ErrorKind k);

/// Writes the JSON body to `path` and a sidecar `<path>.meta.json` holding the
/// generation time and the body's hash.
void write_report(const Report& r, const std::string& path);
std::string render_text(const Report& r);

json hodge_json(const HodgeTable& h);
std::string hodge_text(const HodgeTable& h);

}  // namespace deformae::cli
