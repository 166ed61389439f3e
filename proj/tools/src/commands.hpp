#pragma once

#include <optional>
#include <string>
#include <vector>

#include "report.hpp"

namespace deformae::cli {

struct HodgeOptions {
  std::string model;
  std::optional<std::string> beltrami;
  std::optional<std::string> t;
};

struct ClassifyOptions {
  std::string model;
  std::optional<int> p;
  std::optional<int> q;
};

struct ExtendOptions {
  std::string model;
  std::string beltrami;
  std::string form;
  std::string kind = "p0";
  int order = kDefaultOrder;
};

struct VerifyOptions {
  std::string model;
  std::string beltrami;
  int samples = 200;
  unsigned long seed = 1;
};

struct ScanOptions {
  std::string model;
  std::string beltrami;
  std::string t_values = "1/10,1/5,1/10+1/7i";
  std::string expect = "report";
};

Report cmd_validate(const std::string& model_path);
Report cmd_hodge(const HodgeOptions& o);
Report cmd_classify(const ClassifyOptions& o);
Report cmd_extend(const ExtendOptions& o);
Report cmd_verify(const VerifyOptions& o);
Report cmd_scan(const ScanOptions& o);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv);

/// Parses a comma-separated list of exact parameter values.
std::vector<Scalar> parse_t_values(const std::string& list);

}  // namespace deformae::cli
