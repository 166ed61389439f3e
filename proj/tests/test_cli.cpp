#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"

using namespace deformae;
using namespace deformae::cli;

namespace {

std::string data(const std::string& rel) { return std::string(DEFORMAE_DATA_DIR) + "/" + rel; }
std::string model(const std::string& name) { return data("models/" + name + ".json"); }
std::string family(const std::string& name) { return data("beltrami/" + name + ".json"); }
std::string form(const std::string& name) { return data("forms/" + name + ".json"); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int shell(const std::string& args, const std::string& out) {
  const std::string cmd = std::string(DEFORMAE_CLI_PATH) + " " + args + " > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST(Cli, Validate) {
  EXPECT_EQ(cmd_validate(model("torus3")).exit_code, 0);
  EXPECT_EQ(cmd_validate(model("iwasawa")).exit_code, 0);
  const Report broken = cmd_validate(model("broken"));
  EXPECT_EQ(broken.exit_code, 2);
  EXPECT_NE(broken.error->at("message").get<std::string>().find("d(d("), std::string::npos);

  const auto tmp = std::filesystem::temp_directory_path() / "deformae_bad_model.json";
  std::ofstream(tmp) << "{\"name\": \"x\", \"dim\": 2, \"structure\": {\"1\": [{\"coeff\": \"0.5\", \"factors\": [1, 2]}]}}";
  EXPECT_EQ(cmd_validate(tmp.string()).exit_code, 1);
  std::ofstream(tmp) << "{\"name\": ";
  EXPECT_EQ(cmd_validate(tmp.string()).exit_code, 1);
  EXPECT_EQ(cmd_validate(data("models/missing.json")).exit_code, 1);
}

TEST(Cli, Hodge) {
  const Report t = cmd_hodge({model("torus3"), std::nullopt, std::nullopt});
  ASSERT_EQ(t.exit_code, 0);
  EXPECT_EQ(t.results["central"]["h"][1][2], 9);
  EXPECT_EQ(t.results["central"]["caveat"], kInvariantCaveat);

  const Report d = cmd_hodge({model("iwasawa"), family("iwasawa-theta1"), "1/10"});
  ASSERT_EQ(d.exit_code, 0);
  EXPECT_EQ(d.results["central"]["h"][1][0], 3);
  EXPECT_EQ(d.results["central"]["h"][0][1], 2);
  EXPECT_EQ(d.results["deformed"]["h"][1][0], 2);
  EXPECT_EQ(d.results["deformed"]["caveat"], kInvariantCaveat);
  EXPECT_FALSE(d.results["changes"].empty());

  EXPECT_EQ(cmd_hodge({model("iwasawa"), family("iwasawa-theta1"), "0.1"}).exit_code, 1);
  EXPECT_EQ(cmd_hodge({model("kodaira-thurston"), family("kt-nonintegrable"), "1/10"}).exit_code, 4);
}

TEST(Cli, Classify) {
  const Report t = cmd_classify({model("torus2"), std::nullopt, std::nullopt});
  EXPECT_EQ(t.exit_code, 0);
  EXPECT_TRUE(t.results["all_in_B"].get<bool>());
  EXPECT_TRUE(t.results["ddbar_lemma"]["holds"].get<bool>());
  const Report i = cmd_classify({model("iwasawa"), 2, 0});
  ASSERT_EQ(i.results["classes"].size(), 1u);
  EXPECT_FALSE(i.results["classes"][0]["in_E"].get<bool>());
  EXPECT_TRUE(i.results["classes"][0].contains("witness_E"));
}

TEST(Cli, ExtendExitCodes) {
  EXPECT_EQ(cmd_extend({model("torus1"), family("torus1-c"), form("w1-n1"), "p0", 6}).exit_code, 0);
  EXPECT_EQ(cmd_extend({model("iwasawa"), family("iwasawa-theta1"), form("w1-n3"), "p0", 6}).exit_code, 0);
  const Report fail = cmd_extend({model("iwasawa"), family("iwasawa-theta1"), form("w3-n3"), "p0", 6});
  EXPECT_EQ(fail.exit_code, 3);
  EXPECT_NE(fail.error->at("message").get<std::string>().find("E^{2,0}"), std::string::npos);
  EXPECT_EQ(cmd_extend({model("iwasawa"), family("iwasawa-theta1"), form("wbar1-n3"), "0q", 6}).exit_code, 0);
  EXPECT_EQ(cmd_extend({model("iwasawa"), family("iwasawa-theta1"), form("wbar3-n3"), "0q", 6}).exit_code, 2);
  EXPECT_EQ(cmd_extend({model("iwasawa"), family("iwasawa-theta1"), form("wbar1-n3"), "p0", 6}).exit_code, 2);
}

TEST(Cli, Verify) {
  const Report t = cmd_verify({model("torus3"), family("torus3-mixed"), 200, 1});
  EXPECT_EQ(t.exit_code, 0);
  EXPECT_TRUE(t.results["pass"].get<bool>());
  EXPECT_EQ(cmd_verify({model("iwasawa"), family("iwasawa-kuranishi"), 200, 3}).exit_code, 0);
  const Report bad = cmd_verify({model("kodaira-thurston"), family("kt-nonintegrable"), 50, 1});
  EXPECT_EQ(bad.exit_code, 4);
  EXPECT_FALSE(bad.results["integrability"]["integrable"].get<bool>());
  EXPECT_TRUE(bad.results["integrability"]["agree"].get<bool>());
  EXPECT_EQ(cmd_verify({model("chart1"), family("chart1-linear"), 1, 1}).exit_code, 0);
  EXPECT_EQ(cmd_verify({model("chart1"), family("torus1-c"), 1, 1}).exit_code, 2);
}

TEST(Cli, ScanGating) {
  const Report t = cmd_scan({model("torus3"), family("torus3-mixed"), "1/10,1/3+1/4i", "invariant"});
  EXPECT_EQ(t.exit_code, 0);
  const Report s = cmd_scan({model("solvable-b"), family("solvable-b-family"), "1/10,1/5", "report"});
  EXPECT_EQ(s.exit_code, 0);
  for (const auto& row : s.results["rows"]) {
    EXPECT_TRUE(row["theorem_applies"].get<bool>());
    EXPECT_EQ(row["status"], "constant");
  }
  const Report i = cmd_scan({model("iwasawa"), family("iwasawa-theta1"), "1/10,1/5", "report"});
  EXPECT_EQ(i.exit_code, 0);
  EXPECT_TRUE(i.results["jumps"].get<bool>());
  EXPECT_EQ(i.results["rows"][0]["status"], "jump");
  EXPECT_EQ(cmd_scan({model("iwasawa"), family("iwasawa-theta1"), "1/10", "invariant"}).exit_code, 3);
  EXPECT_EQ(cmd_scan({model("iwasawa"), family("iwasawa-theta1"), "1/10,0.2", "report"}).exit_code, 1);
}

TEST(Cli, DeterministicBodies) {
  const auto a = cmd_verify({model("iwasawa"), family("iwasawa-kuranishi"), 40, 9}).body().dump();
  const auto b = cmd_verify({model("iwasawa"), family("iwasawa-kuranishi"), 40, 9}).body().dump();
  EXPECT_EQ(a, b);
  const auto c = cmd_scan({model("iwasawa"), family("iwasawa-kuranishi"), "1/10,1/5,1/7", "report"}).body().dump();
  const auto d = cmd_scan({model("iwasawa"), family("iwasawa-kuranishi"), "1/10,1/5,1/7", "report"}).body().dump();
  EXPECT_EQ(c, d);
}

TEST(Cli, BinaryOutAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string out = (dir / "deformae_cli_report.json").string();
  const std::string stdout_path = (dir / "deformae_cli_stdout.json").string();
  const int code = shell("hodge " + model("iwasawa") + " --json --out " + out, stdout_path);
  EXPECT_EQ(code, 0);
  EXPECT_EQ(slurp(out), slurp(stdout_path));
  const auto meta = nlohmann::json::parse(slurp(out + ".meta.json"));
  EXPECT_TRUE(meta.contains("generated_at"));
  EXPECT_EQ(meta["body_sha256"], sha256_hex(slurp(out)));
  EXPECT_EQ(shell("extend " + model("iwasawa") + " --beltrami " + family("iwasawa-theta1") + " --form " +
                      form("w3-n3"),
                  stdout_path),
            3);
  EXPECT_EQ(shell("frobnicate", stdout_path), 1);
}

TEST(Cli, Sha256) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
