#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GALCAS_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void golden(const std::string& name, const std::string& args) {
  const auto r = run(args);
  REQUIRE(r.code == 0);
  const auto path = std::filesystem::path(GOLDEN_DIR) / (name + ".json");
  if (std::getenv("GALCAS_UPDATE_GOLDEN")) std::ofstream(path, std::ios::binary) << r.out;
  CHECK(r.out == slurp(path));
}

}  // namespace

TEST_CASE("counts") {
  const auto a = run("count --l 5/2 --p 5 --q 0 --unextended");
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["N"] == 17);
  const auto b = run("count --l 1/2 --p 3 --q 0");
  REQUIRE(b.code == 0);
  const auto j = nlohmann::json::parse(b.out);
  CHECK(j["N"] == 3);
  CHECK(j["seed"] == 42);
  CHECK(j["trials"] == 3);
}

TEST_CASE("golden outputs") {
  golden("count_1_2_3_0", "count --l 1/2 --p 3 --q 0");
  golden("algebra_1_2_2_1", "algebra --l 1/2 --p 2 --q 1");
  golden("copy_1_2_3_0", "copy --l 1/2 --p 3 --q 0");
  golden("casimir_1_2_3_0", "casimir --l 1/2 --p 3 --q 0 --seed 7");
  // the quadratic and quartic solutions of the worked example
  golden("reduce_3_2_3_0_r4", "reduce --l 3/2 --p 3 --q 0 --rmax 4 --ansatz");
}

TEST_CASE("same seed, same bytes") {
  for (const char* args : {"count --l 3/2 --p 2 --q 2 --seed 11", "casimir --l 1/2 --p 2 --q 1 --det-identity",
                           "reduce --l 1/2 --p 3 --q 0 --rmax 4", "tables --which 3"}) {
    const auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("tables") {
  const auto r = run("tables --which 2 --lmax 5/2 --dmax 6");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["cells"].size() == 8);
  for (const auto& c : j["cells"]) {
    CHECK(c["printed_match"] == true);
    if (c.contains("formula_match")) CHECK(c["formula_match"] == true);
  }
  const auto t = run("tables --which 1 --lmax 3/2 --dmax 5 --format text");
  CHECK(t.code == 0);
  CHECK(t.out.find("all cells match") != std::string::npos);
}

TEST_CASE("text format and output file") {
  const auto path = std::filesystem::temp_directory_path() / "galcas_cli_io_test.json";
  std::filesystem::remove(path);
  const auto r = run("count --l 3/2 --p 3 --unextended --out " + path.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(path))["N"] == 6);
  std::filesystem::remove(path);
  const auto t = run("count --l 3/2 --p 3 --unextended --format text");
  CHECK(t.out.find("N 6") != std::string::npos);
}

TEST_CASE("parameter errors exit with 2") {
  CHECK(run("count --l 3/4 --p 3").code == 2);
  CHECK(run("count --l 1.5 --p 3").code == 2);
  CHECK(run("count --l 1/2 --p 1 --q 1").code == 2);
  CHECK(run("frobnicate --l 1/2 --p 3").code == 2);
  CHECK(run("count --p 3").code == 2);
  CHECK(run("count --l 1/2 --p 3 --format xml").code == 2);
  CHECK(run("count --l 1/2 --p 3 --trials 0").code == 2);
  CHECK(run("copy --l 1/2 --p 3 --unextended").code == 2);
  CHECK(run("tables --which 4").code == 2);
  CHECK(run("verify --criterion 11").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("verify runs a single criterion") {
  const auto r = run("verify --criterion 1");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["criteria"].size() == 1);
}
