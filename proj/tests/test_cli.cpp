// Drives the installed binary end to end through a shell, checking the
// documented exit codes and file outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path g_dir = fs::temp_directory_path() / "salemca_cli_test";

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SALEMCA_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string path_arg(const char* name) { return (g_dir / name).string(); }

struct DirGuard {
  DirGuard() {
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);
  }
} g_guard;

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("counts --rule nope --steps 3") == 2);
  CHECK(run_cli("counts --rule F:1") == 2);  // missing --steps
  CHECK(run_cli("pattern --rule F:1") == 2);
  CHECK(run_cli("pattern --rule G:3 --step 2") == 2);  // missing slice spec
  CHECK(run_cli("screen --lattice sq --kmax 4") == 2);  // missing --dim
  CHECK(run_cli("screen --lattice cube --dim 2 --kmax 4") == 2);
  CHECK(run_cli("salem --alpha abc --k 4") == 2);
  CHECK(run_cli("salem --alpha 1/2 --k 4") == 2);  // excluded parameter
  CHECK(run_cli("salem --alpha 1/0 --k 4") == 2);
}

TEST_CASE("threaded runs write identical files") {
  const std::string a = path_arg("t1.csv");
  const std::string b = path_arg("t4.csv");
  REQUIRE(run_cli("counts --rule G:2 --steps 40 --threads 1 --out " + a) == 0);
  REQUIRE(run_cli("counts --rule G:2 --steps 40 --threads 4 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
}

TEST_CASE("counts command") {
  const std::string out = path_arg("counts.csv");
  REQUIRE(run_cli("counts --rule F:1 --steps 21 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("n,num,cum\n") == 0);
  CHECK(text.find("\n21,8,111\n") != std::string::npos);
  CHECK(fs::exists(out + ".meta.json"));

  const std::string again = path_arg("counts2.csv");
  REQUIRE(run_cli("counts --rule F:1 --steps 21 --out " + again) == 0);
  CHECK(slurp(out) == slurp(again));
}

TEST_CASE("zero rule counts") {
  const std::string out = path_arg("zero.csv");
  REQUIRE(run_cli("counts --rule sq:2:000 --steps 4 --out " + out) == 0);
  CHECK(slurp(out) == "n,num,cum\n0,1,1\n1,0,1\n2,0,1\n3,0,1\n4,0,1\n");
}

TEST_CASE("fsample equals salem for the matched corner rule") {
  const std::string a = path_arg("g2.csv");
  const std::string b = path_arg("l5.csv");
  REQUIRE(run_cli("fsample --rule G:2 --k 6 --out " + a) == 0);
  REQUIRE(run_cli("salem --alpha 1/5 --k 6 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).find("x_num,x_den,f_num,f_den\n0,64,0,1\n") == 0);
}

TEST_CASE("classification and screening files") {
  const std::string out = path_arg("h3.json");
  REQUIRE(run_cli("classify --rule hex:H3 --kmax 6 --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"verdict\": \"match\"") != std::string::npos);
  CHECK(text.find("\"den\": \"4\"") != std::string::npos);

  const std::string screen = path_arg("tri.json");
  REQUIRE(run_cli("screen --lattice tri --kmax 4 --out " + screen) == 0);
  const std::string stext = slurp(screen);
  std::size_t rules = 0;
  for (std::size_t pos = 0; (pos = stext.find("\"rule\"", pos)) != std::string::npos; ++pos) ++rules;
  CHECK(rules == 14);
  CHECK(stext.find("\"match\"") == std::string::npos);
}

TEST_CASE("pattern export") {
  const std::string out = path_arg("p0.pbm");
  REQUIRE(run_cli("pattern --rule F:1 --step 0 --out " + out) == 0);
  CHECK(slurp(out) == "P1\n1 1\n1\n");

  const std::string plus = path_arg("plus.pbm");
  REQUIRE(run_cli("pattern --rule F:2 --step 1 --out " + plus) == 0);
  CHECK(slurp(plus) == "P1\n3 3\n010\n101\n010\n");

  const std::string prefix = (g_dir / "seq").string();
  REQUIRE(run_cli("pattern --rule F:1 --range 0:2 --out-prefix " + prefix) == 0);
  CHECK(fs::exists(g_dir / "seq_0000.pbm"));
  CHECK(fs::exists(g_dir / "seq_0001.pbm"));
  CHECK(fs::exists(g_dir / "seq_0002.pbm"));

  const std::string hexed = path_arg("hex.pbm");
  REQUIRE(run_cli("pattern --rule hex:H3 --step 2 --offset-rows --out " + hexed) == 0);
  CHECK(slurp(hexed).rfind("P1\n", 0) == 0);
  CHECK(run_cli("pattern --rule F:1 --step 1 --offset-rows --out " + hexed) == 2);

  const std::string slice = path_arg("slice.pbm");
  REQUIRE(run_cli("pattern --rule G:3 --step 1 --axes 0,1 --fixed 1 --out " + slice) == 0);
  CHECK(slurp(slice) == "P1\n3 3\n101\n000\n101\n");
}

TEST_CASE("simulate prints the series") {
  const std::string out = path_arg("sim.txt");
  const std::string cmd = std::string(SALEMCA_CLI_PATH) + " simulate --rule F:1 --steps 5 > " + out;
  REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(slurp(out) == "n,num,cum\n0,1,1\n1,2,3\n2,2,5\n3,4,9\n4,2,11\n5,4,15\n");
}

TEST_CASE("verify suites and failure exit codes") {
  CHECK(run_cli("verify --suite takahashi --dim 2 --steps 16") == 0);
  CHECK(run_cli("verify --suite salem-equality --dim 1 --kmax 6") == 0);
  CHECK(run_cli("verify --suite salem-equality --rule hex:H2 --kmax 6") == 0);
  CHECK(run_cli("verify --suite closedform --rule G:2 --steps 64") == 0);
  CHECK(run_cli("verify --suite closedform --rule sq:2:110 --steps 8") == 2);  // no closed form
  CHECK(run_cli("verify --suite nonsense") == 2);
}

TEST_CASE("function sampling works for rules without closed forms") {
  const std::string out = path_arg("r2.csv");
  REQUIRE(run_cli("fsample --rule tri:R2 --k 3 --out " + out) == 0);
  // cum over the first 8 steps of the edge rule: 1,4,11,20,27,48,73,100
  CHECK(slurp(out).find("4,8,1,5\n") != std::string::npos);  // f(1/2) = 20/100
}

TEST_CASE("memory cap exit code") {
  CHECK(run_cli("counts --rule F:2 --steps 400 --mem-cap 10000 --out " + path_arg("c.csv")) == 3);
  CHECK(run_cli("pattern --rule F:2 --step 100000 --mem-cap 100000 --out " + path_arg("p.pbm")) == 3);
}
