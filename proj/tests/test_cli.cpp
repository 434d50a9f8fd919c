#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run cli(const std::string& args) {
  std::string cmd = std::string(ANNULUS_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int st = pclose(f);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string data(const std::string& rel) { return std::string(ANNULUS_DATA_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("cli vertical fusion") {
  Run r = cli("fuse-vertical -p 5 \"RFr(x=1;r=2)\" \"FrR(z=3;r=2)\"");
  CHECK(r.status == 0);
  for (const char* t : {"RR(a=0,x=4)", "RR(a=1,x=2)", "RR(a=2,x=0)", "RR(a=3,x=3)", "RR(a=4,x=1)"})
    CHECK(r.out.find(t) != std::string::npos);
}

TEST_CASE("cli output is byte identical across runs") {
  std::string args = "associator -p 3 R Fq:1 R --format json";
  Run a = cli(args), b = cli(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli decompose reads p from the document") {
  Run r = cli("decompose " + data("structures/vertical_identity.json"));
  CHECK(r.status == 0);
  CHECK(r.out.find("XkXk(a=0,x=0;k=1)") != std::string::npos);
  Run j = cli("decompose --format json " + data("structures/vertical_identity.json"));
  CHECK(j.out.find("\"multiplicity\": 1") != std::string::npos);
}

TEST_CASE("cli golden comparison") {
  CHECK(cli("associator -p 2 --table --golden " + data("associator_golden.json")).status == 0);
  CHECK(cli("table associator -p 2 --golden " + data("associator_golden.json")).status == 0);
  auto bad = std::filesystem::temp_directory_path() / "annulus_empty_golden.json";
  std::ofstream(bad) << R"({"entries": []})";
  CHECK(cli("associator -p 2 --table --golden " + bad.string()).status == 9);
  std::filesystem::remove(bad);
}

TEST_CASE("cli lattice patch") {
  Run r = cli("lw " + data("patches/defect_line.json") + " --format json");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"ground_space_dim\": 1") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(cli("fuse-vertical -p 4 \"TT(a=0,b=0)\" \"TT(a=0,b=0)\"").status == 1);
  CHECK(cli("fuse-vertical -p 3 \"QQ\" \"TT(a=0,b=0)\"").status == 2);
  CHECK(cli("fuse-vertical -p 3 \"TL(x=0)\" \"RR(a=0,x=0)\"").status == 3);
  CHECK(cli("decompose /nonexistent/structure.json").status == 7);
  CHECK(cli("").status == 10);
  CHECK(cli("frobnicate").status == 10);
}
