#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(OPALG_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("nf") {
  Run a = run("nf '[x y]' --dt derivation");
  CHECK(a.code == 0);
  CHECK(a.out == "[x] y + x [y]\n");
  CHECK(run("nf 'x y' --dt derivation").out == "x y\n");
  CHECK(run("nf 'u [v] [w]' --rbt average").out == "u [v [w]]\n");
  CHECK(run("nf '[x y] [u v]' --dt derivation --step-cap 1").code == 2);
  CHECK(run("nf '[x y' --dt derivation").code == 1);
  CHECK(run("nf '[x y]' --dt 'x x'").code == 1);
  CHECK(run("nf '[x y]'").code == 1);
  Run t = run("nf '[x y]' --dt derivation --trace");
  CHECK(t.out.find("normal form after 1 steps") != std::string::npos);
}

TEST_CASE("verify") {
  CHECK(run("verify --type dt 'b*(x [y] + [x] y) + c*[x] [y] + e*x y' --constraint 'b^2 - b - c*e'").code == 0);
  Run r = run("verify --type dt 'y [x]'");
  CHECK(r.code == 3);
  CHECK(r.out.find("(u v - v u) [u]") != std::string::npos);
  CHECK(run("verify --type rbt 'x [y] + [x] y - [x y]'").code == 0);
  CHECK(run("verify --type dt 'x x'").code == 3);
}

TEST_CASE("classify") {
  Run r = run("classify --type dt --degree 0");
  CHECK(r.code == 0);
  CHECK(r.out.find("mismatches: 0") != std::string::npos);
  CHECK(run("classify --type rbt --degree 2 --units").code == 5);
  CHECK(run("classify --type dt --degree 1 --budget 1").code == 5);
}

TEST_CASE("gsb and irr") {
  CHECK(run("gsb --dt derivation --bound 2,2").code == 0);
  Run bad = run("gsb --dt 'y [x]' --bound 3,2");
  CHECK(bad.code == 3);
  CHECK(bad.out.find("intersection at") != std::string::npos);
  Run irr = run("irr --dt derivation --gens z --bound 2,2");
  CHECK(irr.code == 0);
  CHECK(irr.out.find("31 words") != std::string::npos);
  CHECK(irr.out.find("z^(1) z^(2)") != std::string::npos);
  CHECK(run("gsb --dt derivation --bound 2").code == 1);
  CHECK(run("gsb --dt derivation --bound 0,2").code == 1);
}

TEST_CASE("structured output") {
  for (const char* args : {"nf '[x y]' --dt derivation --trace", "verify --type dt 'y [x]'", "classify --type dt --degree 1",
                           "gsb --dt derivation --bound 2,2", "irr --dt derivation --gens z --bound 2,2"}) {
    std::string a = std::string(args) + " --format json";
    Run r1 = run(a), r2 = run(a);
    CHECK(r1.out == r2.out);
    auto j = nlohmann::json::parse(r1.out);
    CHECK(j["schema"] == "opalg-report/1");
  }
  auto j = nlohmann::json::parse(run("classify --type dt --degree 1 --format json").out);
  CHECK(j["mismatches"] == 0);
  CHECK(j["ok"] == true);
  CHECK(!j["constraints"]["equations"].empty());
  CHECK(j["constraints"]["equations"][0].contains("monomial"));
}

TEST_CASE("flags") {
  CHECK(run("--help").code == 0);
  CHECK(run("nf '[x y]' --dt derivation --bogus").code == 1);
  CHECK(run("nf '[x y]' --dt derivation --format yaml").code == 1);
  CHECK(run("nf '[x y]' --dt derivation --strategy sideways").code == 1);
  CHECK(run("nf '[x y]' --dt derivation --strategy li").code == 0);
  CHECK(run("gsb --dt derivation --bound 2,2 --order deglenlex").code != 1);
  CHECK(run("gsb --dt derivation --bound 2,2 --order nope").code == 1);
  CHECK(run("").code == 1);
}
