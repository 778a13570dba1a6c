#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int status = -1;
  std::string out;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + K3LAT_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST_CASE("lattice info") {
  const auto r = run("lattice info 'U + A(1)'");
  CHECK(r.status == 0);
  CHECK(r.out == R"x({"rank":3,"signature":[1,2],"det":2,"disc_group":[2],"disc_form":"w(2,1,-1)"})x"
                 "\n");
}

TEST_CASE("lattice isotropic") {
  const auto a = run("lattice isotropic '[[2,1],[1,-2]]'").json();
  CHECK(a["verdict"] == "Anisotropic");
  const auto b = run("lattice isotropic '<2> + A1 + A2'").json();
  CHECK(b["verdict"] == "Isotropic");
  CHECK(b["witness"] == nlohmann::json::array({1, 1, 0, 0}));
  const auto c = run("lattice isotropic 'U + E8' --bound 1").json();
  CHECK(c["bound"] == 1);
  const auto d = run("lattice isotropic 'U + E8'", "K3LAT_BOUND=2").json();
  CHECK(d["bound"] == 2);
}

TEST_CASE("qform commands") {
  const auto iso = run("qform iso 'u(1)' 'w(2,1,1)|w(2,1,1)'");
  CHECK(iso.status == 0);
  CHECK(iso.json()["isomorphic"] == false);
  const auto sig = run("qform sig 'w(3,1,1)'").json();
  CHECK(sig["sigma_formula"] == 6);
  CHECK(sig["sigma_gauss"] == 6);
  const auto en = run("qform enumerate 3 4").json();
  REQUIRE(en["classes"].size() == 1);
  CHECK(en["classes"][0]["form"] == "w(2,2,-1)");
}

TEST_CASE("nikulin check") {
  const auto j = run("nikulin check triv 1 17").json();
  CHECK(j["exists"] == true);
  CHECK(j["uniqueness"] == "Unique");
}

TEST_CASE("singularity commands") {
  const auto p = run("sing poincare 1/3,1/4,1/4,1/6").json();
  CHECK(p["series"]["2"] == 8);
  CHECK(p["series"]["3/2"] == 5);
  CHECK(p["mu"] == 90);
  const auto s = run("sing seifert 4,3,3,2@12").json();
  CHECK(s["rank"] == 90);
  CHECK(s["det"] == 1);
  const auto c = run("sing charpoly 1/3,1/4,1/4,1/6").json();
  CHECK(c["degree"] == 90);
  const auto n = run("sing newton 1/3,1/4,1/4,1/6").json();
  CHECK(n["l_edges"] == 11);
  CHECK(n["vertices"].size() == 4);
}

TEST_CASE("verify subcommands") {
  const auto c2 = run("verify c2");
  CHECK(c2.status == 0);
  CHECK(c2.json()["summary"]["passed"] == 3);

  const auto prime = run("verify tables --table prime");
  CHECK(prime.status == 0);
  CHECK(prime.json()["summary"]["failed"] == 0);

  const auto prop = run("verify propdefn --labeling e1-branch");
  CHECK(prop.status == 0);

  const auto ell = run("verify elliptic --table prime --jobs 2");
  CHECK(ell.status == 0);
}

TEST_CASE("verify c2 with a weights file") {
  const auto dir = std::filesystem::temp_directory_path() / "k3lat_cli_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "good.txt") << "w=1/3,1/4,1/4,1/6 rho=12\nw=1/4,1/4,1/4,1/4\n";
    std::ofstream(dir / "wrong.txt") << "w=1/3,1/4,1/4,1/6 rho=11\n";
    std::ofstream(dir / "bad.txt") << "w=1/0,1/4,1/4,1/6 rho=12\n";
  }
  const auto good = run("verify c2 --data " + (dir / "good.txt").string());
  CHECK(good.status == 0);
  CHECK(good.json()["summary"]["skipped"] == 1);
  CHECK(run("verify c2", "K3LAT_DATA=" + (dir / "wrong.txt").string()).status == 1);
  CHECK(run("verify c2 --data " + (dir / "bad.txt").string()).status == 2);
  std::filesystem::remove_all(dir);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("lattice info 'U('").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("qform sig 'w(4,1,1)'").status == 2);
  CHECK(run("lattice isotropic U --bound x").status == 2);
}

TEST_CASE("output is deterministic") {
  const auto a = run("verify tables --table lpqr --jobs 4");
  const auto b = run("verify tables --table lpqr --jobs 1");
  CHECK(a.out == b.out);
}
