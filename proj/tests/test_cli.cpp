#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "varietas/report.hpp"

using namespace varietas;

namespace {

struct Result {
  int status;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(VARIETAS_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return std::string(VARIETAS_FIXTURES) + "/" + name; }

bool has(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, DimTable) {
  auto r = run("dim " + fx("as3.var") + " --max-degree 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "dims: 1 2 4 1 1")) << r.out;
  EXPECT_EQ(run("dim " + fx("as3.var") + " --max-degree 5 --expect \"1 2 4 1 2\"").status, 1);
  EXPECT_EQ(run("dim " + fx("as3.var") + " --max-degree 5 --expect \"1 2 4 1 1\"").status, 0);
}

TEST(Cli, KoszulResidual) {
  auto r = run("koszul " + fx("as3.var") + " " + fx("dual-as3.var") + " -N 5");
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(has(r.out, "residual: 0 0 0 0 1/5")) << r.out;
  EXPECT_TRUE(has(r.out, "reverse residual: 0 0 0 0 1/5")) << r.out;
  EXPECT_TRUE(has(r.out, "H: -1 1 -2/3 1/24 -1/120")) << r.out;
  auto a = run("koszul " + fx("assoc.var") + " " + fx("assoc.var") + " -N 5");
  EXPECT_EQ(a.status, 0);
  EXPECT_TRUE(has(a.out, "residual: 0 0 0 0 0")) << a.out;
}

TEST(Cli, DerivedNilpotent) {
  auto r = run("derived " + fx("as3.var") + " --sign minus --degree 4 --generators " + fx("lie-nilp4.ids"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "at degree 4: equal")) << r.out;
  auto j = run("derived " + fx("as3.var") + " --sign plus --degree 4 --generators " + fx("as3-jordan.ids"));
  EXPECT_EQ(j.status, 1);
  EXPECT_TRUE(has(j.out, "at degree 4: strictly-contained")) << j.out;
}

TEST(Cli, DerivedWithoutGeneratorsListsKernel) {
  auto r = run("derived " + fx("as3.var") + " --sign minus --degree 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "identity 1: [a,b] + [b,a]")) << r.out;
}

TEST(Cli, Dual) {
  auto r = run("dual " + fx("as3.var") + " --expect " + fx("dual-as3.var"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "basis: abc acb bac bca")) << r.out;
  EXPECT_TRUE(has(r.out, "rewrite cab: abc - acb + bac")) << r.out;
  EXPECT_EQ(run("dual " + fx("as3.var") + " --basis abc,acb,bac,cab").status, 2);
  const auto tmp = std::filesystem::temp_directory_path() / "varietas-dual.var";
  EXPECT_EQ(run("dual " + fx("as1.var") + " --write-variety " + tmp.string()).status, 0);
  EXPECT_EQ(run("dual " + fx("as1.var") + " --expect " + tmp.string()).status, 0);
  EXPECT_EQ(run("dual " + fx("as1.var") + " --expect " + fx("dual-as3.var")).status, 1);
}

TEST(Cli, Polarize) {
  EXPECT_EQ(run("polarize " + fx("as1.var") + " --expect " + fx("polar-as1.ids")).status, 0);
  auto r = run("polarize " + fx("as3.var") + " --expect " + fx("polar-as3.ids"));
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(has(r.out, "incomparable")) << r.out;
  EXPECT_EQ(run("polarize " + fx("as3.var") + " --convention standard --expect " + fx("polar-as3.ids")).status, 0);
}

TEST(Cli, CheckWithCertificate) {
  auto r = run("check " + fx("as3.var") + " --identity \"cab - bac - abc + acb\" --certificate");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "certificate terms:")) << r.out;
  EXPECT_EQ(run("check " + fx("as3.var") + " --identity \"abc - cba\"").status, 1);
}

TEST(Cli, ExpandCheck) {
  EXPECT_EQ(run("expand-check " + fx("assoc.var") + " --kind diff --identities " + fx("novikov-nc.var")).status, 0);
  EXPECT_EQ(run("expand-check " + fx("assoc.var") + " --kind rb --identities " + fx("dendriform.var")).status, 0);
  EXPECT_EQ(run("expand-check " + fx("as2.var") + " --kind rb --identities " + fx("pre-as2.ids")).status, 0);
  EXPECT_EQ(run("expand-check " + fx("as1.var") + " --kind star --identity \"(a*b)*c - a*(b*c)\"").status, 0);
  auto bad = run("expand-check " + fx("assoc.var") + " --kind diff --identity \"x>y - y>x\"");
  EXPECT_EQ(bad.status, 1);
  EXPECT_TRUE(has(bad.out, "failing multidegrees: (0,1) (1,0)")) << bad.out;
}

TEST(Cli, Opposite) {
  auto r = run("opposite " + fx("as3.var") + " --compare " + fx("as4.var") + " --max-degree 5");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "at degree 5: equal")) << r.out;
  EXPECT_EQ(run("opposite " + fx("as3.var") + " --compare " + fx("as3.var")).status, 1);
}

TEST(Cli, S3Decomposition) {
  auto r = run("s3-decomp " + fx("malcev.ids"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "orbit dimensions: 1 1 2 2")) << r.out;
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("dim").status, 2);
  EXPECT_EQ(run("dim " + fx("as3.var") + " --max-degree 0").status, 2);
  EXPECT_EQ(run("derived " + fx("as3.var") + " --sign sideways").status, 2);
  EXPECT_EQ(run("dim /no/such/file.var").status, 2);
  auto p = run("check " + fx("as3.var") + " --identity \"a*(b\"");
  EXPECT_EQ(p.status, 2);
  EXPECT_TRUE(has(p.out, "position")) << p.out;
  EXPECT_EQ(run("check " + fx("as3.var")).status, 2);
}

TEST(Cli, BundledFixtureFallback) {
  auto r = run("dim fixtures/as3.var --max-degree 4");
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(has(r.out, "dims: 1 2 4 1")) << r.out;
}

TEST(Cli, DeterministicAcrossRunsAndThreads) {
  const std::string args = "dim " + fx("dual-as3.var") + " --max-degree 4 --format kv";
  auto a = run(args), b = run(args), c = run(args + " --threads 3");
  EXPECT_EQ(a.out, b.out);
  auto strip = [](std::string s) { return s.substr(s.find('\n')); };  // command echo differs
  EXPECT_EQ(strip(a.out), strip(c.out));
  EXPECT_FALSE(has(a.out, "elapsed"));
  EXPECT_TRUE(has(run(args + " --timing").out, "elapsed="));
}

TEST(Cli, ReportFile) {
  const auto tmp = std::filesystem::temp_directory_path() / "varietas-report.txt";
  auto r = run("paper-suite --only 9 --format kv -o " + tmp.string());
  EXPECT_EQ(r.status, 0);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_TRUE(has(ss.str(), "record.0.value.orbit dimensions=1 1 2 2")) << ss.str();
  EXPECT_TRUE(has(ss.str(), "overall=pass"));
}

TEST(Cli, SuiteSubset) {
  auto r = run("paper-suite --only 2,9");
  EXPECT_EQ(r.status, 1);
  EXPECT_TRUE(has(r.out, "== criterion 2: Koszulness obstruction [FAIL]")) << r.out;
  EXPECT_TRUE(has(r.out, "== criterion 9: Mal'cev decomposition [PASS]")) << r.out;
}

TEST(Report, Rendering) {
  RunReport rep;
  rep.command = "x";
  CheckRecord a;
  a.group = "g";
  a.name = "first";
  a.verdict = "ok";
  a.values = {{"k", "1/2"}};
  CheckRecord b = a;
  b.name = "second";
  b.pass = false;
  b.counted = false;
  rep.records = {a, b};
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.text(), "$ x\n== g [PASS]\nPASS first: ok\n  k: 1/2\nINFO second: ok\n  k: 1/2\noverall: PASS\n");
  EXPECT_TRUE(has(rep.kv(), "record.1.status=info\n"));
  rep.records[1].counted = true;
  EXPECT_FALSE(rep.passed());
  EXPECT_EQ(rep.groups().front().second, false);
}
