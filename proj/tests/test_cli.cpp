// test_cli.cpp -- end-to-end command-line checks: exit codes, output
// schemas, overrides, and byte-level reproducibility.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the CLI with the given argument string, capturing stdout/stderr.
CliResult run_cli(const std::string& args) {
  const std::string err_path = "cli_test_stderr.txt";
  const std::string cmd =
      std::string(UWAUTH_CLI_PATH) + " " + args + " 2>" + err_path;
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char chunk[4096];
  std::size_t n;
  while ((n = fread(chunk, 1, sizeof chunk, pipe)) > 0)
    res.out.append(chunk, n);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  res.err = slurp(err_path);
  std::remove(err_path.c_str());
  return res;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

constexpr const char* kSweepHeader =
    "axis,value,eps_th,far_analytic,mdr_analytic,far_empirical,"
    "mdr_empirical,ci_far,ci_mdr,trials,seed";
constexpr const char* kRocHeader = "threshold,pfa,pd,provenance,seed";

}  // namespace

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("analytic --help").exit_code == 0);
}

TEST_CASE("usage errors exit with the configuration code") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("explode").exit_code == 2);
  CHECK(run_cli("analytic --no-such-flag").exit_code == 2);
  CHECK(run_cli("figure").exit_code == 2);
  CHECK(run_cli("figure fig12 --trials 10").exit_code == 2);
  CHECK(run_cli("analytic --format json").exit_code == 2);
}

TEST_CASE("analytic run prints one sweep-schema row") {
  const CliResult r = run_cli("analytic");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find(kSweepHeader) == 0);
  CHECK(r.out.find("threshold,") != std::string::npos);
  // Analytic-only: no Monte Carlo columns.
  CHECK(r.out.find("nan") != std::string::npos);
  CHECK(r.err.find("far_analytic=0.05") != std::string::npos);
}

TEST_CASE("simulate honors trial and seed overrides and reproduces bytes") {
  const std::string args = "simulate --trials 20000 --seed 7 --threads 2";
  const CliResult a = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out.find(kSweepHeader) == 0);
  CHECK(a.out.find(",20000,7") != std::string::npos);

  const CliResult b = run_cli(args);
  CHECK(a.out == b.out);

  // Thread count must not alter the numbers.
  const CliResult c = run_cli("simulate --trials 20000 --seed 7 --threads 1");
  CHECK(a.out == c.out);

  const CliResult d = run_cli("simulate --trials 20000 --seed 8 --threads 2");
  CHECK(a.out != d.out);
}

TEST_CASE("config files drive the run and bad ones are diagnosed") {
  SUBCASE("valid file") {
    write_file("cli_ok.cfg",
               "trials = 10000\nseed = 11\nmode = \"montecarlo\"\n");
    const CliResult r = run_cli("simulate --config cli_ok.cfg");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(",10000,11") != std::string::npos);
    std::remove("cli_ok.cfg");
  }
  SUBCASE("unknown key names the location") {
    write_file("cli_bad.cfg", "trials = 1000\nwat = 7\n");
    const CliResult r = run_cli("analytic --config cli_bad.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("cli_bad.cfg:2") != std::string::npos);
    CHECK(r.err.find("wat") != std::string::npos);
    std::remove("cli_bad.cfg");
  }
  SUBCASE("negative trials name the field") {
    write_file("cli_neg.cfg", "trials = -5\n");
    const CliResult r = run_cli("analytic --config cli_neg.cfg");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("trials") != std::string::npos);
    std::remove("cli_neg.cfg");
  }
  SUBCASE("missing file is an i/o error") {
    const CliResult r = run_cli("analytic --config does_not_exist.cfg");
    CHECK(r.exit_code == 4);
  }
}

TEST_CASE("roc emits both provenances on the same grid") {
  const CliResult r = run_cli("roc --trials 5000 --seed 3");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find(kRocHeader) == 0);
  CHECK(r.out.find(",analytic,") != std::string::npos);
  CHECK(r.out.find(",empirical,") != std::string::npos);
}

TEST_CASE("sweep requires an axis and then runs it") {
  SUBCASE("missing axis") {
    const CliResult r = run_cli("sweep --trials 1000");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("sweep_axis") != std::string::npos);
  }
  SUBCASE("configured axis") {
    write_file("cli_sweep.cfg",
               "sweep_axis = link_quality_db\n"
               "sweep_values = [0, 10, 20]\n"
               "trials = 5000\n");
    const CliResult r = run_cli("sweep --config cli_sweep.cfg --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find(kSweepHeader) == 0);
    CHECK(r.out.find("link_quality_db,0,") != std::string::npos);
    CHECK(r.out.find("link_quality_db,10,") != std::string::npos);
    CHECK(r.out.find("link_quality_db,20,") != std::string::npos);
    // One summary line per sweep point.
    int summaries = 0;
    std::istringstream err(r.err);
    std::string line;
    while (std::getline(err, line))
      if (line.find("link_quality_db=") == 0) ++summaries;
    CHECK(summaries == 3);
    std::remove("cli_sweep.cfg");
  }
}

TEST_CASE("output lands in files when requested") {
  write_file("cli_out.cfg", "gnuplot = true\ntrials = 2000\n");
  const CliResult r =
      run_cli("simulate --config cli_out.cfg --out cli_out.csv --seed 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const std::string csv = slurp("cli_out.csv");
  CHECK(csv.find(kSweepHeader) == 0);
  const std::string gp = slurp("cli_out.csv.gp");
  CHECK(gp.find("gnuplot") != std::string::npos);
  CHECK(gp.find("cli_out.csv") != std::string::npos);
  std::remove("cli_out.csv");
  std::remove("cli_out.csv.gp");

  SUBCASE("unwritable output path is an i/o error") {
    const CliResult bad =
        run_cli("simulate --trials 2000 --out no_dir_here/x.csv");
    CHECK(bad.exit_code == 4);
  }
}

TEST_CASE("figure recipes produce their schemas quickly at tiny trials") {
  SUBCASE("fig2 sweep schema") {
    const CliResult r = run_cli("figure fig2 --trials 2000 --seed 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find(kSweepHeader) == 0);
    CHECK(r.out.find("link_quality_db,-10,") != std::string::npos);
    CHECK(r.out.find("link_quality_db,20,") != std::string::npos);
  }
  SUBCASE("fig3 includes the baseline rows") {
    const CliResult r = run_cli("figure fig3 --trials 2000 --seed 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("link_quality_db:baseline_min,") != std::string::npos);
  }
  SUBCASE("fig4 groups by link quality") {
    const CliResult r = run_cli("figure fig4 --trials 2000 --seed 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("radius_R[lq=0],") != std::string::npos);
    CHECK(r.out.find("radius_R[lq=20],") != std::string::npos);
  }
  SUBCASE("fig5 emits labeled roc blocks") {
    const CliResult r = run_cli("figure fig5 --trials 2000 --seed 1");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("# curve: L=3 loc=(1,1) lq=0") != std::string::npos);
    CHECK(r.out.find("# curve: L=5 loc=(2,2) lq=10") != std::string::npos);
    CHECK(r.out.find(kRocHeader) != std::string::npos);
    CHECK(r.out.find(",analytic,") != std::string::npos);
    CHECK(r.out.find(",empirical,") != std::string::npos);
  }
}
