// End-to-end CLI checks: exit codes, output files, determinism. The binary
// path comes in through LDP_LAB_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

int Run(const std::string& args) {
  const std::string command =
      std::string(LDP_LAB_BIN) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string Slurp(const std::string& path) {
  std::ifstream file(path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream file(path);
  file << content;
}

}  // namespace

TEST_CASE("params exit codes") {
  CHECK(Run("params --protocol GRR --eps 1.0 --c 4") == 0);
  CHECK(Run("params --protocol L-OSUE --eps-inf 1.0 --eps1 0.5") == 0);
  CHECK(Run("params --protocol L-SOUE --eps-inf 1.0 --eps1 0.7") == 4);
  CHECK(Run("params --protocol GRR --c 4") == 2);          // missing --eps
  CHECK(Run("params --protocol NOPE --eps 1.0") == 2);
  CHECK(Run("params --eps 1.0") == 2);                     // missing protocol
}

TEST_CASE("variance-table subcommand") {
  const std::string out = "/tmp/ldplab_cli_table.csv";
  CHECK(Run("variance-table --out " + out) == 0);
  const std::string csv = Slurp(out);
  CHECK(csv.find("table,eps_inf,eps1,protocol,c,variance,feasible,note") == 0);
  CHECK(csv.find("L-OSUE") != std::string::npos);
}

TEST_CASE("simulate determinism and exit codes") {
  const std::string out1 = "/tmp/ldplab_cli_sim1.csv";
  const std::string out2 = "/tmp/ldplab_cli_sim2.csv";
  const std::string base =
      "simulate --synth 2000,3,4 --strategy Smp[ADP] --runs 2 "
      "--eps-grid 0.7,1.4 --seed 5 --out ";
  CHECK(Run(base + out1) == 0);
  CHECK(Run(base + out2) == 0);
  CHECK(Slurp(out1) == Slurp(out2));
  CHECK(Slurp(out1).find("strategy,epsilon,run,mse,seed") == 0);
  CHECK(Slurp(out1 + ".manifest.json").find("\"mse_mean\"") !=
        std::string::npos);

  // Serial path produces the same bytes.
  const std::string out3 = "/tmp/ldplab_cli_sim3.csv";
  CHECK(Run(base + out3 + " --serial") == 0);
  CHECK(Slurp(out1) == Slurp(out3));

  CHECK(Run("simulate --synth 2000,3,4 --strategy Wat --out /tmp/x.csv") == 2);
  CHECK(Run("simulate --strategy Smp --out /tmp/x.csv") == 2);
  CHECK(Run("simulate --data /tmp/ldplab_missing.csv --strategy Smp "
            "--out /tmp/x.csv") == 3);
}

TEST_CASE("simulate rejects malformed CSV with exit 3") {
  const std::string bad = "/tmp/ldplab_cli_bad.csv";
  WriteFile(bad, "A,B\na,x\nb\n");
  CHECK(Run("simulate --data " + bad + " --strategy Smp --runs 1 --out /tmp/x.csv") == 3);
}

TEST_CASE("geo-sanitize") {
  const std::string in = "/tmp/ldplab_cli_geo_in.csv";
  const std::string out1 = "/tmp/ldplab_cli_geo1.csv";
  const std::string out2 = "/tmp/ldplab_cli_geo2.csv";
  WriteFile(in, "x,y\n100.0,200.0\n-35.5,12.25\n0,0\n");
  const std::string base = "geo-sanitize --l 1.0986 --r 200 --seed 9 --in " +
                           in + " --out ";
  CHECK(Run(base + out1) == 0);
  CHECK(Run(base + out2) == 0);
  const std::string first = Slurp(out1);
  CHECK(first == Slurp(out2));
  CHECK(first.find("x,y\n") == 0);
  CHECK(first != Slurp(in));

  const std::string bad = "/tmp/ldplab_cli_geo_bad.csv";
  WriteFile(bad, "x,y\nhello,3\n");
  CHECK(Run(base.substr(0, base.find("--in")) + "--in " + bad + " --out " +
            out1) == 3);
  CHECK(Run("geo-sanitize --in /tmp/ldplab_nope.csv --out " + out1) == 3);
}
