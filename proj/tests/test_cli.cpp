// Copyright 2026 The dicke-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(DICKE_SIM_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return o;
  char buf[4096];
  size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) o.out.append(buf, n);
  const int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dicke_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

constexpr const char* kSmall = "N = 2\nn_trotter = 3\nn_max = 8\nt_max = 0.3\ncoupling = 1.5\n";

TEST_F(Cli, RunWritesCsv) {
  const fs::path cfg = write("small.conf", kSmall);
  const Outcome o = run("run --config " + cfg.string() + " --reproducible");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("t_sim,g_t,fidelity,n_photon_trotter,n_photon_ideal,survival,leakage,trace_error"),
            std::string::npos);
  EXPECT_NE(o.out.find("# config: n_max = 8"), std::string::npos);
  EXPECT_EQ(o.out.find("# generated"), std::string::npos);
}

TEST_F(Cli, ReproducibleOutputIsIdentical) {
  const fs::path cfg = write("small.conf", kSmall);
  const fs::path a = dir_ / "a.csv", b = dir_ / "b.csv";
  ASSERT_EQ(run("run --config " + cfg.string() + " --reproducible --output " + a.string()).code, 0);
  ASSERT_EQ(run("run --config " + cfg.string() + " --reproducible --output " + b.string()).code, 0);
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(Cli, WorkerCountDoesNotChangeOutput) {
  const fs::path cfg = write("two.conf", "N = 1,2\nn_trotter = 3\nn_max = 8\nt_max = 0.3\n");
  ASSERT_EQ(run("run --config " + cfg.string() + " --reproducible --output " + (dir_ / "w1.csv").string()).code, 0);
  const std::string env = "DICKE_SIM_WORKERS=2 ";
  const std::string cmd = env + DICKE_SIM_PATH + " run --config " + cfg.string() + " --reproducible --output " +
                          (dir_ / "w3.csv").string() + " 2>/dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  for (const char* job : {"_N1_n3.csv", "_N2_n3.csv"}) {
    const std::string one = slurp(dir_ / ("w1" + std::string(job)));
    EXPECT_FALSE(one.empty());
    EXPECT_EQ(one, slurp(dir_ / ("w3" + std::string(job))));
  }
}

TEST_F(Cli, MultipleRunsNeedOutput) {
  const fs::path cfg = write("multi.conf", "N = 1,2\nn_trotter = 3\nn_max = 8\nt_max = 0.3\n");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 2);
}

TEST_F(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("run --config " + write("bad.conf", "colour = red\n").string()).code, 2);
  EXPECT_EQ(run("run --config " + (dir_ / "missing.conf").string()).code, 2);
  EXPECT_EQ(run("run --preset no-such-preset").code, 2);
  EXPECT_EQ(run("run").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("verify --filter nonsense").code, 2);
  const fs::path cfg = write("small.conf", kSmall);
  EXPECT_EQ(run("sweep --config " + cfg.string() + " --axis kappa --values 1,2").code, 2);
  EXPECT_EQ(std::system(("DICKE_SIM_WORKERS=zero " + std::string(DICKE_SIM_PATH) + " run --config " +
                         cfg.string() + " >/dev/null 2>&1")
                            .c_str()) >> 8,
            2);
}

TEST_F(Cli, NumericFailureExitsThree) {
  // An integrator step far above the stability limit trips the trace-drift guard.
  const fs::path cfg = write("unstable.conf", std::string(kSmall) + "dt = 0.5\nstability_limit = 100\nkappa = 1\n");
  EXPECT_EQ(run("run --config " + cfg.string()).code, 3);
}

TEST_F(Cli, JsonConfigAccepted) {
  const fs::path cfg =
      write("small.json", R"({"N": 2, "n_trotter": 3, "n_max": 8, "t_max": 0.3, "coupling": 1.5})");
  const fs::path kv = write("small.conf", kSmall);
  const Outcome a = run("run --config " + cfg.string() + " --reproducible");
  const Outcome b = run("run --config " + kv.string() + " --reproducible");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(Cli, SweepRowsPerValue) {
  const fs::path cfg = write("small.conf", kSmall);
  const Outcome o = run("sweep --config " + cfg.string() + " --axis n_trotter --values 2,4 --reproducible");
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("\n2,2,2,8,"), std::string::npos);
  EXPECT_NE(o.out.find("\n4,2,4,8,"), std::string::npos);
}

TEST_F(Cli, ScheduleDump) {
  const fs::path cfg = write("small.conf", kSmall);
  const Outcome o = run("schedule-dump --config " + cfg.string());
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("n_steps=3"), std::string::npos);
  EXPECT_NE(o.out.find("11 step=2 gate"), std::string::npos);
}

TEST_F(Cli, VerifyPassesAndDetectsFault) {
  const Outcome ok = run("verify --filter hamiltonians");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.find("FAIL"), std::string::npos);
  const Outcome bad = run("verify --filter hamiltonians --inject-fault anti-tc-sign");
  EXPECT_EQ(bad.code, 4);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

}  // namespace
