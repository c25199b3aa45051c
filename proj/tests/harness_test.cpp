#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "uwram/harness.hpp"

using namespace uwram;
using namespace uwram::harness;

TEST_CASE("csv schema") {
  CHECK(std::string(kCsvHeader) ==
        "mode,w,n,op,isa_instructions,scattered_reads,scattered_writes,"
        "peak_uw_registers");
}

TEST_CASE("bench records carry the pinned schedule") {
  std::vector<std::size_t> sizes{16, 64};
  auto recs = run_bench(MachineMode::Restricted, 16, sizes, 1);
  REQUIRE(recs.size() == 4);

  // n = 16: L = 6; n = 64: L = 8; both give ceil(log2 L) = 3
  for (const BenchRecord& r : recs) {
    CHECK(r.mode == "restricted");
    CHECK(r.w == 16);
    CHECK(r.min_instructions == r.max_instructions);  // index-independent
    CHECK(r.isa_instructions == r.max_instructions);
    CHECK(r.peak_uw_registers == 15);
    CHECK(r.scattered_reads == 1);
  }
  CHECK(recs[0].op == "sum");
  CHECK(recs[0].isa_instructions == 51);
  CHECK(recs[0].scattered_writes == 0);
  CHECK(recs[1].op == "update");
  CHECK(recs[1].isa_instructions == 70);
  CHECK(recs[1].scattered_writes == 1);
  CHECK(recs[2].n == 64);
  CHECK(recs[2].isa_instructions == 51);
  CHECK(recs[3].isa_instructions == 70);

  auto mult = run_bench(MachineMode::Multiplication, 16, sizes, 1);
  for (const BenchRecord& r : mult) {
    CHECK(r.mode == "mult");
    CHECK(r.min_instructions == r.max_instructions);
    CHECK(r.isa_instructions == (r.op == "sum" ? 30 : 52));
  }
}

TEST_CASE("bench samples large sizes deterministically") {
  std::vector<std::size_t> sizes{2048};
  auto a = run_bench(MachineMode::Multiplication, 16, sizes, 9);
  auto b = run_bench(MachineMode::Multiplication, 16, sizes, 9);
  REQUIRE(a.size() == 2);
  CHECK(a[0].isa_instructions == b[0].isa_instructions);
  CHECK(a[0].min_instructions == a[0].max_instructions);
  CHECK(a[1].isa_instructions == 52);
}

TEST_CASE("bench rejects sizes outside the width budget") {
  std::vector<std::size_t> zero{0};
  CHECK_THROWS_AS(run_bench(MachineMode::Restricted, 16, zero, 1),
                  std::invalid_argument);
  std::vector<std::size_t> big{8192};  // log2 + 3 = 16 > 15
  CHECK_THROWS_AS(run_bench(MachineMode::Restricted, 16, big, 1),
                  std::invalid_argument);
}

TEST_CASE("csv output is frozen") {
  std::vector<std::size_t> sizes{16};
  auto recs = run_bench(MachineMode::Restricted, 16, sizes, 1);
  std::ostringstream os;
  write_csv(os, recs);
  CHECK(os.str() ==
        "mode,w,n,op,isa_instructions,scattered_reads,scattered_writes,"
        "peak_uw_registers\n"
        "restricted,16,16,sum,51,1,0,15\n"
        "restricted,16,16,update,70,1,1,15\n");
}

TEST_CASE("markdown output is aligned and deterministic") {
  std::vector<std::size_t> sizes{16, 256};
  auto recs = run_bench(MachineMode::Restricted, 64, sizes, 3);
  std::ostringstream a, b;
  write_markdown(a, recs);
  write_markdown(b, recs);
  CHECK(a.str() == b.str());
  const std::string text = a.str();
  CHECK(text.substr(0, 7) == "| mode ");
  CHECK(text.find("isa_instructions") != std::string::npos);
  CHECK(text.find("|---") != std::string::npos);
  CHECK(text.find(" sum ") != std::string::npos);
  CHECK(text.find(" update ") != std::string::npos);
  // every line has the same width
  std::istringstream lines(text);
  std::string line, first;
  std::getline(lines, first);
  while (std::getline(lines, line)) CHECK(line.size() == first.size());
}

TEST_CASE("fuzz runs clean in both modes") {
  for (MachineMode mode :
       {MachineMode::Restricted, MachineMode::Multiplication}) {
    FuzzConfig cfg;
    cfg.n = 24;
    cfg.ops = 600;
    cfg.seed = 5;
    cfg.mode = mode;
    cfg.w = 16;
    FuzzReport rep = run_fuzz(cfg);
    CHECK(rep.ok);
    CHECK(rep.ops_executed == 600);
    CHECK(rep.diagnostic.empty());
  }
}

TEST_CASE("fuzz covers small and odd shapes") {
  for (std::size_t n : {1u, 2u, 3u, 13u}) {
    FuzzConfig cfg;
    cfg.n = n;
    cfg.ops = 300;
    cfg.seed = 7 + n;
    cfg.w = 8;  // the tightest width: N <= 16
    FuzzReport rep = run_fuzz(cfg);
    CHECK(rep.ok);
    CHECK(rep.diagnostic.empty());
  }
}

TEST_CASE("fuzz rejects impossible configurations") {
  FuzzConfig cfg;
  cfg.n = 0;
  CHECK_THROWS_AS(run_fuzz(cfg), std::invalid_argument);
  cfg.n = 32;
  cfg.w = 8;  // needs log2(32) + 3 = 8 <= 7
  CHECK_THROWS_AS(run_fuzz(cfg), std::invalid_argument);
}

TEST_CASE("demo rendering is deterministic and complete") {
  std::ostringstream a, b;
  render_demo(a, 13, 16, MachineMode::Restricted, 64);
  render_demo(b, 13, 16, MachineMode::Restricted, 64);
  CHECK(a.str() == b.str());
  const std::string text = a.str();
  CHECK(text.find("sum(13) = 91") != std::string::npos);
  CHECK(text.find("[51 instructions") != std::string::npos);
  CHECK(text.find("update(13, 5)") != std::string::npos);
  CHECK(text.find("[70 instructions") != std::string::npos);
  CHECK(text.find("F[13] 13 -> 18") != std::string::npos);
  CHECK(text.find("F[14] 27 -> 32") != std::string::npos);
  CHECK(text.find("F[16] 136 -> 141") != std::string::npos);

  std::ostringstream c;
  render_demo(c, 0, 16, MachineMode::Restricted, 64);
  CHECK(c.str().find("sum(0) = 0") != std::string::npos);
  CHECK(c.str().find("update pipeline skipped") != std::string::npos);

  std::ostringstream d;
  render_demo(d, 13, 16, MachineMode::Multiplication, 64);
  CHECK(d.str().find("sum(13) = 91") != std::string::npos);
  CHECK(d.str().find("[30 instructions") != std::string::npos);
  CHECK(d.str().find("[52 instructions") != std::string::npos);

  CHECK_THROWS_AS(render_demo(a, 17, 16, MachineMode::Restricted, 64),
                  std::invalid_argument);
}
