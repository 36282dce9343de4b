#include "tubes/commands.hpp"

#include <gtest/gtest.h>

using namespace tubes;

namespace {

const Catalog& catalog() {
  static const Catalog c = builtin_catalog();
  return c;
}

cli::Options with_case(const std::string& cs) {
  cli::Options o;
  o.case_name = cs;
  return o;
}

json strip_time(json j) {
  j.erase("seconds");
  return j;
}

}  // namespace

TEST(Report, SchemaAndOrdering) {
  Report r = cli::run_command("table", catalog(), with_case("D"));
  json j = r.to_json();
  for (const char* k : {"version", "command", "checks", "summary", "seconds"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j["command"], "table");
  ASSERT_FALSE(j["checks"].empty());
  std::string prev;
  for (const auto& c : j["checks"]) {
    for (const char* k : {"id", "claim", "verdict", "details", "provenance"}) EXPECT_TRUE(c.contains(k)) << k;
    std::string id = c["id"];
    EXPECT_LE(prev, id);
    prev = id;
    std::string p = c["provenance"];
    EXPECT_TRUE(p.rfind("PAPER", 0) == 0 || p.rfind("DERIVED", 0) == 0 || p.rfind("TRIVIAL", 0) == 0) << p;
  }
  const auto& s = j["summary"];
  EXPECT_EQ(s["pass"].get<std::size_t>() + s["fail"].get<std::size_t>() + s["unresolved"].get<std::size_t>(),
            j["checks"].size());
}

TEST(Report, NonPassNeedsDetails) {
  Report r("x");
  EXPECT_THROW(r.add(Check{"a", "claim", Verdict::Fail, "", "TRIVIAL"}), std::logic_error);
  EXPECT_THROW(r.add(Check{"a", "claim", Verdict::Unresolved, "", "TRIVIAL"}), std::logic_error);
  r.add("b", "claim", false, "", "TRIVIAL");
  EXPECT_FALSE(r.checks().back().details.empty());
}

TEST(Report, ExitCodes) {
  Report r("x");
  EXPECT_EQ(r.exit_code(), 0);
  r.add(Check{"u", "claim", Verdict::Unresolved, "open", "TRIVIAL"});
  EXPECT_EQ(r.exit_code(), 2);
  r.add("f", "claim", false, "broken", "TRIVIAL");
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Commands, DeterministicForFixedSeed) {
  cli::Options o;
  o.surface = "surface.table.6";
  o.seed = 7;
  json a = strip_time(cli::run_command("orbits", catalog(), o).to_json());
  json b = strip_time(cli::run_command("orbits", catalog(), o).to_json());
  EXPECT_EQ(a, b);
}

TEST(Commands, UsageErrors) {
  EXPECT_THROW(cli::run_command("frobnicate", catalog(), {}), cli::UsageError);
  EXPECT_THROW(cli::run_command("table", catalog(), with_case("X")), cli::UsageError);
  cli::Options o;
  o.id = "map.cm.Dcas";
  EXPECT_THROW(cli::run_command("verify-map", catalog(), o), std::out_of_range);
}

TEST(Commands, AllNamesDispatch) {
  for (const auto& name : cli::command_names()) {
    if (name == "scan" || name == "export-fixtures" || name == "classify") continue;
    cli::Options o;
    o.case_name = "C";
    o.surface = "surface.table.5";
    EXPECT_NO_THROW(cli::run_command(name, catalog(), o)) << name;
  }
}

TEST(Commands, TableRecomputesBothCases) {
  for (std::string cs : {"D", "C"}) {
    Report r = cli::run_command("table", catalog(), with_case(cs));
    EXPECT_EQ(r.exit_code(), 0) << r.to_text();
  }
}

TEST(Commands, PrintedCubicFailsBasepointRank) {
  cli::Options o;
  o.surface = "surface.table.2.cubic.pp";
  Report r = cli::run_command("symmetry", catalog(), o);
  const Check* c = r.find("symmetry.surface.table.2.cubic.pp.basepoint");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->verdict, Verdict::Fail);
}

TEST(Commands, ScanReportsUnresolvedCharts) {
  cli::Options o;
  o.surface = "surface.table.1m";
  o.dim = 5;
  Report r = cli::run_command("scan", catalog(), o);
  EXPECT_EQ(r.exit_code(), 2);
  const Check* u = r.find("scan.surface.table.1m.k5.unresolved");
  ASSERT_NE(u, nullptr);
  EXPECT_EQ(u->verdict, Verdict::Unresolved);
  EXPECT_FALSE(u->details.empty());
}
