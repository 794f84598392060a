#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hyperwave/hyperwave.hpp"
#include "support/common.hpp"

using namespace hyperwave;

namespace {

CoeffTable sample_table(bool regularized = false, bool twisted = false) {
  const SpectralPoint xi = testing::xi_generic(2);
  const Couplings g = Couplings::normalized(2, {0.6, 0.1}, {0.9, -0.2}, {1.3, 0.05});
  std::optional<TranslationTwist> twist;
  if (twisted) twist = TranslationTwist{DegenerationKind::L, 0.7};
  return build_table(Family::bc, xi, g, 6, regularized, twist);
}

void expect_equal(const CoeffTable& a, const CoeffTable& b) {
  CHECK(a.family == b.family);
  CHECK(a.N == b.N);
  CHECK(a.regularized == b.regularized);
  CHECK(a.delta_u == b.delta_u);
  REQUIRE(a.xi.dim() == b.xi.dim());
  for (int j = 0; j < a.xi.dim(); ++j) {
    CHECK(a.xi.xi[static_cast<std::size_t>(j)] == b.xi.xi[static_cast<std::size_t>(j)]);
  }
  CHECK(a.g.gS == b.g.gS);
  CHECK(a.g.gM == b.g.gM);
  CHECK(a.g.gL == b.g.gL);
  CHECK(a.g.a == b.g.a);
  CHECK(a.twist.has_value() == b.twist.has_value());
  if (a.twist && b.twist) {
    CHECK(a.twist->kind == b.twist->kind);
    CHECK(a.twist->c == b.twist->c);
  }
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i] == b.entries[i]);  // 17 significant digits round-trip
  }
}

}  // namespace

TEST_CASE("stream round trips are bit exact") {
  for (bool regularized : {false, true}) {
    for (bool twisted : {false, true}) {
      const CoeffTable table = sample_table(regularized, twisted);
      std::stringstream ss;
      export_table(table, ss);
      const CoeffTable back = import_table(ss);
      expect_equal(table, back);

      // The imported table is directly usable.
      const PositionPoint x{{2.3, 1.1}};
      CHECK(series_eval(back, x).value == series_eval(table, x).value);
    }
  }
}

TEST_CASE("file round trip") {
  const CoeffTable table = sample_table();
  const std::string path = "tableio_roundtrip.jsonl";
  export_table_file(table, path);
  const CoeffTable back = import_table_file(path);
  expect_equal(table, back);
  std::remove(path.c_str());
  CHECK_THROWS_AS(import_table_file("tableio_missing.jsonl"), TableIoError);
}

TEST_CASE("depth-zero tables serialize to a header plus one record") {
  CoeffTable table = build_table(Family::cs, testing::xi_generic(1),
                                 testing::g_family(Family::cs, 1), 0);
  std::stringstream ss;
  export_table(table, ss);
  int lines = 0;
  for (std::string line; std::getline(ss, line);) {
    if (!line.empty()) ++lines;
  }
  CHECK(lines == 2);
  ss.clear();
  ss.seekg(0);
  expect_equal(table, import_table(ss));
}

TEST_CASE("malformed inputs are rejected with located errors") {
  const CoeffTable table = sample_table();
  std::stringstream ss;
  export_table(table, ss);
  const std::string good = ss.str();

  auto import_str = [](const std::string& s) {
    std::stringstream in(s);
    return import_table(in);
  };

  SUBCASE("empty stream") {
    CHECK_THROWS_AS(import_str(""), TableIoError);
  }
  SUBCASE("header is not JSON") {
    CHECK_THROWS_AS(import_str("not json\n" + good.substr(good.find('\n') + 1)),
                    TableIoError);
  }
  SUBCASE("header missing a field") {
    const std::string hdr = good.substr(0, good.find('\n'));
    std::string broken = hdr;
    const auto pos = broken.find("\"family\"");
    REQUIRE(pos != std::string::npos);
    broken.replace(pos, 8, "\"spouse\"");
    CHECK_THROWS_AS(import_str(broken + good.substr(good.find('\n'))), TableIoError);
  }
  SUBCASE("truncated body") {
    const auto last = good.find_last_of('\n', good.size() - 2);
    try {
      import_str(good.substr(0, last + 1));
      FAIL("expected a table error");
    } catch (const TableIoError& e) {
      CHECK(e.detail().find("entr") != std::string::npos);  // names missing entries
    }
  }
  SUBCASE("duplicate record") {
    const auto last = good.find_last_of('\n', good.size() - 2);
    const std::string dup = good + good.substr(last + 1);
    CHECK_THROWS_AS(import_str(dup), TableIoError);
  }
  SUBCASE("garbage trailing line") {
    CHECK_THROWS_AS(import_str(good + "{\"family\": \"bc\"}\n"), TableIoError);
  }
  SUBCASE("error mentions the offending line") {
    try {
      import_str("{}\n");
      FAIL("expected a table error");
    } catch (const TableIoError& e) {
      CHECK(e.detail().find("line") != std::string::npos);
    }
  }
}
