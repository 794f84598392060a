#include "hyperwave/table_io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hyperwave/lattice.hpp"

namespace hyperwave {

namespace {

using nlohmann::json;

json complex_pair(Complex z) { return json::array({z.real(), z.imag()}); }

Complex pair_complex(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw TableIoError("table_io", "import_table",
                       std::string(what) + " must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* degeneration_name(DegenerationKind k) {
  return k == DegenerationKind::M ? "M" : "L";
}

DegenerationKind degeneration_from_name(const std::string& s) {
  if (s == "M") return DegenerationKind::M;
  if (s == "L") return DegenerationKind::L;
  throw TableIoError("table_io", "import_table", "unknown degeneration kind '" + s + "'");
}

}  // namespace

void export_table(const CoeffTable& table, std::ostream& os) {
  json header;
  header["record"] = "header";
  header["family"] = family_name(table.family);
  header["n"] = table.xi.dim();
  header["N"] = table.N;
  json xi = json::array();
  for (Complex z : table.xi.xi) xi.push_back(complex_pair(z));
  header["xi"] = xi;
  header["g"] = {{"gS", complex_pair(table.g.gS)},
                 {"gM", complex_pair(table.g.gM)},
                 {"gL", complex_pair(table.g.gL)}};
  json a = json::array();
  for (Complex z : table.g.a) a.push_back(complex_pair(z));
  header["g"]["a"] = a;
  header["regularized"] = table.regularized;
  header["delta_u"] = complex_pair(table.delta_u);
  if (table.twist) {
    header["twist"] = {{"kind", degeneration_name(table.twist->kind)},
                       {"c", table.twist->c}};
  } else {
    header["twist"] = nullptr;
  }
  os << header.dump() << '\n';

  const auto& lattice = *table.lattice;
  const std::string fam(family_name(table.family));
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    const Composition& nu = lattice.composition(static_cast<int>(i));
    json rec;
    rec["family"] = fam;
    rec["nu"] = nu.nu;
    rec["re"] = table.entries[i].real();
    rec["im"] = table.entries[i].imag();
    os << rec.dump() << '\n';
  }
}

void export_table_file(const CoeffTable& table, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw TableIoError("table_io", "export_table_file", "cannot open '" + path + "'");
  export_table(table, os);
  if (!os) throw TableIoError("table_io", "export_table_file", "write to '" + path + "' failed");
}

CoeffTable import_table(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw TableIoError("table_io", "import_table", "empty input");
  }
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object() ||
      header.value("record", std::string()) != "header") {
    throw TableIoError("table_io", "import_table", "first line is not a header record");
  }

  CoeffTable table;
  try {
    table.family = family_from_name(header.at("family").get<std::string>());
    const int n = header.at("n").get<int>();
    table.N = header.at("N").get<int>();
    if (n < 1 || table.N < 0) {
      throw TableIoError("table_io", "import_table", "invalid dimensions in header");
    }
    const json& xi = header.at("xi");
    if (!xi.is_array() || static_cast<int>(xi.size()) != n) {
      throw TableIoError("table_io", "import_table", "xi length disagrees with n");
    }
    table.xi.xi.reserve(static_cast<std::size_t>(n));
    for (const json& z : xi) table.xi.xi.push_back(pair_complex(z, "xi entry"));
    const json& g = header.at("g");
    table.g.gS = pair_complex(g.at("gS"), "gS");
    table.g.gM = pair_complex(g.at("gM"), "gM");
    table.g.gL = pair_complex(g.at("gL"), "gL");
    for (const json& z : g.at("a")) table.g.a.push_back(pair_complex(z, "a entry"));
    table.regularized = header.at("regularized").get<bool>();
    table.delta_u = pair_complex(header.at("delta_u"), "delta_u");
    const json& twist = header.at("twist");
    if (!twist.is_null()) {
      table.twist = TranslationTwist{degeneration_from_name(twist.at("kind").get<std::string>()),
                                     twist.at("c").get<double>()};
    }
    table.lattice = Lattice::get(n, table.N);
  } catch (const json::exception& e) {
    throw TableIoError("table_io", "import_table", std::string("malformed header: ") + e.what());
  }

  const std::size_t count = static_cast<std::size_t>(table.lattice->size());
  table.entries.assign(count, Complex{0.0, 0.0});
  std::vector<bool> seen(count, false);
  std::size_t filled = 0;
  const std::string fam(family_name(table.family));
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) {
      throw TableIoError("table_io", "import_table",
                         "line " + std::to_string(line_no) + " is not a JSON record");
    }
    try {
      if (rec.at("family").get<std::string>() != fam) {
        throw TableIoError("table_io", "import_table",
                           "line " + std::to_string(line_no) + " family disagrees with header");
      }
      Composition nu{rec.at("nu").get<std::vector<int>>()};
      const int idx = table.lattice->index_of(nu);
      if (idx < 0) {
        throw TableIoError("table_io", "import_table",
                           "line " + std::to_string(line_no) + " indexes no dominant entry");
      }
      if (seen[static_cast<std::size_t>(idx)]) {
        throw TableIoError("table_io", "import_table",
                           "line " + std::to_string(line_no) + " repeats an entry");
      }
      seen[static_cast<std::size_t>(idx)] = true;
      ++filled;
      table.entries[static_cast<std::size_t>(idx)] =
          Complex(rec.at("re").get<double>(), rec.at("im").get<double>());
    } catch (const json::exception& e) {
      throw TableIoError("table_io", "import_table",
                         "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (filled != count) {
    throw TableIoError("table_io", "import_table",
                       "expected " + std::to_string(count) + " entries, found " +
                           std::to_string(filled));
  }
  return table;
}

CoeffTable import_table_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw TableIoError("table_io", "import_table_file", "cannot open '" + path + "'");
  return import_table(is);
}

}  // namespace hyperwave
