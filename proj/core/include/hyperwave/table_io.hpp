#pragma once

#include <iosfwd>
#include <string>

#include "hyperwave/hcseries.hpp"

namespace hyperwave {

// Line-delimited JSON records.  The first line is a header carrying the
// series data (family, n, N, xi, g, regularization state and the regularizer
// value); every following line holds one coefficient as
//   {"family": "...", "nu": [..], "re": ..., "im": ...}
// with 17 significant digits.
void export_table(const CoeffTable& table, std::ostream& os);
void export_table_file(const CoeffTable& table, const std::string& path);

// Rebuilds a table from exported records; entries are taken verbatim, not
// recomputed.  Throws TableIoError on malformed input.
CoeffTable import_table(std::istream& is);
CoeffTable import_table_file(const std::string& path);

}  // namespace hyperwave
