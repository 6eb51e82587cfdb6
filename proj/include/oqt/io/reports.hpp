#pragma once

#include <string>
#include <vector>

#include "oqt/gateset/gate_set.hpp"

namespace oqt {

// Shortest decimal that round-trips the double (17 significant digits).
std::string format_number(double v);

// One CSV file: header first, then rows. Cells containing commas, quotes or
// newlines are quoted per the usual convention, so sequence keys survive.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Parses a CSV written by write_csv back into rows (header included).
std::vector<std::vector<std::string>> read_csv(const std::string& path);

std::string sequence_cell(const Sequence& s);

}  // namespace oqt
