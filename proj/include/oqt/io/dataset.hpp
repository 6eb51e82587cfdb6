#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oqt/smc/inference.hpp"

namespace oqt {

// Measurement records plus the button declarations they rely on. Text form is
// one record per line, `<comma-joined labels> <trials> <successes>`, with `()`
// for the empty sequence, `#` comments, and `#!` metadata directives.
struct DataSet {
  std::vector<std::string> labels;
  std::string source;
  std::vector<Datum> records;
};

DataSet parse_dataset(std::istream& in, const std::string& name);
DataSet ingest_dataset(const std::string& path);

std::string render_dataset(const DataSet& data);
void write_dataset(const std::string& path, const DataSet& data);

}  // namespace oqt
