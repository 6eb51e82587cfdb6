#include "oqt/io/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace oqt {

namespace {

[[noreturn]] void fail_at(const std::string& name, long line, const std::string& message) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + message);
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

long parse_count(const std::string& name, long line, const std::string& token,
                 const char* what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(token, &used);
  } catch (const std::exception&) {
    fail_at(name, line, std::string(what) + " '" + token + "' is not an integer");
  }
  if (used != token.size()) fail_at(name, line, std::string(what) + " '" + token + "' is not an integer");
  if (value < 0) fail_at(name, line, std::string(what) + " must be non-negative");
  return value;
}

}  // namespace

DataSet parse_dataset(std::istream& in, const std::string& name) {
  DataSet data;
  bool declared = false;
  std::vector<long> record_lines;
  std::string raw;
  long line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip(raw);
    if (text.empty()) continue;
    if (text.rfind("#!", 0) == 0) {
      const std::string directive = strip(text.substr(2));
      const auto colon = directive.find(':');
      if (colon == std::string::npos) fail_at(name, line, "metadata directive needs 'key: value'");
      const std::string key = strip(directive.substr(0, colon));
      const std::string value = strip(directive.substr(colon + 1));
      if (key == "buttons") {
        declared = true;
        data.labels.clear();
        if (!value.empty())
          for (const auto& part : split_commas(value)) {
            const std::string label = strip(part);
            if (label.empty()) fail_at(name, line, "empty button label in declaration");
            data.labels.push_back(label);
          }
      } else if (key == "source") {
        data.source = value;
      } else {
        fail_at(name, line, "unknown metadata key '" + key + "'");
      }
      continue;
    }
    if (text[0] == '#') continue;

    std::istringstream fields(text);
    std::string seq_token, trials_token, successes_token, extra;
    if (!(fields >> seq_token >> trials_token >> successes_token))
      fail_at(name, line, "expected '<sequence> <trials> <successes>'");
    if (fields >> extra) fail_at(name, line, "unexpected trailing field '" + extra + "'");

    Datum d;
    if (seq_token != "()") {
      for (const auto& part : split_commas(seq_token)) {
        if (part.empty()) fail_at(name, line, "empty label in sequence '" + seq_token + "'");
        d.sequence.push_back(part);
      }
    }
    d.trials = parse_count(name, line, trials_token, "trial count");
    d.successes = parse_count(name, line, successes_token, "success count");
    if (d.successes > d.trials) fail_at(name, line, "successes exceed trials");
    data.records.push_back(std::move(d));
    record_lines.push_back(line);
  }

  if (declared) {
    for (std::size_t r = 0; r < data.records.size(); ++r)
      for (const auto& label : data.records[r].sequence)
        if (std::find(data.labels.begin(), data.labels.end(), label) == data.labels.end())
          fail_at(name, record_lines[r], "label '" + label + "' is not declared");
  } else {
    for (const auto& rec : data.records)
      for (const auto& label : rec.sequence)
        if (std::find(data.labels.begin(), data.labels.end(), label) == data.labels.end())
          data.labels.push_back(label);
  }
  return data;
}

DataSet ingest_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("dataset: cannot open '" + path + "'");
  return parse_dataset(in, path);
}

std::string render_dataset(const DataSet& data) {
  std::ostringstream out;
  out << "#! buttons: ";
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (i) out << ',';
    out << data.labels[i];
  }
  out << '\n';
  if (!data.source.empty()) out << "#! source: " << data.source << '\n';
  for (const auto& rec : data.records) {
    if (rec.sequence.empty()) {
      out << "()";
    } else {
      for (std::size_t i = 0; i < rec.sequence.size(); ++i) {
        if (i) out << ',';
        out << rec.sequence[i];
      }
    }
    out << ' ' << rec.trials << ' ' << rec.successes << '\n';
  }
  return out.str();
}

void write_dataset(const std::string& path, const DataSet& data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("dataset: cannot write '" + path + "'");
  out << render_dataset(data);
  if (!out) throw std::runtime_error("dataset: write to '" + path + "' failed");
}

}  // namespace oqt
