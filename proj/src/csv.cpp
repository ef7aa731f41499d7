#include "jumpact/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace jumpact {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else {
      field.push_back(ch);
    }
  }
  fields.push_back(field);
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

std::vector<double> read_csv_column(const std::string& file,
                                    const std::string& column) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(file + ": missing header row");
  const std::vector<std::string> header = split_fields(strip_cr(line));
  std::size_t col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) {
      col = i;
      break;
    }
  if (col == header.size())
    throw std::runtime_error(file + ": no column named '" + column + "'");

  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = split_fields(line);
    if (col >= fields.size())
      throw std::runtime_error(file + ": line " + std::to_string(line_no) +
                               " has too few fields");
    const std::string& token = fields[col];
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (token.empty() || end != token.c_str() + token.size())
      throw std::runtime_error(file + ": line " + std::to_string(line_no) +
                               ": cannot parse '" + token + "' as a number");
    if (!std::isfinite(value))
      throw std::runtime_error(file + ": line " + std::to_string(line_no) +
                               ": non-finite value '" + token + "'");
    values.push_back(value);
  }
  return values;
}

void write_path_csv(const std::string& file, const LogPricePath& path) {
  std::FILE* out = std::fopen(file.c_str(), "w");
  if (!out) throw std::runtime_error("cannot open " + file + " for writing");
  std::fputs("index,logprice\n", out);
  for (std::size_t j = 0; j < path.n(); ++j)
    std::fprintf(out, "%zu,%.17g\n", j, path.values[j]);
  if (std::fclose(out) != 0)
    throw std::runtime_error("error writing " + file);
}

}  // namespace jumpact
