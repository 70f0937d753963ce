#include "tipi/harness/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tipi::harness {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string log_to_csv(const analysis::BehaviorLog& log) {
  std::ostringstream os;
  const auto& cols = log.columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) os << ",";
    os << cols[i];
  }
  os << "\n";
  for (std::size_t r = 0; r < log.rows(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) os << ",";
      os << format_double(log.at(r, c));
    }
    os << "\n";
  }
  return os.str();
}

void write_log_csv(const analysis::BehaviorLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out.good())
    throw NumericError("csv: cannot open '" + path + "' for writing");
  out << log_to_csv(log);
  if (!out.good()) throw NumericError("csv: write to '" + path + "' failed");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

} // namespace

analysis::BehaviorLog parse_log_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), "csv: empty input");
  analysis::BehaviorLog log(split_line(line));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_line(line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(std::strtod(cell.c_str(), nullptr));
    log.append(row);
  }
  return log;
}

analysis::BehaviorLog read_log_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "csv: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_log_csv(ss.str());
}

void write_matrix_csv(const MatrixXd& m, const std::string& path,
                      const std::vector<std::string>& col_names) {
  std::ofstream out(path);
  if (!out.good())
    throw NumericError("csv: cannot open '" + path + "' for writing");
  if (!col_names.empty()) {
    require(static_cast<Eigen::Index>(col_names.size()) == m.cols(),
            "csv: header size mismatch");
    for (std::size_t i = 0; i < col_names.size(); ++i)
      out << (i ? "," : "") << col_names[i];
    out << "\n";
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      out << (c ? "," : "") << format_double(m(r, c));
    out << "\n";
  }
  if (!out.good()) throw NumericError("csv: write to '" + path + "' failed");
}

MatrixXd read_matrix_csv(const std::string& path, bool expect_header) {
  std::ifstream in(path);
  require(in.good(), "csv: cannot open '" + path + "'");
  std::string line;
  std::vector<std::vector<double>> rows;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && expect_header) {
      first = false;
      continue;
    }
    first = false;
    const auto cells = split_line(line);
    std::vector<double> row;
    for (const auto& cell : cells) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "csv: '" + path + "' holds no data rows");
  MatrixXd m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == rows[0].size(), "csv: ragged rows in '" + path + "'");
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

} // namespace tipi::harness
