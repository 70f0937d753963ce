#ifndef TIPI_HARNESS_CSV_HPP
#define TIPI_HARNESS_CSV_HPP

#include <string>
#include <vector>

#include "tipi/analysis/behavior.hpp"

namespace tipi::harness {

// CSV with a header row naming every column. Values are printed with 17
// significant digits so a parse reproduces them bit-exactly.
std::string log_to_csv(const analysis::BehaviorLog& log);
void write_log_csv(const analysis::BehaviorLog& log, const std::string& path);
analysis::BehaviorLog read_log_csv(const std::string& path);
analysis::BehaviorLog parse_log_csv(const std::string& text);

void write_matrix_csv(const MatrixXd& m, const std::string& path,
                      const std::vector<std::string>& col_names = {});
MatrixXd read_matrix_csv(const std::string& path, bool expect_header);

std::string format_double(double v); // %.17g

} // namespace tipi::harness

#endif
