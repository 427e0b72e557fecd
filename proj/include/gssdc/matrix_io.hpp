#pragma once

#include <Eigen/Dense>
#include <string>

namespace gssdc {

// Text matrix format shared by all tools: first line "# rows cols", then one
// line per row with comma-separated values printed to 17 significant digits
// (enough for doubles to round-trip bit-exactly).
void save_matrix(const std::string& path, const Eigen::MatrixXd& m);
Eigen::MatrixXd load_matrix(const std::string& path);

// %.17g rendering used for every floating-point value we serialize.
std::string format_value(double v);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace gssdc
