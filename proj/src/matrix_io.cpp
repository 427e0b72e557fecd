#include "gssdc/matrix_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gssdc {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void save_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::string out;
  out.reserve(static_cast<size_t>(m.size()) * 20 + 32);
  out += "# ";
  out += std::to_string(m.rows());
  out += ' ';
  out += std::to_string(m.cols());
  out += '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_value(m(i, j));
    }
    out += '\n';
  }
  write_text_file(path, out);
}

namespace {

double parse_double(const std::string& field, const std::string& path, int lineno) {
  const char* s = field.c_str();
  char* end = nullptr;
  const double v = std::strtod(s, &end);
  while (end && *end == ' ') ++end;
  if (end == s || (end && *end != '\0')) {
    throw std::runtime_error(path + ":" + std::to_string(lineno) +
                             ": bad numeric field '" + field + "'");
  }
  return v;
}

}  // namespace

Eigen::MatrixXd load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  long rows = 0, cols = 0;
  if (std::sscanf(line.c_str(), "# %ld %ld", &rows, &cols) != 2 || rows < 0 || cols < 0)
    throw std::runtime_error(path + ":1: expected header '# rows cols'");

  Eigen::MatrixXd m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw std::runtime_error(path + ": expected " + std::to_string(rows) +
                               " rows, file ends after " + std::to_string(i));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const int lineno = static_cast<int>(i) + 2;
    std::stringstream ls(line);
    std::string field;
    long j = 0;
    while (std::getline(ls, field, ',')) {
      if (j >= cols)
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": too many fields");
      m(i, j++) = parse_double(field, path, lineno);
    }
    if (j != cols)
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(cols) + " fields, got " + std::to_string(j));
  }
  return m;
}

}  // namespace gssdc
