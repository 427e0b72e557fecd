#include <doctest.h>

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "gssdc/matrix_io.hpp"
#include "gssdc/random.hpp"

using namespace gssdc;

namespace {

std::string tmp_path(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "gssdc_io_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

bool bit_equal(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a.data()[i]) != std::bit_cast<std::uint64_t>(b.data()[i]))
      return false;
  return true;
}

}  // namespace

TEST_CASE("format_value renders 17 significant digits") {
  CHECK(format_value(0.1) == "0.10000000000000001");
  CHECK(format_value(1.0) == "1");
  CHECK(format_value(-0.0) == "-0");
  CHECK(format_value(1e300) == "1.0000000000000001e+300");
}

TEST_CASE("save/load round-trips bit-exactly") {
  RandomStream rng(split_seed(501, 0));
  Eigen::MatrixXd m(7, 5);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.normal() * std::pow(10.0, rng.uniform_int(41) - 20);
  m(0, 0) = 0.0;
  m(1, 0) = -0.0;
  m(2, 0) = 1e-300;
  m(3, 0) = -1e300;
  m(4, 0) = 0.1;
  m(5, 0) = 3.0;

  const std::string path = tmp_path("roundtrip.mat");
  save_matrix(path, m);
  const Eigen::MatrixXd back = load_matrix(path);
  CHECK(bit_equal(m, back));
}

TEST_CASE("empty matrices round-trip") {
  const std::string path = tmp_path("empty.mat");
  save_matrix(path, Eigen::MatrixXd(0, 0));
  const Eigen::MatrixXd back = load_matrix(path);
  CHECK(back.rows() == 0);
  CHECK(back.cols() == 0);
}

TEST_CASE("load rejects malformed files") {
  const std::string path = tmp_path("bad.mat");

  write_text_file(path, "2 2\n1,2\n3,4\n");
  CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("expected header"),
                       std::runtime_error);

  write_text_file(path, "# 2 2\n1,2\n");
  CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("file ends after"),
                       std::runtime_error);

  write_text_file(path, "# 2 2\n1,2\n3,4,5\n");
  CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("too many fields"),
                       std::runtime_error);

  write_text_file(path, "# 1 3\n1,2\n");
  CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("expected 3 fields"),
                       std::runtime_error);

  write_text_file(path, "# 1 2\n1,zebra\n");
  CHECK_THROWS_WITH_AS(load_matrix(path), doctest::Contains("bad numeric field"),
                       std::runtime_error);

  CHECK_THROWS_AS(load_matrix(tmp_path("does_not_exist.mat")), std::runtime_error);
}

TEST_CASE("load tolerates CRLF line endings") {
  const std::string path = tmp_path("crlf.mat");
  write_text_file(path, "# 2 2\r\n1,2\r\n3,4\r\n");
  const Eigen::MatrixXd m = load_matrix(path);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == 3.0);
}

TEST_CASE("text files round-trip verbatim") {
  const std::string path = tmp_path("text.txt");
  const std::string body = "line one\n# not a comment here\n  trailing  \n";
  write_text_file(path, body);
  CHECK(read_text_file(path) == body);
  CHECK_THROWS_AS(read_text_file(tmp_path("missing.txt")), std::runtime_error);
}
