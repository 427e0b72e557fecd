#include "gssdc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gssdc/matrix_io.hpp"
#include "gssdc/random.hpp"

namespace gssdc {

void VertexPartition::validate() const {
  if (n_vertices < 1) throw std::invalid_argument("partition: empty vertex set");
  if (z < 0 || z > n_vertices) throw std::invalid_argument("partition: bad budget z");
  std::vector<char> seen(n_vertices, 0);
  auto mark = [&](const std::vector<int>& set, const char* name) {
    for (size_t t = 0; t < set.size(); ++t) {
      const int v = set[t];
      if (v < 0 || v >= n_vertices)
        throw std::invalid_argument(std::string("partition: ") + name + " index out of range");
      if (t > 0 && set[t - 1] >= v)
        throw std::invalid_argument(std::string("partition: ") + name + " not sorted ascending");
      if (seen[v]) throw std::invalid_argument("partition: sets not disjoint");
      seen[v] = 1;
    }
  };
  mark(s_known, "s");
  mark(n_known, "n");
  mark(undecided, "u");
  if (s_known.size() + n_known.size() + undecided.size() != static_cast<size_t>(n_vertices))
    throw std::invalid_argument("partition: sets do not cover the vertex set");
  const int kp = k_prime();
  if (kp < 0 || kp > static_cast<int>(undecided.size()))
    throw std::invalid_argument("partition: budget infeasible (k' = " + std::to_string(kp) +
                                ", |u| = " + std::to_string(undecided.size()) + ")");
}

std::string design_tag(DesignKind kind) {
  switch (kind) {
    case DesignKind::greedy_mandatory: return "i";
    case DesignKind::random_both: return "ii";
    case DesignKind::greedy_pool: return "iii";
  }
  throw std::invalid_argument("design: bad kind");
}

DesignKind design_from_tag(const std::string& tag) {
  if (tag == "i") return DesignKind::greedy_mandatory;
  if (tag == "ii") return DesignKind::random_both;
  if (tag == "iii") return DesignKind::greedy_pool;
  throw std::invalid_argument("design: unknown tag '" + tag + "' (want i|ii|iii)");
}

namespace {

// Smallest singular value of the submatrix of b given by `cols`, computed as
// the (t - min(K, t))-th ascending eigenvalue of the t x t Gram so wide
// selections (t > rank dimension) are scored by sigma_min(K x t) correctly.
double selection_score(const Eigen::MatrixXd& gram, const std::vector<int>& cols,
                       Eigen::Index b_rows) {
  const int t = static_cast<int>(cols.size());
  Eigen::MatrixXd g(t, t);
  for (int a = 0; a < t; ++a)
    for (int c = 0; c < t; ++c) g(a, c) = gram(cols[a], cols[c]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const int nsv = std::min<Eigen::Index>(b_rows, t);
  const double lam = std::max(0.0, es.eigenvalues()(t - nsv));
  return std::sqrt(lam);
}

std::vector<int> sample_without_replacement(std::vector<int> pool, int m, RandomStream& rng) {
  // Partial Fisher-Yates; result sorted for deterministic serialization.
  std::vector<int> out;
  out.reserve(m);
  for (int t = 0; t < m; ++t) {
    const int j = t + rng.uniform_int(static_cast<int>(pool.size()) - t);
    std::swap(pool[t], pool[j]);
    out.push_back(pool[t]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> complement_of(const std::vector<char>& taken) {
  std::vector<int> out;
  for (size_t v = 0; v < taken.size(); ++v)
    if (!taken[v]) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace

std::vector<int> greedy_select(const Eigen::MatrixXd& b, int m,
                               const std::vector<int>& forbidden) {
  const int n = static_cast<int>(b.cols());
  std::vector<char> blocked(n, 0);
  for (int v : forbidden) {
    if (v < 0 || v >= n) throw std::invalid_argument("greedy_select: forbidden index out of range");
    blocked[v] = 1;
  }
  const int avail = n - static_cast<int>(std::count(blocked.begin(), blocked.end(), char(1)));
  if (m < 0 || m > avail)
    throw std::invalid_argument("greedy_select: m exceeds available columns");

  const Eigen::MatrixXd gram = b.transpose() * b;
  std::vector<int> selected;
  std::vector<int> trial;
  selected.reserve(m);
  for (int t = 0; t < m; ++t) {
    int best_j = -1;
    double best_score = -1.0;
    for (int j = 0; j < n; ++j) {
      if (blocked[j]) continue;
      trial = selected;
      trial.push_back(j);
      const double score = selection_score(gram, trial, b.rows());
      if (score > best_score) {
        best_score = score;
        best_j = j;
      }
    }
    selected.push_back(best_j);
    blocked[best_j] = 1;
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

VertexPartition make_design(DesignKind kind, const Eigen::MatrixXd& b, int s_size, int n_size,
                            int z, std::uint64_t seed) {
  const int n = static_cast<int>(b.cols());
  if (s_size < 0 || n_size < 0 || s_size + n_size > n)
    throw std::invalid_argument("design: |s| + |n| must not exceed the vertex count");
  if (s_size > z) throw std::invalid_argument("design: |s| must not exceed the budget z");
  if (z > n - n_size)
    throw std::invalid_argument("design: budget z exceeds the non-forbidden vertex count");

  RandomStream rng(seed);
  VertexPartition part;
  part.n_vertices = n;
  part.z = z;

  std::vector<char> taken(n, 0);
  auto take = [&](const std::vector<int>& set) {
    for (int v : set) taken[v] = 1;
  };

  switch (kind) {
    case DesignKind::greedy_mandatory: {
      part.s_known = greedy_select(b, s_size);
      take(part.s_known);
      part.n_known = sample_without_replacement(complement_of(taken), n_size, rng);
      take(part.n_known);
      break;
    }
    case DesignKind::random_both: {
      part.s_known = sample_without_replacement(complement_of(taken), s_size, rng);
      take(part.s_known);
      part.n_known = sample_without_replacement(complement_of(taken), n_size, rng);
      take(part.n_known);
      break;
    }
    case DesignKind::greedy_pool: {
      if (2 * s_size > n)
        throw std::invalid_argument("design: greedy pool 2|s| exceeds the vertex count");
      const std::vector<int> pool = greedy_select(b, 2 * s_size);
      part.s_known = sample_without_replacement(pool, s_size, rng);
      take(part.s_known);
      std::vector<char> pool_taken(n, 0);
      for (int v : pool) pool_taken[v] = 1;
      if (n - 2 * s_size < n_size)
        throw std::invalid_argument("design: not enough vertices outside the greedy pool");
      part.n_known = sample_without_replacement(complement_of(pool_taken), n_size, rng);
      take(part.n_known);
      break;
    }
  }

  part.undecided = complement_of(taken);
  part.validate();
  return part;
}

namespace {

std::string join_indices(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::vector<int> parse_indices(const std::string& body, const std::string& path) {
  std::vector<int> out;
  std::stringstream ss(body);
  std::string field;
  while (std::getline(ss, field, ',')) {
    if (field.empty()) continue;
    size_t pos = 0;
    const int v = std::stoi(field, &pos);
    if (pos != field.size()) throw std::runtime_error(path + ": bad index '" + field + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

void save_partition(const std::string& path, const VertexPartition& part) {
  std::string out;
  out += "s=" + join_indices(part.s_known) + "\n";
  out += "n=" + join_indices(part.n_known) + "\n";
  out += "u=" + join_indices(part.undecided) + "\n";
  out += "z=" + std::to_string(part.z) + "\n";
  write_text_file(path, out);
}

VertexPartition load_partition(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  VertexPartition part;
  bool got_s = false, got_n = false, got_u = false, got_z = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.rfind("s=", 0) == 0) {
      part.s_known = parse_indices(line.substr(2), path);
      got_s = true;
    } else if (line.rfind("n=", 0) == 0) {
      part.n_known = parse_indices(line.substr(2), path);
      got_n = true;
    } else if (line.rfind("u=", 0) == 0) {
      part.undecided = parse_indices(line.substr(2), path);
      got_u = true;
    } else if (line.rfind("z=", 0) == 0) {
      part.z = std::stoi(line.substr(2));
      got_z = true;
    } else {
      throw std::runtime_error(path + ": unrecognized line '" + line + "'");
    }
  }
  if (!(got_s && got_n && got_u && got_z))
    throw std::runtime_error(path + ": partition file needs s=, n=, u= and z= lines");
  part.n_vertices =
      static_cast<int>(part.s_known.size() + part.n_known.size() + part.undecided.size());
  part.validate();
  return part;
}

}  // namespace gssdc
