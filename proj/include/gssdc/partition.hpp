#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gssdc {

// Vertex split used throughout: s_known rows of the operator stay free,
// n_known rows are pinned to zero, undecided rows compete for the remaining
// budget k' = z - |s_known|. Index lists are 0-based and sorted ascending.
struct VertexPartition {
  int n_vertices = 0;
  std::vector<int> s_known;
  std::vector<int> n_known;
  std::vector<int> undecided;
  int z = 0;

  int k_prime() const { return z - static_cast<int>(s_known.size()); }
  void validate() const;  // disjoint, covering, 0 <= k' <= |undecided|, z <= n
};

enum class DesignKind { greedy_mandatory, random_both, greedy_pool };  // "i" / "ii" / "iii"

std::string design_tag(DesignKind kind);
DesignKind design_from_tag(const std::string& tag);

// Greedily picks m columns of b maximizing the smallest singular value of the
// selected submatrix (ties broken by lowest column index); `forbidden`
// columns are never picked.
std::vector<int> greedy_select(const Eigen::MatrixXd& b, int m,
                               const std::vector<int>& forbidden = {});

// The three pre-selection designs:
//   greedy_mandatory: s_known greedy, n_known uniform from the rest
//   random_both:      both sets uniform, disjoint
//   greedy_pool:      s_known random inside greedy_select(b, 2*s_size),
//                     n_known random outside that pool
VertexPartition make_design(DesignKind kind, const Eigen::MatrixXd& b, int s_size, int n_size,
                            int z, std::uint64_t seed);

// Text format: lines "s=...", "n=...", "u=..." (comma-separated indices,
// empty allowed) and "z=...".
void save_partition(const std::string& path, const VertexPartition& part);
VertexPartition load_partition(const std::string& path);

}  // namespace gssdc
