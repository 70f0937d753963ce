#include "tipi/analysis/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace tipi::analysis {

double param_distance(const MatrixXd& c1, const MatrixXd& c2) {
  require(c1.rows() == c2.rows() && c1.cols() == c2.cols(),
          "param_distance: shape mismatch");
  return (c1.cwiseAbs() - c2.cwiseAbs()).squaredNorm();
}

Dendrogram hierarchical_cluster(const MatrixXd& distance, Linkage linkage,
                                std::vector<std::string> labels) {
  const int n = static_cast<int>(distance.rows());
  require(distance.cols() == n, "hierarchical_cluster: matrix must be square");
  require(n >= 1, "hierarchical_cluster: empty input");
  for (int i = 0; i < n; ++i) {
    require(distance(i, i) == 0.0,
            "hierarchical_cluster: diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      require(distance(i, j) >= 0.0,
              "hierarchical_cluster: distances must be nonnegative");
      require(distance(i, j) == distance(j, i),
              "hierarchical_cluster: matrix must be symmetric");
    }
  }

  Dendrogram out;
  out.n_leaves = n;
  out.linkage = linkage;
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("leaf" + std::to_string(i));
  require(static_cast<int>(labels.size()) == n,
          "hierarchical_cluster: label count mismatch");
  out.labels = std::move(labels);

  // active clusters: current id, size, row in the shrinking distance matrix
  MatrixXd d = distance;
  std::vector<int> ids(n), sizes(n, 1);
  for (int i = 0; i < n; ++i) ids[i] = i;

  int next_id = n;
  while (static_cast<int>(ids.size()) > 1) {
    const int m = static_cast<int>(ids.size());
    int bi = 0, bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (d(i, j) < best) {
          best = d(i, j);
          bi = i;
          bj = j;
        }

    out.merges.push_back(
        {std::min(ids[bi], ids[bj]), std::max(ids[bi], ids[bj]), best});

    // Lance-Williams update of row bi, then drop row bj
    const int si = sizes[bi], sj = sizes[bj];
    for (int k = 0; k < m; ++k) {
      if (k == bi || k == bj) continue;
      double nd = 0.0;
      switch (linkage) {
        case Linkage::average:
          nd = (si * d(bi, k) + sj * d(bj, k)) / (si + sj);
          break;
        case Linkage::single:
          nd = std::min(d(bi, k), d(bj, k));
          break;
        case Linkage::complete:
          nd = std::max(d(bi, k), d(bj, k));
          break;
      }
      d(bi, k) = nd;
      d(k, bi) = nd;
    }
    ids[bi] = next_id++;
    sizes[bi] = si + sj;

    const int last = m - 1;
    if (bj != last) {
      d.row(bj) = d.row(last);
      d.col(bj) = d.col(last);
      d(bj, bj) = 0.0;
      ids[bj] = ids[last];
      sizes[bj] = sizes[last];
    }
    ids.pop_back();
    sizes.pop_back();
    d.conservativeResize(last, last);
  }
  return out;
}

std::string Dendrogram::to_newick() const {
  if (n_leaves == 0) return ";";
  std::map<int, std::string> repr;
  for (int i = 0; i < n_leaves; ++i) repr[i] = labels[i];
  int next_id = n_leaves;
  for (const auto& m : merges) {
    std::ostringstream os;
    os << "(" << repr.at(m.left) << "," << repr.at(m.right) << "):" << m.height;
    repr.erase(m.left);
    repr.erase(m.right);
    repr[next_id++] = os.str();
  }
  std::ostringstream os;
  bool first = true;
  for (const auto& [id, s] : repr) {
    if (!first) os << ",";
    os << s;
    first = false;
  }
  os << ";";
  return os.str();
}

std::vector<int> Dendrogram::cut(int k) const {
  require(k >= 1 && k <= n_leaves, "Dendrogram::cut: k out of range");
  // union-find over the first n_leaves - k merges
  std::vector<int> parent(n_leaves + merges.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const int n_merges = n_leaves - k;
  for (int i = 0; i < n_merges; ++i) {
    const int id = n_leaves + i;
    parent[find(merges[i].left)] = id;
    parent[find(merges[i].right)] = id;
  }
  std::map<int, int> relabel;
  std::vector<int> assign(n_leaves);
  for (int i = 0; i < n_leaves; ++i) {
    const int root = find(i);
    auto [it, inserted] = relabel.try_emplace(root, (int)relabel.size());
    assign[i] = it->second;
  }
  return assign;
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> fwd, bwd;
  for (size_t i = 0; i < a.size(); ++i) {
    auto [itf, newf] = fwd.try_emplace(a[i], b[i]);
    if (itf->second != b[i]) return false;
    auto [itb, newb] = bwd.try_emplace(b[i], a[i]);
    if (itb->second != a[i]) return false;
  }
  return true;
}

} // namespace tipi::analysis
