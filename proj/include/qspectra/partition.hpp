#ifndef QSPECTRA_PARTITION_HPP
#define QSPECTRA_PARTITION_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace qspectra {

// Integer partition: weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
      if (i && parts[i] > parts[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }

  int weight() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }
  int length() const { return static_cast<int>(parts.size()); }
  bool empty() const { return parts.empty(); }

  // multiplicity of part size j, j >= 1
  std::vector<int> multiplicities() const {
    std::vector<int> m(parts.empty() ? 0 : parts.front(), 0);
    for (int p : parts) m[p - 1]++;
    return m;
  }

  Partition transpose() const {
    Partition t;
    if (parts.empty()) return t;
    for (int row = 1; row <= parts.front(); ++row) {
      int col = 0;
      for (int p : parts)
        if (p >= row) ++col;
      t.parts.push_back(col);
    }
    return t;
  }

  bool operator==(const Partition& o) const { return parts == o.parts; }
  bool operator<(const Partition& o) const { return parts < o.parts; }
};

// All partitions of n, parts bounded by max_part, in descending
// lexicographic order: (n), (n-1,1), ..., (1^n).
inline void partitions_of_rec(int n, int max_part, std::vector<int>& cur,
                              std::vector<Partition>& out) {
  if (n == 0) {
    out.emplace_back();
    out.back().parts = cur;
    return;
  }
  for (int p = std::min(n, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions_of_rec(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Partition> partitions_of(int n, int max_part) {
  if (n < 0) throw std::invalid_argument("partitions_of: n must be >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_of_rec(n, max_part, cur, out);
  return out;
}

inline std::vector<Partition> partitions_of(int n) { return partitions_of(n, n); }

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace qspectra

#endif
