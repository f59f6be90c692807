#pragma once

// Brute-force reference computations used by the tests. They work on plain
// integer tuples and bit masks and share no code with the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Vec4 = std::array<long, 4>;

// Raw 24-cell vertex list (ids 1-12) followed by the dual (ids 13-24).
inline const std::map<int, Vec4>& peres_vertices() {
  static const std::map<int, Vec4> v{
      {1, {2, 0, 0, 0}},   {2, {0, 2, 0, 0}},   {3, {0, 0, 2, 0}},    {4, {0, 0, 0, 2}},
      {5, {1, 1, 1, 1}},   {6, {1, -1, 1, -1}}, {7, {1, 1, -1, -1}},  {8, {1, -1, -1, 1}},
      {9, {1, 1, 1, -1}},  {10, {-1, 1, 1, 1}}, {11, {1, -1, 1, 1}},  {12, {1, 1, -1, 1}},
      {13, {1, 0, 1, 0}},  {14, {0, 1, 0, 1}},  {15, {1, 0, -1, 0}},  {16, {0, 1, 0, -1}},
      {17, {1, 1, 0, 0}},  {18, {1, -1, 0, 0}}, {19, {0, 0, 1, 1}},   {20, {0, 0, 1, -1}},
      {21, {1, 0, 0, 1}},  {22, {0, 1, 1, 0}},  {23, {1, 0, 0, -1}},  {24, {0, 1, -1, 0}},
  };
  return v;
}

inline long idot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// All 4-subsets of `ids` (ascending) that are pairwise orthogonal.
inline std::vector<std::vector<int>> brute_force_tetrads(const std::vector<int>& ids) {
  const auto& v = peres_vertices();
  std::vector<std::vector<int>> out;
  const std::size_t n = ids.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d) {
          const int q[4] = {ids[a], ids[b], ids[c], ids[d]};
          bool ok = true;
          for (int i = 0; i < 4 && ok; ++i)
            for (int j = i + 1; j < 4 && ok; ++j) ok = idot(v.at(q[i]), v.at(q[j])) == 0;
          if (ok) out.push_back({q[0], q[1], q[2], q[3]});
        }
  return out;
}

// Number of 0/1 vectors over `elements` with exactly one 1 in each context.
inline std::uint64_t count_exactly_one(const std::vector<int>& elements,
                                       const std::vector<std::vector<int>>& contexts) {
  std::vector<std::uint64_t> masks;
  for (const auto& ctx : contexts) {
    std::uint64_t m = 0;
    for (int id : ctx)
      for (std::size_t k = 0; k < elements.size(); ++k)
        if (elements[k] == id) m |= std::uint64_t{1} << k;
    masks.push_back(m);
  }
  std::uint64_t count = 0;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << elements.size()); ++bits) {
    bool ok = true;
    for (auto m : masks) {
      const auto x = bits & m;
      if (x == 0 || (x & (x - 1)) != 0) {
        ok = false;
        break;
      }
    }
    count += ok;
  }
  return count;
}

// Pascal's triangle, exact.
inline boost::multiprecision::cpp_int pascal(unsigned n, unsigned k) {
  std::vector<std::vector<boost::multiprecision::cpp_int>> row(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    row[i].assign(i + 1, 1);
    for (unsigned j = 1; j < i; ++j) row[i][j] = row[i - 1][j - 1] + row[i - 1][j];
  }
  return k > n ? boost::multiprecision::cpp_int(0) : row[n][k];
}

}  // namespace oracle
