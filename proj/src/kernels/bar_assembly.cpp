#include <vector>

#include "gerbeforge/kernels/bar.hpp"

namespace gerbeforge::kernels {

namespace {

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void decode(std::size_t idx, int n, std::size_t base, int* out) {
  for (int i = n - 1; i >= 0; --i) {
    out[i] = static_cast<int>(idx % base) + 1;
    idx /= base;
  }
}

// Index of the tuple obtained by merging positions (k, k+1), or dropping one end; -1 if an identity appears.
long long encode(const int* t, int len, std::size_t base) {
  long long idx = 0;
  for (int i = 0; i < len; ++i) {
    if (t[i] == 0) return -1;
    idx = idx * static_cast<long long>(base) + (t[i] - 1);
  }
  return idx;
}

}  // namespace

ModMatrix assemble_bar_differential(int order, const int* mult, int n, int rank, const std::int64_t* action,
                                    Residue modulus, Execution exec) {
  const std::size_t base = static_cast<std::size_t>(order - 1);
  const std::size_t src_tuples = ipow(base, n), dst_tuples = ipow(base, n + 1);
  const std::size_t r = static_cast<std::size_t>(rank);
  ModMatrix d(dst_tuples * r, src_tuples * r, modulus);
  const bool par = exec == Execution::parallel;
  const long long total = static_cast<long long>(dst_tuples);
#pragma omp parallel for schedule(static) if (par)
  for (long long row = 0; row < total; ++row) {
    std::vector<int> t(n + 1), s(n);
    decode(static_cast<std::size_t>(row), n + 1, base, t.data());
    const std::size_t row0 = static_cast<std::size_t>(row) * r;
    // g_1 . c(g_2, ..., g_{n+1})
    {
      long long col = encode(t.data() + 1, n, base);
      const std::int64_t* m = action + static_cast<std::size_t>(t[0]) * r * r;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
          if (m[i * r + j] != 0) d.add(row0 + i, static_cast<std::size_t>(col) * r + j, m[i * r + j]);
    }
    // (-1)^k c(..., g_k g_{k+1}, ...)
    for (int k = 1; k <= n; ++k) {
      for (int i = 0; i < k - 1; ++i) s[i] = t[i];
      s[k - 1] = mult[static_cast<std::size_t>(t[k - 1]) * order + t[k]];
      for (int i = k + 1; i <= n; ++i) s[i - 1] = t[i];
      long long col = encode(s.data(), n, base);
      if (col < 0) continue;
      const Residue sign = (k % 2) ? -1 : 1;
      for (std::size_t i = 0; i < r; ++i) d.add(row0 + i, static_cast<std::size_t>(col) * r + i, sign);
    }
    // (-1)^{n+1} c(g_1, ..., g_n)
    {
      long long col = encode(t.data(), n, base);
      const Residue sign = ((n + 1) % 2) ? -1 : 1;
      for (std::size_t i = 0; i < r; ++i) d.add(row0 + i, static_cast<std::size_t>(col) * r + i, sign);
    }
  }
  return d;
}

ModMatrix assemble_nerve_differential(int order, const int* mult, int points, const int* act, int n,
                                      Residue modulus, Execution exec) {
  const std::size_t base = static_cast<std::size_t>(order - 1);
  const std::size_t src_tuples = ipow(base, n), dst_tuples = ipow(base, n + 1);
  const std::size_t pts = static_cast<std::size_t>(points);
  ModMatrix d(pts * dst_tuples, pts * src_tuples, modulus);
  const bool par = exec == Execution::parallel;
  const long long total = static_cast<long long>(pts * dst_tuples);
#pragma omp parallel for schedule(static) if (par)
  for (long long row = 0; row < total; ++row) {
    const std::size_t x = static_cast<std::size_t>(row) / dst_tuples;
    std::vector<int> t(n + 1), s(n);
    decode(static_cast<std::size_t>(row) % dst_tuples, n + 1, base, t.data());
    // face 0: drop the outermost arrow f_1; same source
    {
      long long col = encode(t.data() + 1, n, base);
      d.add(static_cast<std::size_t>(row), x * src_tuples + static_cast<std::size_t>(col), 1);
    }
    // faces 1..n: compose f_k o f_{k+1}
    for (int k = 1; k <= n; ++k) {
      for (int i = 0; i < k - 1; ++i) s[i] = t[i];
      s[k - 1] = mult[static_cast<std::size_t>(t[k - 1]) * order + t[k]];
      for (int i = k + 1; i <= n; ++i) s[i - 1] = t[i];
      long long col = encode(s.data(), n, base);
      if (col < 0) continue;
      d.add(static_cast<std::size_t>(row), x * src_tuples + static_cast<std::size_t>(col), (k % 2) ? -1 : 1);
    }
    // face n+1: drop the innermost arrow; the new source is q_{n+1}.x
    {
      const std::size_t y = static_cast<std::size_t>(act[static_cast<std::size_t>(t[n]) * pts + x]);
      long long col = encode(t.data(), n, base);
      d.add(static_cast<std::size_t>(row), y * src_tuples + static_cast<std::size_t>(col), ((n + 1) % 2) ? -1 : 1);
    }
  }
  return d;
}

}  // namespace gerbeforge::kernels
