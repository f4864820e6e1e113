#include "tmselect/alignment.hpp"

#include <algorithm>

#include "tmselect/rng.hpp"

namespace tmselect {

namespace {

// Full (|x|+1) x (|z|+1) cost matrix, row-major.
std::vector<int> dp_matrix(const Sentence& x, const Sentence& z) {
  const int m = static_cast<int>(x.size());
  const int l = static_cast<int>(z.size());
  std::vector<int> d(static_cast<std::size_t>(m + 1) * (l + 1));
  auto at = [&](int i, int j) -> int& { return d[static_cast<std::size_t>(i) * (l + 1) + j]; };
  for (int i = 0; i <= m; ++i) at(i, 0) = i;
  for (int j = 0; j <= l; ++j) at(0, j) = j;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= l; ++j) {
      int sub = at(i - 1, j - 1) + (x[i - 1] == z[j - 1] ? 0 : 1);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }
  return d;
}

}  // namespace

int edit_distance(const Sentence& x, const Sentence& z) {
  // Two-row variant; the full matrix is only needed for backtraces.
  const std::size_t m = x.size();
  const std::size_t l = z.size();
  std::vector<int> prev(l + 1), cur(l + 1);
  for (std::size_t j = 0; j <= l; ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= l; ++j) {
      int sub = prev[j - 1] + (x[i - 1] == z[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[l];
}

std::vector<char> matched_positions(const Sentence& x, const Sentence& z,
                                    DlAlignMode mode) {
  const int m = static_cast<int>(x.size());
  const int l = static_cast<int>(z.size());
  std::vector<char> matched(m, 0);
  if (m == 0 || l == 0) return matched;

  if (mode.mode == AlignMode::any_optimal) {
    // Position i is matchable iff some zero-cost diagonal edge through it
    // lies on a globally optimal path: forward + backward cost check.
    auto fwd = dp_matrix(x, z);
    Sentence xr(x.rbegin(), x.rend());
    Sentence zr(z.rbegin(), z.rend());
    auto bwd_rev = dp_matrix(xr, zr);
    auto f = [&](int i, int j) { return fwd[static_cast<std::size_t>(i) * (l + 1) + j]; };
    auto b = [&](int i, int j) {
      return bwd_rev[static_cast<std::size_t>(m - i) * (l + 1) + (l - j)];
    };
    const int total = f(m, l);
    for (int i = 1; i <= m; ++i) {
      for (int j = 1; j <= l; ++j) {
        if (x[i - 1] == z[j - 1] && f(i - 1, j - 1) + b(i, j) == total) {
          matched[i - 1] = 1;
          break;
        }
      }
    }
    return matched;
  }

  auto d = dp_matrix(x, z);
  auto at = [&](int i, int j) { return d[static_cast<std::size_t>(i) * (l + 1) + j]; };
  SplitMix64 rng(mode.seed);
  int i = m, j = l;
  while (i > 0 || j > 0) {
    enum Move { kMatch, kSub, kDel, kIns };
    Move moves[4];
    int n_moves = 0;
    bool diag = i > 0 && j > 0;
    if (diag && x[i - 1] == z[j - 1] && at(i, j) == at(i - 1, j - 1)) moves[n_moves++] = kMatch;
    if (diag && x[i - 1] != z[j - 1] && at(i, j) == at(i - 1, j - 1) + 1) moves[n_moves++] = kSub;
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) moves[n_moves++] = kDel;
    if (j > 0 && at(i, j) == at(i, j - 1) + 1) moves[n_moves++] = kIns;
    Move pick = mode.mode == AlignMode::sampled
                    ? moves[rng.below(static_cast<std::uint64_t>(n_moves))]
                    : moves[0];  // canonical: match > sub > del > ins
    switch (pick) {
      case kMatch:
        matched[i - 1] = 1;
        --i, --j;
        break;
      case kSub:
        --i, --j;
        break;
      case kDel:
        --i;
        break;
      case kIns:
        --j;
        break;
    }
  }
  return matched;
}

}  // namespace tmselect
