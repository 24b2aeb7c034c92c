#pragma once

#include <optional>
#include <span>

namespace kgo {

/// One row of the published uncertainty table (4-6 significant digits).
struct PublishedRow {
  int n;
  double gamma;
  double x2, dx, p2, dp, dxdp;
  double Fx, Fp, FxFp;
  double Sx, Sp, S_sum;
};

/// All 18 published rows: n = 0, 1, 2 crossed with gamma = 0, -0.16, ..., -0.80.
std::span<const PublishedRow> published_table();

/// Row for (n, gamma) with gamma matched to 1e-9, if published.
std::optional<PublishedRow> published_row(int n, double gamma);

}  // namespace kgo
