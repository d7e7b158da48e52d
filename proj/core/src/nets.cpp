// Copyright 2026 The rmsv Authors
// SPDX-License-Identifier: Apache-2.0

#include "rmsv/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace rmsv {

namespace {

/// Uniform grid over [-1, 1]^dim with cell side eps; a point within eps of a
/// query lies in one of the 3^dim cells around the query's cell.
class CellIndex {
 public:
  CellIndex(std::size_t dim, double eps)
      : dim_(dim), eps_(eps), cells_per_axis_(static_cast<std::int64_t>(std::ceil(2.0 / eps)) + 1) {}

  void insert(const Vector& p, std::size_t id) { cells_[key(cell_of(p))].push_back(id); }

  template <typename Visit>
  bool any_neighbor(const Vector& p, Visit&& visit) const {
    const std::vector<std::int64_t> centre = cell_of(p);
    std::vector<std::int64_t> offset(dim_, -1);
    std::vector<std::int64_t> cell(dim_);
    while (true) {
      bool inside = true;
      for (std::size_t d = 0; d < dim_; ++d) {
        cell[d] = centre[d] + offset[d];
        if (cell[d] < 0 || cell[d] >= cells_per_axis_) inside = false;
      }
      if (inside) {
        const auto it = cells_.find(key(cell));
        if (it != cells_.end()) {
          for (std::size_t id : it->second) {
            if (visit(id)) return true;
          }
        }
      }
      std::size_t d = 0;
      while (d < dim_ && offset[d] == 1) offset[d++] = -1;
      if (d == dim_) return false;
      ++offset[d];
    }
  }

 private:
  std::vector<std::int64_t> cell_of(const Vector& p) const {
    std::vector<std::int64_t> c(dim_);
    for (std::size_t d = 0; d < dim_; ++d) {
      c[d] = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::floor((p[d] + 1.0) / eps_)),
                                      0, cells_per_axis_ - 1);
    }
    return c;
  }

  std::uint64_t key(const std::vector<std::int64_t>& c) const {
    std::uint64_t k = 0;
    for (std::int64_t v : c) k = k * static_cast<std::uint64_t>(cells_per_axis_) + static_cast<std::uint64_t>(v);
    return k;
  }

  std::size_t dim_;
  double eps_;
  std::int64_t cells_per_axis_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> cells_;
};

double distance(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

double cardinality_bound(std::size_t dim, double eps) {
  const double base = eps <= 1.0 ? 3.0 / eps : 1.0 + 2.0 / eps;
  return std::pow(base, static_cast<double>(dim));
}

Vector sample_sphere(CounterRng& rng, std::size_t dim) {
  Vector v(dim);
  double nrm = 0.0;
  do {
    for (double& x : v) x = rng.gaussian();
    nrm = norm2(v);
  } while (nrm == 0.0);
  for (double& x : v) x /= nrm;
  return v;
}

EpsNet build_net(std::size_t dim, double eps, const SeedPath& seed, std::uint64_t budget) {
  if (dim < 1 || dim > 8) throw std::invalid_argument("build_net: dimension must be in [1, 8]");
  if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("build_net: eps must be in (0, 2]");
  if (budget < 1000) {
    throw std::invalid_argument("build_net: budget " + std::to_string(budget) +
                                " < 1000 gives no meaningful maximality certificate");
  }

  EpsNet net;
  net.dim = dim;
  net.eps = eps;
  CounterRng rng(seed);
  CellIndex index(dim, eps);
  std::uint64_t streak = 0;
  while (streak < budget) {
    Vector candidate = sample_sphere(rng, dim);
    ++net.candidates_drawn;
    const bool close = index.any_neighbor(
        candidate, [&](std::size_t id) { return distance(net.points[id], candidate) < eps; });
    if (close) {
      ++streak;
      continue;
    }
    index.insert(candidate, net.points.size());
    net.points.push_back(std::move(candidate));
    streak = 0;
  }
  net.rejection_streak = streak;
  return net;
}

double covering_check(const EpsNet& net, std::size_t n_probes, const SeedPath& seed) {
  if (n_probes < 1000) throw std::invalid_argument("covering_check: need at least 1000 probes");
  if (net.points.empty()) return std::numeric_limits<double>::infinity();
  CounterRng rng(seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < n_probes; ++i) {
    const Vector probe = sample_sphere(rng, net.dim);
    double best = std::numeric_limits<double>::infinity();
    for (const Vector& p : net.points) best = std::min(best, distance(p, probe));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace rmsv
