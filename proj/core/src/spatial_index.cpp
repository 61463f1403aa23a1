#include "coopsim/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "coopsim/errors.hpp"

namespace coopsim {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Angular slack absorbing rounding in acos/atan2 when choosing candidate cells.
constexpr double kAngleSlack = 1e-9;

struct Polar {
  double phi;    // colatitude in [0, pi]
  double theta;  // longitude in [0, 2 pi)
};

Polar polar_of(Point p) {
  double theta = std::atan2(p[1], p[0]);
  if (theta < 0.0) theta += kTwoPi;
  return {std::acos(std::clamp(p[2], -1.0, 1.0)), theta};
}

std::int64_t floor_div(double x, double h) {
  return static_cast<std::int64_t>(std::floor(x / h));
}

}  // namespace

GridIndex::GridIndex(std::shared_ptr<const PointSet> points, double cell_size)
    : points_(std::move(points)), cell_size_(cell_size) {
  if (!points_) throw invalid_argument("null point set");
  if (!(cell_size_ > 0.0) || !std::isfinite(cell_size_)) {
    throw invalid_argument("index radius must be positive");
  }
  const SpaceSpec& space = points_->space();
  if (points_->size() >= std::numeric_limits<std::uint32_t>::max()) {
    throw invalid_argument("point set too large for 32-bit ids");
  }

  if (space.is_cube()) {
    const int n = space.dimension();
    cells_per_dim_ = static_cast<std::uint64_t>(std::floor(1.0 / cell_size_)) + 1;
    double total = 1.0;
    for (int d = 0; d < n; ++d) total *= static_cast<double>(cells_per_dim_);
    if (total >= 9.0e18) throw invalid_argument("radius too small for a grid in this dimension");
  } else {
    if (!(cell_size_ < std::numbers::pi / 2)) {
      throw invalid_argument("sphere radius must be below pi/2");
    }
    band_count_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::numbers::pi / cell_size_)));
    band_offset_.resize(band_count_ + 1, 0);
    band_cells_.resize(band_count_, 1);
    for (std::size_t b = 0; b < band_count_; ++b) {
      const double top = static_cast<double>(b) * cell_size_;
      const double bottom = std::min(std::numbers::pi, static_cast<double>(b + 1) * cell_size_);
      const double min_sin = std::max(0.0, std::min(std::sin(top), std::sin(bottom)));
      band_cells_[b] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(kTwoPi * min_sin / cell_size_)));
      band_offset_[b + 1] = band_offset_[b] + band_cells_[b];
    }
  }

  const std::size_t count = points_->size();
  std::vector<std::uint64_t> key_of(count);
  for (std::size_t i = 0; i < count; ++i) key_of[i] = cell_key((*points_)[i]);

  ids_.resize(count);
  std::iota(ids_.begin(), ids_.end(), 0u);
  std::stable_sort(ids_.begin(), ids_.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return key_of[a] < key_of[b]; });

  bucket_of_.resize(count);
  slot_of_.resize(count);
  for (std::uint32_t slot = 0; slot < count; ++slot) {
    const std::uint32_t id = ids_[slot];
    slot_of_[id] = slot;
    if (keys_.empty() || keys_.back() != key_of[id]) {
      keys_.push_back(key_of[id]);
      starts_.push_back(slot);
    }
    bucket_of_[id] = static_cast<std::uint32_t>(keys_.size() - 1);
  }
  starts_.push_back(static_cast<std::uint32_t>(count));

  identity_order_ = true;
  for (std::uint32_t slot = 0; slot < count; ++slot) {
    if (ids_[slot] != slot) {
      identity_order_ = false;
      break;
    }
  }

  if (space.is_cube()) {
    const std::size_t last = points_->stride() - 1;
    last_sorted_ = true;
    for (std::size_t b = 0; b < keys_.size() && last_sorted_; ++b) {
      for (std::uint32_t s = starts_[b] + 1; s < starts_[b + 1]; ++s) {
        if ((*points_)[ids_[s - 1]][last] > (*points_)[ids_[s]][last]) {
          last_sorted_ = false;
          break;
        }
      }
    }
    runs_exact_ = last_sorted_ && space.dimension() == 1;
  }
}

std::span<const std::uint32_t> GridIndex::bucket(std::size_t b) const {
  if (b >= keys_.size()) throw invalid_argument("bucket out of range");
  return std::span<const std::uint32_t>(ids_).subspan(starts_[b], starts_[b + 1] - starts_[b]);
}

std::uint64_t GridIndex::cell_key(Point p) const {
  if (space().is_cube()) {
    std::uint64_t key = 0;
    for (double x : p) {
      const auto c = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::floor(x / cell_size_)), cells_per_dim_ - 1);
      key = key * cells_per_dim_ + c;
    }
    return key;
  }
  const Polar polar = polar_of(p);
  const auto band = std::min<std::size_t>(static_cast<std::size_t>(polar.phi / cell_size_), band_count_ - 1);
  const std::uint64_t cells = band_cells_[band];
  const double width = kTwoPi / static_cast<double>(cells);
  const auto lon = std::min<std::uint64_t>(static_cast<std::uint64_t>(polar.theta / width), cells - 1);
  return band_offset_[band] + lon;
}

void GridIndex::check_query(std::uint32_t id, double radius) const {
  if (id >= ids_.size()) throw invalid_argument("unknown point id " + std::to_string(id));
  if (!(radius > 0.0)) throw invalid_argument("query radius must be positive");
  if (radius > cell_size_ * (1.0 + 1e-12)) {
    throw invalid_argument("query radius exceeds the index cell size");
  }
}

void GridIndex::push_key_range(std::uint64_t lo, std::uint64_t hi, std::vector<SlotRun>& out) const {
  const auto first = std::lower_bound(keys_.begin(), keys_.end(), lo);
  const auto last = std::upper_bound(first, keys_.end(), hi);
  const auto a = static_cast<std::size_t>(first - keys_.begin());
  const auto b = static_cast<std::size_t>(last - keys_.begin());
  if (a < b) out.push_back({starts_[a], starts_[b]});
}

void GridIndex::trim_by_last_coord(Point p, double radius, SlotRun& run) const {
  const std::size_t last = points_->stride() - 1;
  const double x = p[last];
  auto coord = [&](std::uint32_t slot) { return (*points_)[ids_[slot]][last]; };
  // Same subtractions as max_metric so trimming agrees with the exact filter.
  std::uint32_t lo = run.begin;
  std::uint32_t hi = run.end;
  while (lo < hi) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (std::abs(coord(mid) - x) > radius && coord(mid) < x) lo = mid + 1; else hi = mid;
  }
  const std::uint32_t begin = lo;
  hi = run.end;
  while (lo < hi) {
    const std::uint32_t mid = lo + (hi - lo) / 2;
    if (coord(mid) <= x || std::abs(coord(mid) - x) <= radius) lo = mid + 1; else hi = mid;
  }
  run = {begin, lo};
}

void GridIndex::cube_runs(Point p, double radius, std::vector<SlotRun>& out) const {
  const std::size_t n = p.size();
  const auto max_cell = static_cast<std::int64_t>(cells_per_dim_) - 1;
  std::vector<std::int64_t> lo(n), hi(n), cur(n);
  for (std::size_t d = 0; d < n; ++d) {
    lo[d] = std::clamp<std::int64_t>(floor_div(p[d] - radius, cell_size_), 0, max_cell);
    hi[d] = std::clamp<std::int64_t>(floor_div(p[d] + radius, cell_size_), 0, max_cell);
    cur[d] = lo[d];
  }
  const std::size_t first_new = out.size();
  while (true) {
    std::uint64_t prefix = 0;
    for (std::size_t d = 0; d + 1 < n; ++d) prefix = prefix * cells_per_dim_ + static_cast<std::uint64_t>(cur[d]);
    const std::uint64_t base = prefix * cells_per_dim_;
    push_key_range(base + static_cast<std::uint64_t>(lo[n - 1]), base + static_cast<std::uint64_t>(hi[n - 1]), out);
    // advance the odometer over all but the last dimension
    bool done = true;
    for (std::size_t d = n - 1; d-- > 0;) {
      if (++cur[d] <= hi[d]) {
        done = false;
        break;
      }
      cur[d] = lo[d];
    }
    if (done) break;
  }
  if (last_sorted_) {
    for (std::size_t i = first_new; i < out.size(); ++i) trim_by_last_coord(p, radius, out[i]);
    out.erase(std::remove_if(out.begin() + static_cast<std::ptrdiff_t>(first_new), out.end(),
                             [](const SlotRun& r) { return r.size() == 0; }),
              out.end());
  }
}

void GridIndex::sphere_runs(Point p, double radius, std::vector<SlotRun>& out) const {
  const Polar polar = polar_of(p);
  const auto last_band = static_cast<std::int64_t>(band_count_) - 1;
  const auto band_lo = std::clamp<std::int64_t>(floor_div(polar.phi - radius - kAngleSlack, cell_size_), 0, last_band);
  const auto band_hi = std::clamp<std::int64_t>(floor_div(polar.phi + radius + kAngleSlack, cell_size_), 0, last_band);

  bool all_longitudes = polar.phi - radius - kAngleSlack <= 0.0 ||
                        polar.phi + radius + kAngleSlack >= std::numbers::pi;
  double half_width = std::numbers::pi;
  if (!all_longitudes) {
    const double ratio = std::sin(radius) / std::sin(polar.phi);
    if (ratio >= 1.0 - 1e-6) {
      all_longitudes = true;
    } else {
      half_width = std::asin(ratio) + kAngleSlack;
    }
  }

  for (std::int64_t band = band_lo; band <= band_hi; ++band) {
    const auto b = static_cast<std::size_t>(band);
    const std::uint64_t cells = band_cells_[b];
    const std::uint64_t offset = band_offset_[b];
    const double width = kTwoPi / static_cast<double>(cells);
    if (all_longitudes || cells <= 3 || 2.0 * half_width + 2.0 * width >= kTwoPi) {
      push_key_range(offset, offset + cells - 1, out);
      continue;
    }
    const auto m = static_cast<std::int64_t>(cells);
    const std::int64_t lo = floor_div(polar.theta - half_width, width);
    const std::int64_t hi = floor_div(polar.theta + half_width, width);
    if (lo < 0) {
      push_key_range(offset, offset + static_cast<std::uint64_t>(hi), out);
      push_key_range(offset + static_cast<std::uint64_t>(lo + m), offset + cells - 1, out);
    } else if (hi >= m) {
      push_key_range(offset, offset + static_cast<std::uint64_t>(hi - m), out);
      push_key_range(offset + static_cast<std::uint64_t>(lo), offset + cells - 1, out);
    } else {
      push_key_range(offset + static_cast<std::uint64_t>(lo), offset + static_cast<std::uint64_t>(hi), out);
    }
  }
}

void GridIndex::candidate_runs(std::uint32_t id, double radius, std::vector<SlotRun>& out) const {
  check_query(id, radius);
  out.clear();
  const Point p = (*points_)[id];
  if (space().is_cube()) {
    cube_runs(p, radius, out);
  } else {
    sphere_runs(p, radius, out);
  }
}

void GridIndex::neighbors_within(std::uint32_t id, double radius, std::vector<std::uint32_t>& out) const {
  std::vector<SlotRun> runs;
  candidate_runs(id, radius, runs);
  out.clear();
  const SpaceSpec& sp = space();
  const Point p = (*points_)[id];
  for (const SlotRun& run : runs) {
    for (std::uint32_t s = run.begin; s < run.end; ++s) {
      const std::uint32_t j = ids_[s];
      if (j == id) continue;
      if (runs_exact_ || distance_unchecked(sp, p, (*points_)[j]) <= radius) out.push_back(j);
    }
  }
}

std::vector<std::uint32_t> GridIndex::neighbors_within(std::uint32_t id, double radius) const {
  std::vector<std::uint32_t> out;
  neighbors_within(id, radius, out);
  return out;
}

std::size_t GridIndex::count_within(std::uint32_t id, double radius) const {
  std::vector<SlotRun> runs;
  candidate_runs(id, radius, runs);
  if (runs_exact_) {
    std::size_t total = 0;
    for (const SlotRun& run : runs) total += run.size();
    return total - 1;
  }
  const SpaceSpec& sp = space();
  const Point p = (*points_)[id];
  std::size_t count = 0;
  for (const SlotRun& run : runs) {
    for (std::uint32_t s = run.begin; s < run.end; ++s) {
      const std::uint32_t j = ids_[s];
      if (j != id && distance_unchecked(sp, p, (*points_)[j]) <= radius) ++count;
    }
  }
  return count;
}

GridIndex build_index(std::shared_ptr<const PointSet> points, double radius) {
  return GridIndex(std::move(points), radius);
}

GridIndex build_index(const PointSet& points, double radius) {
  return GridIndex(std::make_shared<const PointSet>(points), radius);
}

}  // namespace coopsim
