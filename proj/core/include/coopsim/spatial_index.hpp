#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "coopsim/geometry.hpp"

namespace coopsim {

/// Half-open range [begin, end) of slots in a GridIndex's bucket order.
struct SlotRun {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  std::uint32_t size() const { return end - begin; }
};

/// Uniform grid over a PointSet for fixed-radius neighbor queries.
///
/// Cube: the bucket of a point is floor(coord / cell_size) per coordinate
/// (clamped into the grid), linearized with the last coordinate fastest.
/// Sphere: buckets are latitude bands of angular height cell_size split into
/// longitude cells whose arc width stays >= cell_size, down to one cell at
/// the poles.
///
/// Slots list point ids bucket by bucket in ascending key order; inside a
/// bucket ids keep insertion (ascending) order. Edges are never stored.
class GridIndex {
 public:
  GridIndex(std::shared_ptr<const PointSet> points, double cell_size);

  const PointSet& points() const { return *points_; }
  const std::shared_ptr<const PointSet>& shared_points() const { return points_; }
  const SpaceSpec& space() const { return points_->space(); }
  double cell_size() const { return cell_size_; }
  std::size_t size() const { return ids_.size(); }

  std::size_t bucket_count() const { return keys_.size(); }
  std::uint64_t bucket_key(std::size_t b) const { return keys_[b]; }
  std::span<const std::uint32_t> bucket(std::size_t b) const;
  std::size_t bucket_of(std::uint32_t id) const { return bucket_of_.at(id); }
  std::uint64_t cell_key(Point p) const;

  /// Ids j != id with distance(id, j) <= radius; radius must not exceed the
  /// cell size.
  std::vector<std::uint32_t> neighbors_within(std::uint32_t id, double radius) const;
  void neighbors_within(std::uint32_t id, double radius, std::vector<std::uint32_t>& out) const;
  std::size_t count_within(std::uint32_t id, double radius) const;

  /// Slot runs whose union contains every point within `radius` of `id`
  /// (including `id` itself). When runs_exact() holds, the union is exactly
  /// that closed ball.
  void candidate_runs(std::uint32_t id, double radius, std::vector<SlotRun>& out) const;
  bool runs_exact() const { return runs_exact_; }

  std::uint32_t slot_to_id(std::uint32_t slot) const { return ids_[slot]; }
  std::uint32_t slot_of(std::uint32_t id) const { return slot_of_.at(id); }
  /// True when slot i holds point i for every i.
  bool identity_order() const { return identity_order_; }

 private:
  void check_query(std::uint32_t id, double radius) const;
  void cube_runs(Point p, double radius, std::vector<SlotRun>& out) const;
  void sphere_runs(Point p, double radius, std::vector<SlotRun>& out) const;
  void push_key_range(std::uint64_t lo, std::uint64_t hi, std::vector<SlotRun>& out) const;
  void trim_by_last_coord(Point p, double radius, SlotRun& run) const;

  std::shared_ptr<const PointSet> points_;
  double cell_size_;

  // cube layout
  std::uint64_t cells_per_dim_ = 1;
  // sphere layout
  std::size_t band_count_ = 1;
  std::vector<std::uint64_t> band_offset_;
  std::vector<std::uint64_t> band_cells_;

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint32_t> starts_;
  std::vector<std::uint32_t> ids_;
  std::vector<std::uint32_t> bucket_of_;
  std::vector<std::uint32_t> slot_of_;
  bool last_sorted_ = false;
  bool runs_exact_ = false;
  bool identity_order_ = false;
};

/// Build an index with cell size `radius`; radius must be positive and, on
/// the sphere, below pi/2.
GridIndex build_index(std::shared_ptr<const PointSet> points, double radius);
GridIndex build_index(const PointSet& points, double radius);

}  // namespace coopsim
