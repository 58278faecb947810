#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace wsp {

/// Spatial point; entries past the grid dimension are ignored and kept at 0.
using Point = std::array<double, 3>;

/// Multi-index of a grid node; entries past the grid dimension are 0.
using Index = std::array<int, 3>;

/// Uniform node-centred grid covering [c - L, c + L)^dim with N nodes per axis.
/// Node k on an axis sits at c - L + k h, h = 2L/N. Storage is row-major with
/// the first axis slowest.
struct Grid {
  int dim = 2;
  double half_width = 1.0;
  int points = 4;
  Point origin{0.0, 0.0, 0.0};

  /// Validated construction.
  static Grid make(int dim, int points, double half_width, Point origin = {0.0, 0.0, 0.0});

  /// Throws ParameterError when an invariant fails.
  void validate() const;

  double spacing() const { return 2.0 * half_width / points; }
  double cell_volume() const;
  std::size_t size() const;

  double coord(int axis, int k) const {
    return origin[axis] - half_width + k * spacing();
  }
  Point node(const Index& idx) const;
  Point node(std::size_t flat) const { return node(unflatten(flat)); }

  Index unflatten(std::size_t flat) const;
  std::size_t flatten(const Index& idx) const;

  /// True when every used index is at least `ring` nodes away from the box edge.
  bool is_interior(const Index& idx, int ring = 1) const;

  /// Flat index of the node located at x = 0, when the lattice contains it.
  std::optional<std::size_t> zero_node() const;

  std::string describe() const;

  friend bool operator==(const Grid&, const Grid&) = default;
};

double norm(const Point& x, int dim);
double dot(const Point& a, const Point& b, int dim);

}  // namespace wsp
