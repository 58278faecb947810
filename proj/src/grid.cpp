#include "wsp/grid.hpp"

#include <cmath>
#include <sstream>

#include "wsp/errors.hpp"

namespace wsp {

Grid Grid::make(int dim, int points, double half_width, Point origin) {
  Grid g{dim, half_width, points, origin};
  g.validate();
  return g;
}

void Grid::validate() const {
  if (dim != 2 && dim != 3) throw ParameterError("grid dimension must be 2 or 3");
  if (points < 4 || points % 2 != 0)
    throw ParameterError("points per axis must be even and at least 4, got " +
                         std::to_string(points));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw ParameterError("grid half-width must be positive and finite");
  for (int a = 0; a < 3; ++a)
    if (!std::isfinite(origin[a]))
      throw ParameterError("grid origin must be finite");
}

double Grid::cell_volume() const { return std::pow(spacing(), dim); }

std::size_t Grid::size() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(points);
  return n;
}

Point Grid::node(const Index& idx) const {
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) x[a] = coord(a, idx[a]);
  return x;
}

Index Grid::unflatten(std::size_t flat) const {
  Index idx{0, 0, 0};
  const auto n = static_cast<std::size_t>(points);
  for (int a = dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % n);
    flat /= n;
  }
  return idx;
}

std::size_t Grid::flatten(const Index& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim; ++a)
    flat = flat * static_cast<std::size_t>(points) + static_cast<std::size_t>(idx[a]);
  return flat;
}

bool Grid::is_interior(const Index& idx, int ring) const {
  for (int a = 0; a < dim; ++a) {
    const int k = idx[a];
    if (k < ring || k > points - 1 - ring) return false;
  }
  return true;
}

std::optional<std::size_t> Grid::zero_node() const {
  Index idx{0, 0, 0};
  const double h = spacing();
  for (int a = 0; a < dim; ++a) {
    const double k = (half_width - origin[a]) / h;
    const double kr = std::round(k);
    if (std::abs(k - kr) > 1e-9 || kr < 0 || kr > points - 1) return std::nullopt;
    idx[a] = static_cast<int>(kr);
  }
  return flatten(idx);
}

std::string Grid::describe() const {
  std::ostringstream os;
  os << dim << "D N=" << points << " L=" << half_width;
  return os.str();
}

double norm(const Point& x, int dim) { return std::sqrt(dot(x, x, dim)); }

double dot(const Point& a, const Point& b, int dim) {
  double s = 0.0;
  for (int i = 0; i < dim; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace wsp
