#include "wsp/field.hpp"

#include <algorithm>
#include <cmath>

namespace wsp {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b))
    throw StructuralError(std::string(what) + ": grids differ (" + a.describe() + " vs " +
                          b.describe() + ")");
}

ScalarField::ScalarField(Grid grid, std::vector<double> values, double time)
    : grid_(grid), time_(time), values_(std::move(values)) {
  grid_.validate();
  if (values_.size() != grid_.size())
    throw StructuralError("scalar field holds " + std::to_string(values_.size()) +
                          " values, grid needs " + std::to_string(grid_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidFieldError("scalar field contains a non-finite value");
  if (!std::isfinite(time_)) throw InvalidFieldError("field time must be finite");
}

ScalarField ScalarField::zeros(const Grid& grid, double time) {
  return constant(grid, 0.0, time);
}

ScalarField ScalarField::constant(const Grid& grid, double value, double time) {
  grid.validate();
  return ScalarField(grid, std::vector<double>(grid.size(), value), time);
}

ScalarField ScalarField::sample(const Grid& grid, const std::function<double(const Point&)>& fn,
                                double time, const ExecPolicy& exec) {
  grid.validate();
  std::vector<double> v(grid.size());
  parallel_for(v.size(), exec, [&](std::size_t n) { v[n] = fn(grid.node(n)); });
  return ScalarField(grid, std::move(v), time);
}

ScalarField ScalarField::with_time(double t) const {
  ScalarField out = *this;
  out.time_ = t;
  return out;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

template <class Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op, const char* what) {
  require_same_grid(a.grid(), b.grid(), what);
  std::vector<double> v(a.size());
  for (std::size_t n = 0; n < v.size(); ++n) v[n] = op(a[n], b[n]);
  return ScalarField(a.grid(), std::move(v), a.time());
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x + y; }, "scalar +");
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x - y; }, "scalar -");
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x * y; }, "scalar *");
}

ScalarField operator*(double s, const ScalarField& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= s;
  return ScalarField(a.grid(), std::move(v), a.time());
}

VectorField::VectorField(std::vector<ScalarField> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw StructuralError("vector field needs components");
  const Grid& g = components_.front().grid();
  if (static_cast<int>(components_.size()) != g.dim)
    throw StructuralError("vector field must have one component per dimension");
  for (const auto& c : components_) {
    require_same_grid(g, c.grid(), "vector field");
    if (c.time() != components_.front().time())
      throw StructuralError("vector field components carry different times");
  }
}

VectorField VectorField::zeros(const Grid& grid, double time) {
  std::vector<ScalarField> c(static_cast<std::size_t>(grid.dim), ScalarField::zeros(grid, time));
  return VectorField(std::move(c));
}

VectorField VectorField::sample(const Grid& grid, const std::function<Point(const Point&)>& fn,
                                double time, const ExecPolicy& exec) {
  grid.validate();
  const int d = grid.dim;
  std::vector<std::vector<double>> v(static_cast<std::size_t>(d),
                                     std::vector<double>(grid.size()));
  parallel_for(grid.size(), exec, [&](std::size_t n) {
    const Point val = fn(grid.node(n));
    for (int i = 0; i < d; ++i) v[i][n] = val[i];
  });
  std::vector<ScalarField> c;
  for (auto& comp : v) c.emplace_back(grid, std::move(comp), time);
  return VectorField(std::move(c));
}

Point VectorField::at(std::size_t flat) const {
  Point p{0.0, 0.0, 0.0};
  for (int i = 0; i < dim(); ++i) p[i] = components_[i][flat];
  return p;
}

VectorField VectorField::with_time(double t) const {
  std::vector<ScalarField> c;
  for (const auto& s : components_) c.push_back(s.with_time(t));
  return VectorField(std::move(c));
}

double VectorField::max_norm() const {
  double m = 0.0;
  for (std::size_t n = 0; n < grid().size(); ++n) m = std::max(m, norm(at(n), dim()));
  return m;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  std::vector<ScalarField> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(a[i] + b[i]);
  return VectorField(std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  std::vector<ScalarField> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(a[i] - b[i]);
  return VectorField(std::move(c));
}

VectorField operator*(double s, const VectorField& a) {
  std::vector<ScalarField> c;
  for (int i = 0; i < a.dim(); ++i) c.push_back(s * a[i]);
  return VectorField(std::move(c));
}

VectorField add_constant(const VectorField& a, const Point& k) {
  std::vector<ScalarField> c;
  for (int i = 0; i < a.dim(); ++i) {
    std::vector<double> v(a[i].values().begin(), a[i].values().end());
    for (double& x : v) x += k[i];
    c.emplace_back(a.grid(), std::move(v), a.time());
  }
  return VectorField(std::move(c));
}

TensorField::TensorField(std::vector<ScalarField> components, bool symmetric)
    : components_(std::move(components)), symmetric_(symmetric) {
  if (components_.empty()) throw StructuralError("tensor field needs components");
  const Grid& g = components_.front().grid();
  dim_ = g.dim;
  if (components_.size() != static_cast<std::size_t>(dim_ * dim_))
    throw StructuralError("tensor field must have dim*dim components");
  for (const auto& c : components_) {
    require_same_grid(g, c.grid(), "tensor field");
    if (c.time() != components_.front().time())
      throw StructuralError("tensor field components carry different times");
  }
  if (symmetric_) {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j) {
        const auto& a = (*this)(i, j);
        const auto& b = (*this)(j, i);
        for (std::size_t n = 0; n < a.size(); ++n)
          if (a[n] != b[n]) throw StructuralError("tensor flagged symmetric is not symmetric");
      }
  }
}

TensorField TensorField::zeros(const Grid& grid, double time) {
  std::vector<ScalarField> c(static_cast<std::size_t>(grid.dim * grid.dim),
                             ScalarField::zeros(grid, time));
  return TensorField(std::move(c), true);
}

TensorField TensorField::sample(const Grid& grid,
                                const std::function<void(const Point&, double*)>& fn,
                                double time, bool symmetric, const ExecPolicy& exec) {
  grid.validate();
  const int dd = grid.dim * grid.dim;
  std::vector<std::vector<double>> v(static_cast<std::size_t>(dd),
                                     std::vector<double>(grid.size()));
  parallel_for(grid.size(), exec, [&](std::size_t n) {
    double out[9] = {};
    fn(grid.node(n), out);
    for (int c = 0; c < dd; ++c) v[c][n] = out[c];
  });
  std::vector<ScalarField> c;
  for (auto& comp : v) c.emplace_back(grid, std::move(comp), time);
  return TensorField(std::move(c), symmetric);
}

TensorField TensorField::outer(const VectorField& u) {
  std::vector<ScalarField> c;
  for (int i = 0; i < u.dim(); ++i)
    for (int j = 0; j < u.dim(); ++j) c.push_back(u[i] * u[j]);
  return TensorField(std::move(c), true);
}

TensorField TensorField::with_time(double t) const {
  std::vector<ScalarField> c;
  for (const auto& s : components_) c.push_back(s.with_time(t));
  return TensorField(std::move(c), symmetric_);
}

namespace {

template <class Op>
TensorField zip_tensor(const TensorField& a, const TensorField& b, Op op) {
  std::vector<ScalarField> c;
  for (std::size_t k = 0; k < a.components().size(); ++k)
    c.push_back(op(a.components()[k], b.components()[k]));
  return TensorField(std::move(c), a.symmetric() && b.symmetric());
}

}  // namespace

TensorField operator+(const TensorField& a, const TensorField& b) {
  return zip_tensor(a, b, [](const ScalarField& x, const ScalarField& y) { return x + y; });
}

TensorField operator-(const TensorField& a, const TensorField& b) {
  return zip_tensor(a, b, [](const ScalarField& x, const ScalarField& y) { return x - y; });
}

TensorField operator*(double s, const TensorField& a) {
  std::vector<ScalarField> c;
  for (const auto& x : a.components()) c.push_back(s * x);
  return TensorField(std::move(c), a.symmetric());
}

}  // namespace wsp
