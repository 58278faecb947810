#pragma once

#include <functional>
#include <span>
#include <vector>

#include "wsp/errors.hpp"
#include "wsp/grid.hpp"
#include "wsp/parallel.hpp"

namespace wsp {

/// One real sample per grid node, stamped with a time. Immutable once built.
class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(Grid grid, std::vector<double> values, double time = 0.0);

  static ScalarField zeros(const Grid& grid, double time = 0.0);
  static ScalarField constant(const Grid& grid, double value, double time = 0.0);
  static ScalarField sample(const Grid& grid, const std::function<double(const Point&)>& fn,
                            double time = 0.0, const ExecPolicy& exec = {});

  const Grid& grid() const { return grid_; }
  double time() const { return time_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(const Index& idx) const { return values_[grid_.flatten(idx)]; }

  ScalarField with_time(double t) const;
  double max_abs() const;

 private:
  Grid grid_{};
  double time_ = 0.0;
  std::vector<double> values_;
};

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator*(const ScalarField& a, const ScalarField& b);

/// `dim` scalar components sharing one grid and one time.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<ScalarField> components);

  static VectorField zeros(const Grid& grid, double time = 0.0);
  static VectorField sample(const Grid& grid, const std::function<Point(const Point&)>& fn,
                            double time = 0.0, const ExecPolicy& exec = {});

  const Grid& grid() const { return components_.front().grid(); }
  double time() const { return components_.front().time(); }
  int dim() const { return static_cast<int>(components_.size()); }
  const ScalarField& operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<ScalarField>& components() const { return components_; }

  Point at(std::size_t flat) const;
  VectorField with_time(double t) const;
  /// Largest Euclidean length over the nodes.
  double max_norm() const;

 private:
  std::vector<ScalarField> components_;
};

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);
/// Adds the same vector to every node.
VectorField add_constant(const VectorField& a, const Point& c);

/// dim x dim scalar components. The symmetry flag records F_ij = F_ji and is
/// checked on construction.
class TensorField {
 public:
  TensorField() = default;
  TensorField(std::vector<ScalarField> components, bool symmetric);

  static TensorField zeros(const Grid& grid, double time = 0.0);
  static TensorField sample(const Grid& grid,
                            const std::function<void(const Point&, double* out)>& fn,
                            double time = 0.0, bool symmetric = false,
                            const ExecPolicy& exec = {});
  /// u_i u_j.
  static TensorField outer(const VectorField& u);

  const Grid& grid() const { return components_.front().grid(); }
  double time() const { return components_.front().time(); }
  int dim() const { return dim_; }
  bool symmetric() const { return symmetric_; }
  const ScalarField& operator()(int i, int j) const {
    return components_[static_cast<std::size_t>(i * dim_ + j)];
  }
  const std::vector<ScalarField>& components() const { return components_; }
  TensorField with_time(double t) const;

 private:
  std::vector<ScalarField> components_;
  int dim_ = 0;
  bool symmetric_ = false;
};

TensorField operator+(const TensorField& a, const TensorField& b);
TensorField operator-(const TensorField& a, const TensorField& b);
TensorField operator*(double s, const TensorField& a);

/// Frames of one field type on strictly increasing times and a common grid.
template <class FieldT>
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<FieldT> frames) : frames_(std::move(frames)) {
    if (frames_.empty()) throw StructuralError("time series needs at least one frame");
    times_.reserve(frames_.size());
    for (std::size_t k = 0; k < frames_.size(); ++k) {
      if (!(frames_[k].grid() == frames_.front().grid()))
        throw StructuralError("time series frames must share one grid");
      if (k > 0 && !(frames_[k].time() > frames_[k - 1].time()))
        throw ParameterError("time series times must be strictly increasing");
      times_.push_back(frames_[k].time());
    }
  }

  const std::vector<double>& times() const { return times_; }
  const std::vector<FieldT>& frames() const { return frames_; }
  const FieldT& operator[](std::size_t k) const { return frames_[k]; }
  std::size_t size() const { return frames_.size(); }
  const Grid& grid() const { return frames_.front().grid(); }

 private:
  std::vector<double> times_;
  std::vector<FieldT> frames_;
};

using ScalarSeries = TimeSeries<ScalarField>;
using VectorSeries = TimeSeries<VectorField>;
using TensorSeries = TimeSeries<TensorField>;

/// Structural check shared by binary operations.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

}  // namespace wsp
