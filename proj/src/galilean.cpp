#include "wsp/galilean.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wsp/pressure.hpp"

namespace wsp {

namespace {

void check_margin(const DriftCurve& drift, const std::vector<double>& times, double margin, int d) {
  if (drift.times != times) throw StructuralError("drift times differ from the series times");
  if (drift.g.size() != times.size() || drift.E.size() != times.size())
    throw StructuralError("drift curve is incomplete");
  std::string bad;
  for (std::size_t k = 0; k < times.size(); ++k)
    if (norm(drift.E[k], d) > margin) bad += (bad.empty() ? "" : ", ") + std::to_string(k);
  if (!bad.empty()) throw RangeError("displacement exceeds the declared margin at frames " + bad);
}

Point signed_shift(const Point& E, bool inverse) {
  return inverse ? Point{-E[0], -E[1], -E[2]} : E;
}

}  // namespace

DriftCurve displacement(const std::vector<double>& times, const std::vector<Point>& g, int dim) {
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw ParameterError("drift times must be strictly increasing");
  DriftCurve c;
  c.times = times;
  c.g = g;
  c.E = cumulative_trapezoid(times, g, dim);
  return c;
}

DriftCurve read_drift_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open drift file " + path, 0);
  std::vector<double> t;
  std::vector<Point> g;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ss, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("drift file line " + std::to_string(lineno) + ": bad number", 0);
      }
    }
    if (static_cast<int>(vals.size()) != dim + 1)
      throw IoError("drift file line " + std::to_string(lineno) + ": expected t and " +
                        std::to_string(dim) + " components", 0);
    t.push_back(vals[0]);
    Point p{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) p[a] = vals[static_cast<std::size_t>(a) + 1];
    g.push_back(p);
  }
  return displacement(t, g, dim);
}

ScalarField shift_field(const ScalarField& f, const Point& shift, Interpolation kind) {
  const Grid& g = f.grid();
  if (shift[0] == 0.0 && shift[1] == 0.0 && shift[2] == 0.0) return f;
  return ScalarField::sample(
      g,
      [&](const Point& x) {
        return interpolate(f, {x[0] - shift[0], x[1] - shift[1], x[2] - shift[2]}, kind);
      },
      f.time());
}

VectorSeries galilean_transform(const VectorSeries& u, const DriftCurve& drift,
                                const GalileanOptions& opts) {
  const int d = u.grid().dim;
  check_margin(drift, u.times(), opts.margin, d);
  std::vector<VectorField> out;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Point s = signed_shift(drift.E[k], opts.inverse);
    std::vector<ScalarField> comps;
    for (int a = 0; a < d; ++a) comps.push_back(shift_field(u[k][a], s, opts.interpolation));
    Point c{0.0, 0.0, 0.0};
    for (int a = 0; a < d; ++a) c[a] = opts.inverse ? -drift.g[k][a] : drift.g[k][a];
    out.push_back(add_constant(VectorField(std::move(comps)), c));
  }
  return VectorSeries(std::move(out));
}

ScalarSeries galilean_pressure(const ScalarSeries& p, const DriftCurve& drift,
                               const GalileanOptions& opts) {
  check_margin(drift, p.times(), opts.margin, p.grid().dim);
  std::vector<ScalarField> out;
  for (std::size_t k = 0; k < p.size(); ++k)
    out.push_back(shift_field(p[k], signed_shift(drift.E[k], opts.inverse), opts.interpolation));
  return ScalarSeries(std::move(out));
}

int valid_ring(const Grid& g, const DriftCurve& drift, int stencil) {
  double emax = 0.0;
  for (const Point& e : drift.E)
    for (int a = 0; a < g.dim; ++a) emax = std::max(emax, std::abs(e[a]));
  return static_cast<int>(std::ceil(emax / g.spacing())) + stencil;
}

}  // namespace wsp
