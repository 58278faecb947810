#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wsp/field.hpp"

namespace wsp {

enum class FieldKind : std::uint32_t { Scalar = 0, Vector = 1, Tensor = 2 };

/// One FLD1 record. Version 2 records carry a kernel id and a packed index
/// tuple after the common header; version 1 records leave both at zero.
struct FieldRecord {
  std::uint32_t version = 1;
  FieldKind kind = FieldKind::Scalar;
  Grid grid{};
  double time = 0.0;
  std::uint32_t kernel_id = 0;
  std::uint32_t index_tuple = 0;
  std::vector<double> payload;

  std::size_t component_count() const;
};

FieldRecord to_record(const ScalarField& f);
FieldRecord to_record(const VectorField& f);
FieldRecord to_record(const TensorField& f);

ScalarField scalar_from_record(const FieldRecord& r);
VectorField vector_from_record(const FieldRecord& r);
/// The symmetry flag is set when the stored components are exactly symmetric.
TensorField tensor_from_record(const FieldRecord& r);

void write_record(std::ostream& os, const FieldRecord& r);
/// Reads records until end of stream. Truncated or inconsistent data raises
/// IoError carrying the byte offset where parsing stopped.
std::vector<FieldRecord> read_records(std::istream& is);

void write_records(const std::string& path, const std::vector<FieldRecord>& records);
std::vector<FieldRecord> read_records(const std::string& path);

ScalarSeries read_scalar_series(const std::string& path);
VectorSeries read_vector_series(const std::string& path);
TensorSeries read_tensor_series(const std::string& path);

void write_series(const std::string& path, const ScalarSeries& s);
void write_series(const std::string& path, const VectorSeries& s);
void write_series(const std::string& path, const TensorSeries& s);

}  // namespace wsp
