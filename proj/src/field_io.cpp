#include "wsp/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace wsp {

namespace {

constexpr char kMagic[4] = {'F', 'L', 'D', '1'};

template <class T>
void put(std::ostream& os, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t a = 0, b = sizeof(T) - 1; a < b; ++a, --b) std::swap(bytes[a], bytes[b]);
  os.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}

  bool at_end() {
    return is_.peek() == std::char_traits<char>::eof();
  }

  std::uint64_t offset() const { return offset_; }

  void bytes(char* out, std::size_t n, const char* what) {
    is_.read(out, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is_.gcount()) != n)
      throw IoError(std::string("truncated FLD1 data while reading ") + what,
                    offset_ + static_cast<std::uint64_t>(is_.gcount()));
    offset_ += n;
  }

  template <class T>
  T get(const char* what) {
    unsigned char raw[sizeof(T)];
    bytes(reinterpret_cast<char*>(raw), sizeof(T), what);
    if constexpr (std::endian::native == std::endian::big)
      for (std::size_t a = 0, b = sizeof(T) - 1; a < b; ++a, --b) std::swap(raw[a], raw[b]);
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
  }

 private:
  std::istream& is_;
  std::uint64_t offset_ = 0;
};

std::size_t kind_components(FieldKind kind, int dim) {
  switch (kind) {
    case FieldKind::Scalar: return 1;
    case FieldKind::Vector: return static_cast<std::size_t>(dim);
    case FieldKind::Tensor: return static_cast<std::size_t>(dim * dim);
  }
  return 0;
}

FieldRecord make_record(FieldKind kind, const std::vector<ScalarField>& comps) {
  const Grid& g = comps.front().grid();
  if (g.origin != Point{0.0, 0.0, 0.0})
    throw ParameterError("FLD1 stores grids centred at the origin only");
  FieldRecord r;
  r.kind = kind;
  r.grid = g;
  r.time = comps.front().time();
  r.payload.reserve(g.size() * comps.size());
  for (const auto& c : comps) r.payload.insert(r.payload.end(), c.values().begin(), c.values().end());
  return r;
}

std::vector<ScalarField> split(const FieldRecord& r, FieldKind expected) {
  if (r.kind != expected)
    throw StructuralError("FLD1 record kind " + std::to_string(static_cast<int>(r.kind)) +
                          " does not match the requested field kind");
  const std::size_t n = r.grid.size();
  std::vector<ScalarField> comps;
  for (std::size_t c = 0; c < r.component_count(); ++c)
    comps.emplace_back(r.grid,
                       std::vector<double>(r.payload.begin() + static_cast<std::ptrdiff_t>(c * n),
                                           r.payload.begin() + static_cast<std::ptrdiff_t>((c + 1) * n)),
                       r.time);
  return comps;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path, 0);
  return is;
}

template <class FieldT, class Conv>
TimeSeries<FieldT> read_series(const std::string& path, Conv conv) {
  std::vector<FieldT> frames;
  for (const auto& r : read_records(path)) frames.push_back(conv(r));
  return TimeSeries<FieldT>(std::move(frames));
}

template <class Series>
void write_any_series(const std::string& path, const Series& s) {
  std::vector<FieldRecord> recs;
  for (const auto& f : s.frames()) recs.push_back(to_record(f));
  write_records(path, recs);
}

}  // namespace

std::size_t FieldRecord::component_count() const { return kind_components(kind, grid.dim); }

FieldRecord to_record(const ScalarField& f) { return make_record(FieldKind::Scalar, {f}); }
FieldRecord to_record(const VectorField& f) { return make_record(FieldKind::Vector, f.components()); }
FieldRecord to_record(const TensorField& f) { return make_record(FieldKind::Tensor, f.components()); }

ScalarField scalar_from_record(const FieldRecord& r) { return split(r, FieldKind::Scalar).front(); }
VectorField vector_from_record(const FieldRecord& r) { return VectorField(split(r, FieldKind::Vector)); }

TensorField tensor_from_record(const FieldRecord& r) {
  auto comps = split(r, FieldKind::Tensor);
  const int d = r.grid.dim;
  bool sym = true;
  for (int i = 0; i < d && sym; ++i)
    for (int j = i + 1; j < d && sym; ++j) {
      const auto& a = comps[static_cast<std::size_t>(i * d + j)];
      const auto& b = comps[static_cast<std::size_t>(j * d + i)];
      for (std::size_t n = 0; n < a.size(); ++n)
        if (a[n] != b[n]) {
          sym = false;
          break;
        }
    }
  return TensorField(std::move(comps), sym);
}

void write_record(std::ostream& os, const FieldRecord& r) {
  if (r.payload.size() != r.grid.size() * r.component_count())
    throw StructuralError("FLD1 payload length does not match its header");
  os.write(kMagic, 4);
  put<std::uint32_t>(os, r.version);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(r.grid.dim));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(r.kind));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(r.grid.points));
  put<double>(os, r.grid.half_width);
  put<double>(os, r.time);
  if (r.version >= 2) {
    put<std::uint32_t>(os, r.kernel_id);
    put<std::uint32_t>(os, r.index_tuple);
  }
  for (double v : r.payload) put<double>(os, v);
}

std::vector<FieldRecord> read_records(std::istream& is) {
  Reader rd(is);
  std::vector<FieldRecord> out;
  while (!rd.at_end()) {
    const std::uint64_t start = rd.offset();
    char magic[4];
    rd.bytes(magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0) throw IoError("bad FLD1 magic", start);
    FieldRecord r;
    r.version = rd.get<std::uint32_t>("version");
    if (r.version != 1 && r.version != 2)
      throw IoError("unsupported FLD1 version " + std::to_string(r.version), rd.offset() - 4);
    const auto dim = rd.get<std::uint32_t>("dim");
    const auto kind = rd.get<std::uint32_t>("kind");
    if (kind > 2) throw IoError("unknown FLD1 field kind " + std::to_string(kind), rd.offset() - 4);
    const auto points = rd.get<std::uint32_t>("points");
    const double half_width = rd.get<double>("half-width");
    r.time = rd.get<double>("time");
    if (r.version >= 2) {
      r.kernel_id = rd.get<std::uint32_t>("kernel id");
      r.index_tuple = rd.get<std::uint32_t>("index tuple");
    }
    r.kind = static_cast<FieldKind>(kind);
    r.grid = Grid{static_cast<int>(dim), half_width, static_cast<int>(points), {0.0, 0.0, 0.0}};
    try {
      r.grid.validate();
    } catch (const ParameterError& e) {
      throw IoError(std::string("invalid FLD1 grid header: ") + e.what(), start);
    }
    const std::size_t count = r.grid.size() * r.component_count();
    r.payload.resize(count);
    for (std::size_t k = 0; k < count; ++k) r.payload[k] = rd.get<double>("payload");
    out.push_back(std::move(r));
  }
  if (out.empty()) throw IoError("empty FLD1 stream", 0);
  return out;
}

void write_records(const std::string& path, const std::vector<FieldRecord>& records) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path + " for writing", 0);
  for (const auto& r : records) write_record(os, r);
  if (!os) throw IoError("write failed for " + path, static_cast<std::uint64_t>(os.tellp()));
}

std::vector<FieldRecord> read_records(const std::string& path) {
  auto is = open_in(path);
  return read_records(is);
}

ScalarSeries read_scalar_series(const std::string& path) {
  return read_series<ScalarField>(path, scalar_from_record);
}
VectorSeries read_vector_series(const std::string& path) {
  return read_series<VectorField>(path, vector_from_record);
}
TensorSeries read_tensor_series(const std::string& path) {
  return read_series<TensorField>(path, tensor_from_record);
}

void write_series(const std::string& path, const ScalarSeries& s) { write_any_series(path, s); }
void write_series(const std::string& path, const VectorSeries& s) { write_any_series(path, s); }
void write_series(const std::string& path, const TensorSeries& s) { write_any_series(path, s); }

}  // namespace wsp
