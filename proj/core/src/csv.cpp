#include "abf/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "abf/error.hpp"

namespace abf {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::string& schema,
                     const std::vector<std::string>& columns)
    : out_(path), columns_(columns.size()) {
  if (!out_) throw Error("cannot open " + path.string() + " for writing");
  out_ << "# abf-csv v" << kCsvSchemaVersion << ' ' << schema << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != columns_) throw UsageError("CSV row has wrong number of columns");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
}

std::vector<std::string> particle_columns(std::size_t dimension) {
  std::vector<std::string> cols{"step", "time", "particle"};
  for (std::size_t i = 0; i < dimension; ++i) cols.push_back("x" + std::to_string(i + 1));
  return cols;
}

void append_particles(CsvWriter& writer, const ParticleEnsemble& ens) {
  std::vector<double> row(3 + ens.dimension);
  for (std::size_t n = 0; n < ens.size(); ++n) {
    row[0] = static_cast<double>(ens.step);
    row[1] = ens.time;
    row[2] = static_cast<double>(n);
    const auto x = ens.particle(n);
    std::copy(x.begin(), x.end(), row.begin() + 3);
    writer.row(row);
  }
}

void write_particles(const std::filesystem::path& path, const ParticleEnsemble& ens) {
  CsvWriter w(path, "particles", particle_columns(ens.dimension));
  append_particles(w, ens);
}

void write_profiles(const std::filesystem::path& path, const std::string& schema,
                    const std::vector<std::string>& names, const std::vector<const MeanForceProfile*>& profiles) {
  if (profiles.empty() || names.size() != profiles.size()) throw UsageError("write_profiles: names/profiles mismatch");
  std::vector<std::string> cols{"z"};
  cols.insert(cols.end(), names.begin(), names.end());
  CsvWriter w(path, schema, cols);
  const auto& grid = profiles.front()->grid;
  for (const auto* p : profiles)
    if (!(p->grid == grid)) throw UsageError("write_profiles: profiles on different grids");
  std::vector<double> row(cols.size());
  for (std::size_t i = 0; i < grid.size; ++i) {
    row[0] = grid.node(i);
    for (std::size_t k = 0; k < profiles.size(); ++k) row[k + 1] = profiles[k]->values[i];
    w.row(row);
  }
}

ParticleEnsemble read_particles(const std::filesystem::path& path, double period) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t dim = 0;
  ParticleEnsemble ens;
  ens.period = period;
  std::uint64_t last_step = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      std::size_t cols = 1;
      for (char c : line) cols += c == ',';
      if (cols < 5) throw UsageError("particle CSV needs step,time,particle and at least two coordinates");
      dim = cols - 3;
      header = true;
      continue;
    }
    std::istringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (v.size() != dim + 3) throw UsageError("malformed particle CSV row");
    const auto step = static_cast<std::uint64_t>(v[0]);
    if (step != last_step || ens.streams.empty()) {
      if (step != last_step) {
        ens.positions.clear();
        ens.streams.clear();
      }
      last_step = step;
      ens.step = step;
      ens.time = v[1];
    }
    ens.streams.push_back(static_cast<std::uint32_t>(v[2]));
    ens.positions.insert(ens.positions.end(), v.begin() + 3, v.end());
  }
  ens.dimension = dim;
  return ens;
}

}  // namespace abf
