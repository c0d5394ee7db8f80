#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>

#include "duality/io.hpp"

namespace duality::io {

namespace {

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);  // + 0.0 turns −0 into 0
  return buf;
}

}  // namespace

std::string format_matrix_tsv(const Matrix& values, const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels, std::string_view corner) {
  if (static_cast<Index>(row_labels.size()) != values.rows() ||
      static_cast<Index>(col_labels.size()) != values.cols())
    throw Error(Errc::dimension_mismatch, "labels do not match the matrix being written");
  std::string out(corner);
  for (const auto& c : col_labels) out += "\t" + c;
  out += "\n";
  for (Index i = 0; i < values.rows(); ++i) {
    out += row_labels[static_cast<std::size_t>(i)];
    for (Index j = 0; j < values.cols(); ++j) out += "\t" + exact(values(i, j));
    out += "\n";
  }
  return out;
}

std::string format_scree_tsv(const ScreeTable& scree) {
  std::string out = "axis\teigenvalue\tinertia_pct\tcumulative_pct\n";
  for (const auto& r : scree.rows)
    out += std::to_string(r.axis) + "\t" + exact(r.eigenvalue) + "\t" + exact(r.inertia_pct) +
           "\t" + exact(r.cumulative_pct) + "\n";
  return out;
}

std::string format_scree(const ScreeTable& scree) {
  std::string out = "axis\teigenvalue\tinertia%\tcumulative%\n";
  for (const auto& r : scree.rows)
    out += std::to_string(r.axis) + "\t" + fixed(r.eigenvalue, 5) + "\t" +
           fixed(r.inertia_pct, 2) + "\t" + fixed(r.cumulative_pct, 2) + "\n";
  out += "total inertia: " + fixed(scree.total, 5) + "\n";
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(Errc::io, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::io, "cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace duality::io
