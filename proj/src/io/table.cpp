#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "duality/io.hpp"
#include "duality/methods.hpp"

namespace duality::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') out = out.substr(1, out.size() - 2);
  return out;
}

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = trim(line);
    if (!t.empty() && t.front() != '#') out.push_back(std::move(line));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(std::string_view(line).substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

char resolve_delimiter(std::optional<char> forced, const std::string& first_line,
                       std::string_view source) {
  if (forced) {
    if (*forced != ',' && *forced != '\t')
      throw Error(Errc::parse, std::string(source) + ": unsupported delimiter '" +
                                   std::string(1, *forced) + "' (use ',' or tab)");
    return *forced;
  }
  if (first_line.find('\t') != std::string::npos) return '\t';
  if (first_line.find(',') != std::string::npos) return ',';
  throw Error(Errc::parse, std::string(source) +
                               ": cannot detect the delimiter (expected ',' or tab separated fields)");
}

double parse_number(const std::string& cell, std::string_view source, const std::string& row,
                    const std::string& col) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = cell.data() + cell.size();
  if (!cell.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (cell.empty() || ec != std::errc() || ptr != end)
    throw Error(Errc::parse, std::string(source) + ": row '" + row + "', column '" + col +
                                 "': cannot parse '" + cell + "' as a number");
  return v;
}

void reject_duplicates(const std::vector<std::string>& labels, std::string_view what,
                       std::string_view source) {
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second)
      throw Error(Errc::parse, std::string(source) + ": duplicate " + std::string(what) +
                                   " label '" + l + "'");
}

}  // namespace

Dataset parse_table(std::string_view text, DatasetKind kind, std::optional<char> delimiter,
                    std::string_view source) {
  if (kind == DatasetKind::edges)
    throw Error(Errc::invalid_argument, "edge lists are read with read_edges");
  const auto lines = lines_of(text);
  if (lines.size() < 2) throw Error(Errc::parse, std::string(source) + ": table is empty");
  const char delim = resolve_delimiter(delimiter, lines.front(), source);

  auto header = split(lines.front(), delim);
  if (header.size() < 2)
    throw Error(Errc::parse, std::string(source) + ": table has no data columns");
  std::vector<std::string> cols(header.begin() + 1, header.end());
  reject_duplicates(cols, "column", source);

  std::vector<std::string> rows;
  std::vector<std::vector<std::string>> cells;
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto fields = split(lines[li], delim);
    if (fields.size() != header.size())
      throw Error(Errc::parse, std::string(source) + ": line " + std::to_string(li + 1) + " ('" +
                                   fields.front() + "') has " + std::to_string(fields.size()) +
                                   " fields, header has " + std::to_string(header.size()));
    rows.push_back(fields.front());
    cells.emplace_back(fields.begin() + 1, fields.end());
  }
  reject_duplicates(rows, "row", source);

  Dataset ds;
  ds.kind = kind;
  ds.row_labels = rows;
  if (kind == DatasetKind::groups) {
    if (cols.size() != 1)
      throw Error(Errc::parse, std::string(source) + ": group file needs exactly one label column");
    std::vector<std::string> per_row;
    for (const auto& c : cells) per_row.push_back(c.front());
    const GroupCoding g = GroupCoding::from_labels(per_row);
    ds.matrix = g.indicator();
    ds.col_labels = g.group_labels();
    return ds;
  }

  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = parse_number(cells[i][j], source, rows[i], cols[j]);

  if (kind == DatasetKind::contingency) {
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i)
        if (m(i, j) < 0.0)
          throw Error(Errc::parse, std::string(source) + ": row '" + rows[static_cast<std::size_t>(i)] +
                                       "', column '" + cols[static_cast<std::size_t>(j)] +
                                       "': negative count");
    std::vector<std::string> dropped;
    const auto table = ContingencyTable::make_filtered(m, rows, cols, &dropped);
    for (const auto& d : dropped) ds.warnings.push_back("dropped all-zero " + d);
    ds.matrix = table.counts();
    ds.row_labels = table.row_labels();
    ds.col_labels = table.col_labels();
    return ds;
  }
  ds.matrix = std::move(m);
  ds.col_labels = std::move(cols);
  return ds;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Dataset read_table(const std::filesystem::path& path, DatasetKind kind,
                   std::optional<char> delimiter) {
  return parse_table(read_file(path), kind, delimiter, path.string());
}

Graph parse_edges(std::string_view text, std::optional<char> delimiter, std::string_view source) {
  auto lines = lines_of(text);
  if (lines.empty()) throw Error(Errc::parse, std::string(source) + ": edge list is empty");
  const char delim = resolve_delimiter(delimiter, lines.front(), source);

  static const std::set<std::pair<std::string, std::string>> headers = {
      {"source", "target"}, {"from", "to"}, {"node1", "node2"}, {"u", "v"}};
  std::size_t first = 0;
  {
    auto f = split(lines.front(), delim);
    if (f.size() == 2) {
      for (auto& s : f) std::transform(s.begin(), s.end(), s.begin(), ::tolower);
      if (headers.count({f[0], f[1]})) first = 1;
    }
  }

  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t li = first; li < lines.size(); ++li) {
    const auto f = split(lines[li], delim);
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw Error(Errc::parse, std::string(source) + ": line " + std::to_string(li + 1) +
                                   " is not a pair of node labels");
    if (f[0] == f[1])
      throw Error(Errc::parse, std::string(source) + ": line " + std::to_string(li + 1) +
                                   ": self loop on node '" + f[0] + "'");
    edges.emplace_back(f[0], f[1]);
  }
  return Graph::from_edges(edges);
}

Graph read_edges(const std::filesystem::path& path, std::optional<char> delimiter) {
  return parse_edges(read_file(path), delimiter, path.string());
}

Vector read_weights(const std::filesystem::path& path, const std::vector<std::string>& row_labels,
                    std::optional<char> delimiter) {
  const Dataset ds = read_table(path, DatasetKind::measurements, delimiter);
  if (ds.matrix.cols() != 1)
    throw Error(Errc::parse, path.string() + ": weight file needs exactly one value column");
  Vector w(static_cast<Index>(row_labels.size()));
  for (std::size_t i = 0; i < row_labels.size(); ++i) {
    const auto it = std::find(ds.row_labels.begin(), ds.row_labels.end(), row_labels[i]);
    if (it == ds.row_labels.end())
      throw Error(Errc::parse, path.string() + ": no weight for row '" + row_labels[i] + "'");
    w(static_cast<Index>(i)) = ds.matrix(it - ds.row_labels.begin(), 0);
  }
  return w;
}

}  // namespace duality::io
