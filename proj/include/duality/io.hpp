#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "duality/graph.hpp"
#include "duality/scree.hpp"

namespace duality::io {

enum class DatasetKind { measurements, contingency, groups, edges };

/// A labelled table. For `groups` the matrix is the zero/one indicator coding and
/// col_labels are the group names.
struct Dataset {
  Matrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  DatasetKind kind = DatasetKind::measurements;
  std::vector<std::string> warnings;
};

/// Reads a delimited table whose first row holds column labels and whose first
/// column holds row labels. The delimiter is ',' or '\t', detected from the
/// header unless given. Contingency input drops all-zero rows and columns and
/// records a warning for each.
Dataset read_table(const std::filesystem::path& path, DatasetKind kind,
                   std::optional<char> delimiter = {});
Dataset parse_table(std::string_view text, DatasetKind kind, std::optional<char> delimiter = {},
                    std::string_view source = "<input>");

/// Two-column edge list of node labels. A first line of recognised column names
/// (source/target, from/to, node1/node2, u/v) is skipped, as are blank lines and
/// lines starting with '#'.
Graph read_edges(const std::filesystem::path& path, std::optional<char> delimiter = {});
Graph parse_edges(std::string_view text, std::optional<char> delimiter = {},
                  std::string_view source = "<input>");

/// Reads a `label,weight` table and returns the weights in the order of `row_labels`.
Vector read_weights(const std::filesystem::path& path, const std::vector<std::string>& row_labels,
                    std::optional<char> delimiter = {});

/// Tab-separated matrix with a header row, values printed with 17 significant digits.
std::string format_matrix_tsv(const Matrix& values, const std::vector<std::string>& row_labels,
                              const std::vector<std::string>& col_labels,
                              std::string_view corner = "label");

std::string format_scree_tsv(const ScreeTable& scree);

/// Human-readable scree: eigenvalues to 5 decimals, percentages to 2.
std::string format_scree(const ScreeTable& scree);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace duality::io
