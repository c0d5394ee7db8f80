#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>

namespace duality {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class Errc {
  dimension_mismatch,
  not_symmetric,
  not_positive_definite,
  singular,
  invalid_argument,
  disconnected,
  numerical,
  parse,
  io,
};

/// Every failure in the library surfaces as this exception. `index` carries the
/// offending pivot, row, column or node when one exists.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<Index> index = {})
      : std::runtime_error(what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }
  std::optional<Index> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<Index> index_;
};

}  // namespace duality
