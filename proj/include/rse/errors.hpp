#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rse {

struct DimensionMismatch : std::invalid_argument {
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) + " vs " +
                              std::to_string(rhs)) {}
};

struct NotAComponent : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NegativeInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised by validate_ceps. `witness` is the basis index j with T S d_j != T d_j.
struct NotMeasurePreserving : std::invalid_argument {
  NotMeasurePreserving(std::size_t witness_index, const std::string& detail)
      : std::invalid_argument("T S != T on basis vector " + std::to_string(witness_index) +
                              (detail.empty() ? "" : ": " + detail)),
        witness(witness_index) {}
  std::size_t witness;
};

/// Raised when prefix Cesaro averages fail the vanishing diagnostic.
struct CesaroNotVanishing : std::runtime_error {
  CesaroNotVanishing(std::size_t checkpoint_index, std::size_t coordinate_index,
                     const std::string& average)
      : std::runtime_error("Cesaro averages do not vanish: coordinate " +
                           std::to_string(coordinate_index) + " stalls at " + average +
                           " at checkpoint " + std::to_string(checkpoint_index)),
        checkpoint(checkpoint_index),
        coordinate(coordinate_index),
        stalled_average(average) {}
  std::size_t checkpoint;
  std::size_t coordinate;
  std::string stalled_average;
};

}  // namespace rse
