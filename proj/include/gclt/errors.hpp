#pragma once

#include <stdexcept>
#include <string>

namespace gclt {

// Error taxonomy shared across the library.  The CLI maps categories to
// process exit codes: parse/validation -> 2, size limits -> 3, numeric or
// positivity trouble -> 4.
enum class errc {
  parse,
  io,
  size_limit,
  dimension_mismatch,
  asymmetric_input,
  range_violation,
  zero_total_weight,
  negative_values,
  quadrature_failure,
  encoding_error,
  label_out_of_range,
  index_out_of_range,
  zero_function,
  hankel_degenerate,
  grid_mismatch,
  positivity_violation,
  numeric_mismatch,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::parse: return "ParseError";
    case errc::io: return "IoError";
    case errc::size_limit: return "SizeLimit";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::asymmetric_input: return "AsymmetricInput";
    case errc::range_violation: return "RangeViolation";
    case errc::zero_total_weight: return "ZeroTotalWeight";
    case errc::negative_values: return "NegativeValues";
    case errc::quadrature_failure: return "QuadratureFailure";
    case errc::encoding_error: return "EncodingError";
    case errc::label_out_of_range: return "LabelOutOfRange";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::zero_function: return "ZeroFunction";
    case errc::hankel_degenerate: return "HankelDegenerate";
    case errc::grid_mismatch: return "GridMismatch";
    case errc::positivity_violation: return "PositivityViolation";
    case errc::numeric_mismatch: return "NumericMismatch";
  }
  return "Error";
}

inline int errc_exit_code(errc c) {
  switch (c) {
    case errc::size_limit:
      return 3;
    case errc::quadrature_failure:
    case errc::hankel_degenerate:
    case errc::positivity_violation:
    case errc::numeric_mismatch:
      return 4;
    default:
      return 2;
  }
}

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }
  int exit_code() const { return errc_exit_code(code_); }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace gclt
