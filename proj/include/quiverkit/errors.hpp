#pragma once

#include <stdexcept>
#include <string>

namespace quiverkit {

/// Failure codes surfaced through Error; the CLI prints the code name verbatim.
enum class errc {
  non_prime_modulus,
  not_squarefree,
  malformed_descriptor,
  dimension_mismatch,
  syntax_error,
  unknown_vertex,
  non_composable_path,
  non_parallel_relation,
  not_admissible_length_one,
  not_admissible_cap_exceeded,
  positive_characteristic,
  non_split_semisimple_quotient,
  radical_unavailable,
  center_not_split,
  cap_too_small,
  inseparable_polynomial,
  dictionary_unavailable,
  not_applicable,
  budget_exceeded,
  infinite_field_unsupported,
  depth_insufficient,
  path_budget_exceeded,
  invalid_argument,
};

const char* errc_name(errc code);

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw Error(code, message); }

}  // namespace quiverkit
