#pragma once

#include <stdexcept>
#include <string>

namespace choquet {

/// Error categories raised by the library. Each carries a human-readable
/// message; witnesses (offending events, parameters) are formatted into it.
enum class Errc {
  not_grounded,
  not_normalized,
  not_monotone,
  missing_event,
  invalid_value,
  invalid_probability,
  space_mismatch,
  partition_mismatch,
  gap_or_overlap,
  block_count_mismatch,
  invalid_level,
  out_of_domain,
  not_concave,
  not_comonotonic,
  negative_input,
  invalid_weight,
  invalid_ranking,
  well_definedness_violation,
  characterization_mismatch,
  syntax_error,
  schema_error,
  validation_error,
  plugin_failure,
  usage_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace choquet
