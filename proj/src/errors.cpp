#include "choquet/errors.hpp"

namespace choquet {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::not_grounded: return "NotGrounded";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::not_monotone: return "NotMonotone";
    case Errc::missing_event: return "MissingEvent";
    case Errc::invalid_value: return "InvalidValue";
    case Errc::invalid_probability: return "InvalidProbability";
    case Errc::space_mismatch: return "SpaceMismatch";
    case Errc::partition_mismatch: return "PartitionMismatch";
    case Errc::gap_or_overlap: return "GapOrOverlap";
    case Errc::block_count_mismatch: return "BlockCountMismatch";
    case Errc::invalid_level: return "InvalidLevel";
    case Errc::out_of_domain: return "OutOfDomain";
    case Errc::not_concave: return "NotConcave";
    case Errc::not_comonotonic: return "NotComonotonic";
    case Errc::negative_input: return "NegativeInput";
    case Errc::invalid_weight: return "InvalidWeight";
    case Errc::invalid_ranking: return "InvalidRanking";
    case Errc::well_definedness_violation: return "WellDefinednessViolation";
    case Errc::characterization_mismatch: return "CharacterizationMismatch";
    case Errc::syntax_error: return "SyntaxError";
    case Errc::schema_error: return "SchemaError";
    case Errc::validation_error: return "ValidationError";
    case Errc::plugin_failure: return "PluginFailure";
    case Errc::usage_error: return "UsageError";
  }
  return "Error";
}

}  // namespace choquet
