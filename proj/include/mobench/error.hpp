#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mobench {

enum class Errc {
  malformed_xml,
  empty_dump,
  not_checkable,
  non_positive_before,
  unknown_id,
  schema_error,
  dangling_transition,
  missing_initial_state,
  episode_closed,
  unknown_transition,
  irreducible_prompt,
  backend_unavailable,
  gamma_out_of_range,
  empty_trajectory,
  too_short,
  degenerate_variance,
  no_tasks_for_app,
  arity_error,
  empty_index,
  empty_response,
  io_error,
  config_error,
  missing_gold,
};

std::string_view errc_name(Errc code);

// Single exception type for the library; the code says which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace mobench
