#ifndef KNEAD_ERROR_HPP
#define KNEAD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace knead {

enum class Errc {
  overlapping_intervals,
  boundary_not_critical,
  image_escapes_omega,
  non_monotone_branch,
  not_critical,
  lap_budget_exceeded,
  point_outside_omega,
  unknown_boundary_point,
  inconsistent_gluing,
  vertex_not_covered,
  interior_residue,
  not_in_cycle_space,
  non_unit_constant_term,
  wrong_constant_term,
  degree_too_small,
  unstable_root,
  identity_violated,
  infinite_fixed_set,
  parse_error,
  semantic_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace knead

#endif
