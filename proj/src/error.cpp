#include "knead/error.hpp"

namespace knead {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::overlapping_intervals: return "OverlappingIntervals";
    case Errc::boundary_not_critical: return "BoundaryNotCritical";
    case Errc::image_escapes_omega: return "ImageEscapesOmega";
    case Errc::non_monotone_branch: return "NonMonotoneBranch";
    case Errc::not_critical: return "NotCritical";
    case Errc::lap_budget_exceeded: return "LapBudgetExceeded";
    case Errc::point_outside_omega: return "PointOutsideOmega";
    case Errc::unknown_boundary_point: return "UnknownBoundaryPoint";
    case Errc::inconsistent_gluing: return "InconsistentGluing";
    case Errc::vertex_not_covered: return "VertexNotCovered";
    case Errc::interior_residue: return "InteriorResidue";
    case Errc::not_in_cycle_space: return "NotInCycleSpace";
    case Errc::non_unit_constant_term: return "NonUnitConstantTerm";
    case Errc::wrong_constant_term: return "WrongConstantTerm";
    case Errc::degree_too_small: return "DegreeTooSmall";
    case Errc::unstable_root: return "UnstableRoot";
    case Errc::identity_violated: return "IdentityViolated";
    case Errc::infinite_fixed_set: return "InfiniteFixedSet";
    case Errc::parse_error: return "ParseError";
    case Errc::semantic_error: return "SemanticError";
  }
  return "UnknownError";
}

}  // namespace knead
