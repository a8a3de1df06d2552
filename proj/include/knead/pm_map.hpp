#ifndef KNEAD_PM_MAP_HPP
#define KNEAD_PM_MAP_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "knead/formal.hpp"
#include "knead/rational.hpp"

namespace knead {

enum class Side { minus, plus };

struct Interval {
  Rational lo, hi;
};

// Finite disjoint union of compact intervals with exact rational endpoints.
class Omega {
public:
  explicit Omega(std::vector<Interval> intervals);

  const std::vector<Interval>& intervals() const { return iv_; }
  int size() const { return static_cast<int>(iv_.size()); }

  // Index of the interval containing x, or -1.
  int interval_index(const Rational& x) const;
  bool contains(const Rational& x) const { return interval_index(x) >= 0; }
  bool is_boundary(const Rational& x) const;
  bool is_left_endpoint(const Rational& x) const;
  bool is_right_endpoint(const Rational& x) const;
  std::vector<Rational> boundary_points() const;

private:
  std::vector<Interval> iv_;
};

struct Branch {
  Rational lo, hi;        // open interval of definition ]lo, hi[
  Rational slope, intercept;
  int sign;               // sgn(slope)

  Rational eval(const Rational& x) const { return slope * x + intercept; }
};

// Piecewise-affine strictly monotone map F: Omega \ C_F -> Omega with exact
// rational data. Immutable after validation.
class PMMap {
public:
  // Branch rules are (slope, intercept) pairs in left-to-right order, one
  // per gap between consecutive critical points inside an interval.
  static PMMap validate(Omega domain, std::vector<Rational> critical_points,
                        const std::vector<std::pair<Rational, Rational>>& rules);

  const Omega& domain() const { return domain_; }
  const std::vector<Rational>& critical_points() const { return critical_; }
  const std::vector<Branch>& branches() const { return branches_; }

  bool is_critical(const Rational& x) const;
  // Branch whose open interval contains x; x must not be critical.
  const Branch& branch_at(const Rational& x) const;
  // Branch adjacent to x on the given side within the same interval of
  // Omega, or nullptr when x sits at that end of its interval.
  const Branch* branch_on_side(const Rational& x, Side side) const;

  Rational eval(const Rational& x) const { return branch_at(x).eval(x); }

  // One-sided limit (F(x-) or F(x+)) with the adjacent branch sign, or
  // nullopt when there is no adjacent branch on that side.
  std::optional<std::pair<Rational, int>> one_sided(const Rational& x, Side side) const;

private:
  PMMap(Omega domain, std::vector<Rational> critical, std::vector<Branch> branches)
      : domain_(std::move(domain)), critical_(std::move(critical)), branches_(std::move(branches)) {}

  Omega domain_;
  std::vector<Rational> critical_;
  std::vector<Branch> branches_;
};

// One-sided critical value as a one-term formal vector; the zero vector at
// the boundary convention cases. Requires c in C_F.
FormalVector one_sided_value(const PMMap& f, const Rational& c, Side side);

struct Lap {
  Rational lo, hi;
  Rational slope, intercept;  // affine rule of F^n on ]lo, hi[
  int level;

  int sign() const { return sgn(slope); }
  Rational eval(const Rational& x) const { return slope * x + intercept; }
  Rational image_left() const { return slope * lo + intercept; }   // F^n(lo+)
  Rational image_right() const { return slope * hi + intercept; }  // F^n(hi-)
};

// Laps of F^n in increasing order. Throws LapBudgetExceeded when any level
// up to n needs more than `budget` laps.
std::vector<Lap> laps(const PMMap& f, int n, long budget);

// Streaming enumeration: callback per lap for every level 1..n_max, keeping
// only one level in memory.
void scan_laps(const PMMap& f, int n_max, long budget,
               const std::function<void(const Lap&)>& callback);

struct LapStats {
  long lap_count = 0;
  Rational variation;              // sum of image lengths
  long fix_neg = 0;                // interior diagonal crossings on decreasing laps
  long fix_crossings = 0;          // interior diagonal crossings on all laps (slope != 1)
  bool diagonal_segment = false;   // some slope-1 lap lies on the diagonal
  LapStats() : variation(0) {}
};

// Per-level statistics for n = 1..n_max (index 0 -> n=1).
std::vector<LapStats> lap_statistics(const PMMap& f, int n_max, long budget);

long lap_count(const PMMap& f, int n, long budget);
Rational variation(const PMMap& f, int n, long budget);

// The iterate F^n as a PMMap (critical set C_{F^n}, one branch per lap).
PMMap iterate_map(const PMMap& f, int n, long budget);

struct OrbitEntry {
  Rational point;
  int sign;  // product of branch signs before this point
};

// Orbit of a start point under F with cumulative signs; terminates with the
// first critical entry (later terms are the zero vector).
std::vector<OrbitEntry> signed_orbit(const PMMap& f, const Rational& start, int horizon);

}  // namespace knead

#endif
