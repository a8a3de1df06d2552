#include "knead/pm_map.hpp"

#include <algorithm>

#include "knead/error.hpp"

namespace knead {

Omega::Omega(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
  if (iv_.empty()) raise(Errc::overlapping_intervals, "Omega needs at least one interval");
  Rational prev;
  bool first = true;
  for (const auto& iv : iv_) {
    if (iv.lo >= iv.hi)
      raise(Errc::overlapping_intervals, "degenerate interval [" + to_string(iv.lo) + "," + to_string(iv.hi) + "]");
    if (!first && iv.lo <= prev)
      raise(Errc::overlapping_intervals, "intervals must be strictly increasing and disjoint");
    prev = iv.hi;
    first = false;
  }
}

int Omega::interval_index(const Rational& x) const {
  for (size_t i = 0; i < iv_.size(); ++i)
    if (x >= iv_[i].lo && x <= iv_[i].hi) return static_cast<int>(i);
  return -1;
}

bool Omega::is_boundary(const Rational& x) const { return is_left_endpoint(x) || is_right_endpoint(x); }

bool Omega::is_left_endpoint(const Rational& x) const {
  for (const auto& iv : iv_)
    if (iv.lo == x) return true;
  return false;
}

bool Omega::is_right_endpoint(const Rational& x) const {
  for (const auto& iv : iv_)
    if (iv.hi == x) return true;
  return false;
}

std::vector<Rational> Omega::boundary_points() const {
  std::vector<Rational> out;
  for (const auto& iv : iv_) {
    out.push_back(iv.lo);
    out.push_back(iv.hi);
  }
  return out;
}

PMMap PMMap::validate(Omega domain, std::vector<Rational> critical_points,
                      const std::vector<std::pair<Rational, Rational>>& rules) {
  std::sort(critical_points.begin(), critical_points.end());
  critical_points.erase(std::unique(critical_points.begin(), critical_points.end()), critical_points.end());

  for (const auto& c : critical_points)
    if (!domain.contains(c))
      raise(Errc::point_outside_omega, "critical point " + to_string(c) + " lies outside Omega");
  for (const auto& b : domain.boundary_points())
    if (!std::binary_search(critical_points.begin(), critical_points.end(), b))
      raise(Errc::boundary_not_critical, "boundary point " + to_string(b) + " is not critical");

  // Gaps between consecutive critical points within one interval, in order.
  std::vector<std::pair<Rational, Rational>> gaps;
  for (const auto& iv : domain.intervals()) {
    std::vector<Rational> cs;
    for (const auto& c : critical_points)
      if (c >= iv.lo && c <= iv.hi) cs.push_back(c);
    for (size_t k = 0; k + 1 < cs.size(); ++k) gaps.emplace_back(cs[k], cs[k + 1]);
  }
  if (gaps.size() != rules.size())
    raise(Errc::semantic_error, "expected " + std::to_string(gaps.size()) + " branch rules, got " +
                                    std::to_string(rules.size()));

  std::vector<Branch> branches;
  branches.reserve(rules.size());
  for (size_t k = 0; k < rules.size(); ++k) {
    const auto& [slope, intercept] = rules[k];
    if (sgn(slope) == 0)
      raise(Errc::non_monotone_branch, "branch " + std::to_string(k) + " has slope 0");
    Branch br{gaps[k].first, gaps[k].second, slope, intercept, sgn(slope)};
    Rational u = br.eval(br.lo), v = br.eval(br.hi);
    if (u > v) std::swap(u, v);
    int ia = domain.interval_index(u);
    if (ia < 0 || v > domain.intervals()[static_cast<size_t>(ia)].hi)
      raise(Errc::image_escapes_omega, "branch " + std::to_string(k) + " image [" + to_string(u) + "," +
                                           to_string(v) + "] escapes Omega");
    branches.push_back(std::move(br));
  }
  return PMMap(std::move(domain), std::move(critical_points), std::move(branches));
}

bool PMMap::is_critical(const Rational& x) const {
  return std::binary_search(critical_.begin(), critical_.end(), x);
}

const Branch& PMMap::branch_at(const Rational& x) const {
  // first branch with hi > x; valid since branches tile Omega minus C_F
  auto it = std::upper_bound(branches_.begin(), branches_.end(), x,
                             [](const Rational& v, const Branch& b) { return v < b.hi; });
  if (it == branches_.end() || x <= it->lo || x >= it->hi)
    raise(Errc::point_outside_omega, "no branch contains " + to_string(x));
  return *it;
}

const Branch* PMMap::branch_on_side(const Rational& x, Side side) const {
  int iv = domain_.interval_index(x);
  if (iv < 0) return nullptr;
  if (!is_critical(x)) return &branch_at(x);
  if (side == Side::minus) {
    if (domain_.intervals()[static_cast<size_t>(iv)].lo == x) return nullptr;
    for (const auto& b : branches_)
      if (b.hi == x) return &b;
  } else {
    if (domain_.intervals()[static_cast<size_t>(iv)].hi == x) return nullptr;
    for (const auto& b : branches_)
      if (b.lo == x) return &b;
  }
  return nullptr;
}

std::optional<std::pair<Rational, int>> PMMap::one_sided(const Rational& x, Side side) const {
  const Branch* b = branch_on_side(x, side);
  if (!b) return std::nullopt;
  return std::make_pair(b->eval(x), b->sign);
}

FormalVector one_sided_value(const PMMap& f, const Rational& c, Side side) {
  if (!f.is_critical(c)) raise(Errc::not_critical, to_string(c) + " is not a critical point");
  auto limit = f.one_sided(c, side);
  if (!limit) return FormalVector();  // v_c^- = 0 at a_i, v_c^+ = 0 at b_i
  return FormalVector::point(limit->first);
}

namespace {

std::vector<Lap> level_one(const PMMap& f) {
  std::vector<Lap> out;
  out.reserve(f.branches().size());
  for (const auto& b : f.branches()) out.push_back(Lap{b.lo, b.hi, b.slope, b.intercept, 1});
  return out;
}

// Refine the laps of F^k against the critical set of F: the laps of F^{k+1}.
std::vector<Lap> refine(const PMMap& f, const std::vector<Lap>& level, long budget) {
  std::vector<Lap> next;
  const auto& crit = f.critical_points();
  for (const auto& lap : level) {
    Rational u = lap.image_left(), v = lap.image_right();
    bool increasing = lap.slope > 0;
    if (!increasing) std::swap(u, v);
    // critical points strictly inside the image ]u, v[
    auto lo_it = std::upper_bound(crit.begin(), crit.end(), u);
    auto hi_it = std::lower_bound(crit.begin(), crit.end(), v);
    std::vector<Rational> cuts;
    for (auto it = lo_it; it != hi_it; ++it) cuts.push_back((*it - lap.intercept) / lap.slope);
    if (!increasing) std::reverse(cuts.begin(), cuts.end());

    Rational left = lap.lo;
    cuts.push_back(lap.hi);
    for (const auto& right : cuts) {
      Rational mid_image = lap.eval((left + right) / 2);
      const Branch& br = f.branch_at(mid_image);
      next.push_back(Lap{left, right, br.slope * lap.slope, br.slope * lap.intercept + br.intercept,
                         lap.level + 1});
      left = right;
    }
    if (static_cast<long>(next.size()) > budget)
      raise(Errc::lap_budget_exceeded,
            "more than " + std::to_string(budget) + " laps at level " + std::to_string(lap.level + 1));
  }
  return next;
}

}  // namespace

std::vector<Lap> laps(const PMMap& f, int n, long budget) {
  if (n < 1) raise(Errc::semantic_error, "lap level must be >= 1");
  std::vector<Lap> level = level_one(f);
  if (static_cast<long>(level.size()) > budget)
    raise(Errc::lap_budget_exceeded, "branch count exceeds lap budget");
  for (int k = 1; k < n; ++k) level = refine(f, level, budget);
  return level;
}

void scan_laps(const PMMap& f, int n_max, long budget, const std::function<void(const Lap&)>& callback) {
  std::vector<Lap> level = level_one(f);
  if (static_cast<long>(level.size()) > budget)
    raise(Errc::lap_budget_exceeded, "branch count exceeds lap budget");
  for (int k = 1; k <= n_max; ++k) {
    for (const auto& lap : level) callback(lap);
    if (k < n_max) level = refine(f, level, budget);
  }
}

std::vector<LapStats> lap_statistics(const PMMap& f, int n_max, long budget) {
  std::vector<LapStats> stats(static_cast<size_t>(n_max));
  scan_laps(f, n_max, budget, [&](const Lap& lap) {
    LapStats& s = stats[static_cast<size_t>(lap.level - 1)];
    s.lap_count += 1;
    s.variation += abs_of(lap.slope) * (lap.hi - lap.lo);
    if (lap.slope == 1) {
      if (sgn(lap.intercept) == 0) s.diagonal_segment = true;
      return;
    }
    // isolated diagonal crossing of the affine rule
    Rational x = lap.intercept / (1 - lap.slope);
    if (x > lap.lo && x < lap.hi) {
      s.fix_crossings += 1;
      if (lap.slope < 0) s.fix_neg += 1;
    }
  });
  return stats;
}

long lap_count(const PMMap& f, int n, long budget) { return static_cast<long>(laps(f, n, budget).size()); }

Rational variation(const PMMap& f, int n, long budget) {
  Rational var(0);
  for (const auto& lap : laps(f, n, budget)) var += abs_of(lap.slope) * (lap.hi - lap.lo);
  return var;
}

PMMap iterate_map(const PMMap& f, int n, long budget) {
  std::vector<Lap> lv = laps(f, n, budget);
  std::vector<Rational> critical;
  std::vector<std::pair<Rational, Rational>> rules;
  for (const auto& lap : lv) {
    critical.push_back(lap.lo);
    critical.push_back(lap.hi);
    rules.emplace_back(lap.slope, lap.intercept);
  }
  return PMMap::validate(f.domain(), std::move(critical), rules);
}

std::vector<OrbitEntry> signed_orbit(const PMMap& f, const Rational& start, int horizon) {
  std::vector<OrbitEntry> orbit;
  Rational x = start;
  int sign = 1;
  for (int k = 0; k <= horizon; ++k) {
    orbit.push_back(OrbitEntry{x, sign});
    if (f.is_critical(x)) break;  // F_{#0} annihilates C_F
    const Branch& b = f.branch_at(x);
    sign *= b.sign;
    x = b.eval(x);
  }
  return orbit;
}

}  // namespace knead
