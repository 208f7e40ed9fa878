#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skewspec/numeric.hpp"

namespace skewspec {

struct Node {
  Rational x;
  Rational y;
  friend bool operator==(const Node&, const Node&) = default;
};

/// Maximal monotone pieces of a map and their endpoints (the critical points,
/// which always include 0 and 1).
struct LapDecomposition {
  std::vector<UnitInterval> laps;
  std::vector<Rational> critical_points;
};

/// Continuous piecewise-linear self-map of [0,1], the linear interpolation of
/// its nodes (a_0 = 0 < a_1 < ... < a_n = 1, b_i in [0,1]). Constant pieces are
/// rejected, so every piece is strictly monotone.
class PwlMap {
 public:
  explicit PwlMap(std::vector<Node> nodes);

  static PwlMap identity();

  std::span<const Node> nodes() const { return nodes_; }
  std::size_t piece_count() const { return slopes_.size(); }
  const Rational& slope(std::size_t piece) const { return slopes_[piece]; }
  std::span<const Rational> slopes() const { return slopes_; }

  /// Index of a linear piece containing x (the left one at interior nodes).
  std::size_t piece_of(const Rational& x) const;

  Rational operator()(const Rational& x) const;

  const LapDecomposition& laps() const { return laps_; }
  std::span<const Rational> critical_points() const { return laps_.critical_points; }

  /// True iff some node (breakpoint) lies strictly inside j.
  bool has_node_in_interior(const UnitInterval& j) const;
  /// True iff some critical point lies strictly inside j.
  bool has_critical_in_interior(const UnitInterval& j) const;

  friend bool operator==(const PwlMap& a, const PwlMap& b) { return a.nodes_ == b.nodes_; }

 private:
  std::vector<Node> nodes_;
  std::vector<Rational> slopes_;
  LapDecomposition laps_;
};

Rational eval(const PwlMap& t, const Rational& x);

/// Exact image t(j).
UnitInterval image_interval(const PwlMap& t, const UnitInterval& j);

/// Maximal closed intervals whose union is t^{-1}(j), sorted left to right.
std::vector<UnitInterval> preimage_components(const PwlMap& t, const UnitInterval& j);

/// Minimum absolute slope over the pieces.
Rational expansion_rate(const PwlMap& t);
bool is_expanding(const PwlMap& t);
bool is_surjective(const PwlMap& t);

/// outer o inner, as an exact PwlMap.
PwlMap compose(const PwlMap& outer, const PwlMap& inner);
/// maps[p-1] o ... o maps[0].
PwlMap compose_in_order(std::span<const PwlMap* const> maps);

/// Leftmost minimal subinterval V of `source` with t(V) = target exactly.
/// The endpoints of V map onto the endpoints of target.
/// Throws TargetNotCovered unless target lies inside t(source).
UnitInterval covering_pullback(const PwlMap& t, const UnitInterval& source, const UnitInterval& target);

/// Exponent m with t^m(U) = [0,1] for every interval |U| >= gamma, computed
/// from a partition of [0,1] into pieces shorter than gamma/2.
int leo_exponent(const PwlMap& t, const Rational& gamma, int cap = 512);

/// Least n <= cap with t^n(j) = [0,1], or -1.
int iterations_to_cover(const PwlMap& t, const UnitInterval& j, int cap);

/// Semi-decision for mixing (locally eventually onto): every piece of the
/// critical-point partition, refined below length 1/8, covers [0,1] within
/// cap iterations. false means "not established within cap".
bool is_mixing(const PwlMap& t, int cap = 64);

}  // namespace skewspec
