#pragma once

#include <optional>
#include <span>
#include <vector>

#include "skewspec/nonshrink.hpp"
#include "skewspec/skew.hpp"

namespace skewspec {

/// A periodic base point alpha whose fibre composite
/// T_{alpha_{p-1}} o ... o T_{alpha_0} is mixing.
struct MixingAnchor {
  BasePoint alpha;
  PwlMap composite;
  /// Covering exponent of the composite at the pipeline's gamma (0 until computed).
  int leo_m = 0;

  int period() const { return static_cast<int>(alpha.period().size()); }
};

/// Anchor for an explicit period word. Throws NoAnchorFound when the word is not
/// a periodic B-word or its composite is not shown mixing within cap.
MixingAnchor anchor_from_word(const SkewSystem& sys, const Word& period, int mixing_cap = 64);

/// First periodic B-word (by length, then lexicographically) of length <= max_period
/// whose composite passes is_mixing.
MixingAnchor find_mixing_anchor(const SkewSystem& sys, int max_period, int mixing_cap = 64);

struct GapLength {
  int M = 0;
  int K = 0;
  int m = 0;
  Rational gamma;
  GammaCertificate certificate;
};

/// M = m p + 2K, depending only on (sys, eps, anchor).
GapLength gap_length_M(const SkewSystem& sys, const Rational& eps, const MixingAnchor& anchor);

/// Connected component containing x of the points whose f_start-orbit stays
/// within eps of the orbit of x for n steps.
UnitInterval tracing_component(const SkewSystem& sys, const BasePoint& eta, std::size_t start, const Rational& x,
                               int n, const Rational& eps);

/// V inside source with f_start^len(V) = target exactly (leftmost minimal
/// pullback one map at a time). Throws TargetNotCovered.
UnitInterval pullback_onto(const SkewSystem& sys, const BasePoint& eta, std::size_t start, std::size_t len,
                           const UnitInterval& source, const UnitInterval& target);

/// z in k with f_0^period(z) = z, given f_0^period(k) contains k.
Rational periodic_point_in(const SkewSystem& sys, const BasePoint& eta, std::size_t period, const UnitInterval& k);

struct WitnessOptions {
  std::optional<Word> anchor;
  int anchor_search_cap = 4;
  int mixing_cap = 64;
  /// Extra gap lengths L_j >= 0 (gap j becomes M + L_j); empty means all zero.
  std::vector<int> extra_gaps;
};

struct WitnessReport {
  Rational eps;
  int M = 0;
  int K = 0;
  Rational gamma;
  MixingAnchor anchor;
  std::vector<OrbitSegmentSpec> segments;
  std::vector<int> gaps;
  BasePoint eta;
  Rational z;
  std::vector<long> r;
  std::vector<UnitInterval> J;
  /// K_1, ..., K_{k-1}.
  std::vector<UnitInterval> Knested;
  TracingAudit audit;

  SkewPoint witness_point() const { return {eta, z}; }
};

/// Builds an exactly periodic point (eta, z) that eps-traces every segment with
/// gaps of length M (plus any extra gaps). Throws InternalContradiction if the
/// final audit fails.
WitnessReport witness(const SkewSystem& sys, std::span<const OrbitSegmentSpec> segments, const Rational& eps,
                      const WitnessOptions& options = {});

}  // namespace skewspec
