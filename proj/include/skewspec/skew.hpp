#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "skewspec/numeric.hpp"
#include "skewspec/pwl.hpp"
#include "skewspec/subshift.hpp"

namespace skewspec {

/// Step skew product F(w, x) = (S w, T_{w_0} x) on B x [0,1].
class SkewSystem {
 public:
  SkewSystem(Sft base, std::vector<PwlMap> fibres);

  const Sft& base() const { return base_; }
  std::span<const PwlMap> fibres() const { return fibres_; }
  const PwlMap& fibre(Symbol q) const { return fibres_[static_cast<std::size_t>(q - 1)]; }

  bool fibres_expanding() const { return expanding_; }
  bool fibres_surjective() const { return surjective_; }

 private:
  Sft base_;
  std::vector<PwlMap> fibres_;
  bool expanding_ = false;
  bool surjective_ = false;
};

struct SkewPoint {
  BasePoint base;
  Rational fibre;
  friend bool operator==(const SkewPoint&, const SkewPoint&) = default;
};

/// A requested orbit segment (w_j, x_j, n_j).
struct OrbitSegmentSpec {
  SkewPoint point;
  int length = 1;
};

SkewPoint step(const SkewSystem& sys, const SkewPoint& p);
/// F^n(p).
SkewPoint iterate(const SkewSystem& sys, const SkewPoint& p, std::size_t n);

/// f_j^i(x) along eta: the fibre maps for symbols eta_j, ..., eta_{j+i-1}.
Rational nonaut_compose(const SkewSystem& sys, const BasePoint& eta, std::size_t j, std::size_t i, Rational x);
UnitInterval nonaut_image(const SkewSystem& sys, const BasePoint& eta, std::size_t j, std::size_t i, UnitInterval J);

/// max(rho, |x - y|).
Rational product_metric(const SkewPoint& p, const SkewPoint& q);

/// r_0 = 0, r_j = r_{j-1} + n_j + gap_j.
std::vector<long> segment_offsets(std::span<const OrbitSegmentSpec> segments, std::span<const int> gaps);

struct TracingAudit {
  std::vector<long> r;
  std::vector<Rational> segment_defects;
  Rational worst_defect;

  bool passes(const Rational& eps) const { return worst_defect <= eps; }
};

/// Checks F^{r_k}(witness) = witness exactly (throws NotPeriodic otherwise)
/// and returns the exact worst tracing defect with all gaps equal to M.
TracingAudit verify_tracing(const SkewSystem& sys, std::span<const OrbitSegmentSpec> segments, int M,
                            const SkewPoint& witness);
/// Same with individually prescribed gaps.
TracingAudit verify_tracing(const SkewSystem& sys, std::span<const OrbitSegmentSpec> segments,
                            std::span<const int> gaps, const SkewPoint& witness);

}  // namespace skewspec
