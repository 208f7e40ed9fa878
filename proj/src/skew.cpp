#include "skewspec/skew.hpp"

#include <algorithm>

namespace skewspec {

SkewSystem::SkewSystem(Sft base, std::vector<PwlMap> fibres) : base_(std::move(base)), fibres_(std::move(fibres)) {
  if (static_cast<int>(fibres_.size()) != base_.alphabet_size()) {
    throw Error(ErrorKind::InvalidArgument, "need one fibre map per symbol: alphabet has " +
                                                std::to_string(base_.alphabet_size()) + ", got " +
                                                std::to_string(fibres_.size()));
  }
  expanding_ = std::all_of(fibres_.begin(), fibres_.end(), [](const PwlMap& t) { return is_expanding(t); });
  surjective_ = std::all_of(fibres_.begin(), fibres_.end(), [](const PwlMap& t) { return is_surjective(t); });
}

SkewPoint step(const SkewSystem& sys, const SkewPoint& p) {
  return {shift(p.base), sys.fibre(p.base.at(0))(p.fibre)};
}

SkewPoint iterate(const SkewSystem& sys, const SkewPoint& p, std::size_t n) {
  return {shift_by(p.base, n), nonaut_compose(sys, p.base, 0, n, p.fibre)};
}

Rational nonaut_compose(const SkewSystem& sys, const BasePoint& eta, std::size_t j, std::size_t i, Rational x) {
  for (std::size_t t = 0; t < i; ++t) x = sys.fibre(eta.at(j + t))(x);
  return x;
}

UnitInterval nonaut_image(const SkewSystem& sys, const BasePoint& eta, std::size_t j, std::size_t i, UnitInterval J) {
  for (std::size_t t = 0; t < i; ++t) J = image_interval(sys.fibre(eta.at(j + t)), J);
  return J;
}

Rational product_metric(const SkewPoint& p, const SkewPoint& q) {
  return max(rho(p.base, q.base), abs(p.fibre - q.fibre));
}

std::vector<long> segment_offsets(std::span<const OrbitSegmentSpec> segments, std::span<const int> gaps) {
  if (segments.size() != gaps.size()) throw Error(ErrorKind::InvalidArgument, "one gap per segment is required");
  std::vector<long> r{0};
  for (std::size_t j = 0; j < segments.size(); ++j) r.push_back(r.back() + segments[j].length + gaps[j]);
  return r;
}

TracingAudit verify_tracing(const SkewSystem& sys, std::span<const OrbitSegmentSpec> segments, int M,
                            const SkewPoint& witness) {
  const std::vector<int> gaps(segments.size(), M);
  return verify_tracing(sys, segments, gaps, witness);
}

TracingAudit verify_tracing(const SkewSystem& sys, std::span<const OrbitSegmentSpec> segments,
                            std::span<const int> gaps, const SkewPoint& witness) {
  if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "at least one segment is required");
  if (!witness.base.is_periodic()) throw Error(ErrorKind::NotPeriodic, "witness base point is not purely periodic");
  for (const auto& seg : segments) {
    if (seg.length < 1) throw Error(ErrorKind::InvalidArgument, "segment lengths must be at least 1");
  }
  TracingAudit audit;
  audit.r = segment_offsets(segments, gaps);
  const auto rk = static_cast<std::size_t>(audit.r.back());

  // Witness orbit, one point per time step up to r_k.
  std::vector<SkewPoint> orbit;
  orbit.reserve(rk + 1);
  orbit.push_back(witness);
  for (std::size_t t = 0; t < rk; ++t) orbit.push_back(step(sys, orbit.back()));
  if (!(orbit.back() == witness)) {
    throw Error(ErrorKind::NotPeriodic, "F^" + std::to_string(rk) + " does not return the witness to itself");
  }

  for (std::size_t j = 0; j < segments.size(); ++j) {
    Rational worst;
    SkewPoint p = segments[j].point;
    const auto start = static_cast<std::size_t>(audit.r[j]);
    for (int i = 0; i < segments[j].length; ++i) {
      worst = max(worst, product_metric(p, orbit[start + static_cast<std::size_t>(i)]));
      p = step(sys, p);
    }
    audit.worst_defect = max(audit.worst_defect, worst);
    audit.segment_defects.push_back(std::move(worst));
  }
  return audit;
}

}  // namespace skewspec
