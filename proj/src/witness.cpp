#include "skewspec/witness.hpp"

#include <algorithm>

namespace skewspec {

namespace {

const PwlMap& map_at(const SkewSystem& sys, const BasePoint& eta, std::size_t t) { return sys.fibre(eta.at(t)); }

MixingAnchor try_anchor(const SkewSystem& sys, const Word& period, int mixing_cap, bool& ok) {
  std::vector<const PwlMap*> maps;
  for (Symbol s : period) maps.push_back(&sys.fibre(s));
  MixingAnchor anchor{BasePoint::periodic(period), compose_in_order(maps), 0};
  ok = is_mixing(anchor.composite, mixing_cap);
  return anchor;
}

bool is_periodic_word(const Sft& b, const Word& w) {
  return !w.empty() && is_word(b, w) && b.allows(w.back(), w.front());
}

}  // namespace

MixingAnchor anchor_from_word(const SkewSystem& sys, const Word& period, int mixing_cap) {
  if (!is_periodic_word(sys.base(), period)) {
    throw Error(ErrorKind::NoAnchorFound, "'" + to_string(period) + "' is not a periodic word of the subshift");
  }
  bool ok = false;
  MixingAnchor anchor = try_anchor(sys, period, mixing_cap, ok);
  if (!ok) {
    throw Error(ErrorKind::NoAnchorFound, "composite along '" + to_string(period) + "' is not shown mixing within " +
                                              std::to_string(mixing_cap) + " iterations");
  }
  return anchor;
}

MixingAnchor find_mixing_anchor(const SkewSystem& sys, int max_period, int mixing_cap) {
  if (max_period < 1) throw Error(ErrorKind::InvalidArgument, "max_period must be at least 1");
  const int n = sys.base().alphabet_size();
  for (int p = 1; p <= max_period; ++p) {
    Word w(static_cast<std::size_t>(p), 1);
    while (true) {
      if (is_periodic_word(sys.base(), w)) {
        bool ok = false;
        MixingAnchor anchor = try_anchor(sys, w, mixing_cap, ok);
        if (ok) return anchor;
      }
      std::size_t pos = w.size();
      while (pos > 0 && w[pos - 1] == n) w[--pos] = 1;
      if (pos == 0) break;
      ++w[pos - 1];
    }
  }
  throw Error(ErrorKind::NoAnchorFound, "no periodic word of length <= " + std::to_string(max_period) +
                                            " has a mixing fibre composite");
}

GapLength gap_length_M(const SkewSystem& sys, const Rational& eps, const MixingAnchor& anchor) {
  if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0,1)");
  if (!sys.fibres_surjective()) throw Error(ErrorKind::InvalidArgument, "fibre maps must be surjective");
  const ExpandingFamily family({sys.fibres().begin(), sys.fibres().end()});
  GapLength g;
  g.certificate = gamma_bound(family, eps);
  g.gamma = g.certificate.gamma;
  g.m = leo_exponent(anchor.composite, g.gamma);
  g.K = base_gap_length(sys.base(), eps);
  g.M = g.m * anchor.period() + 2 * g.K;
  return g;
}

UnitInterval tracing_component(const SkewSystem& sys, const BasePoint& eta, std::size_t start, const Rational& x,
                               int n, const Rational& eps) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "segment length must be at least 1");
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  std::vector<Rational> orbit{x};
  for (int i = 1; i < n; ++i) orbit.push_back(map_at(sys, eta, start + static_cast<std::size_t>(i - 1))(orbit.back()));

  UnitInterval component = UnitInterval::clipped(x - eps, x + eps);
  for (int i = 1; i < n; ++i) {
    UnitInterval q = UnitInterval::clipped(orbit[i] - eps, orbit[i] + eps);
    // Pull the constraint back one map at a time, keeping the piece through the orbit.
    for (int s = i - 1; s >= 0; --s) {
      const auto comps = preimage_components(map_at(sys, eta, start + static_cast<std::size_t>(s)), q);
      const auto it = std::find_if(comps.begin(), comps.end(),
                                   [&](const UnitInterval& c) { return c.contains(orbit[s]); });
      if (it == comps.end()) throw Error(ErrorKind::InternalContradiction, "orbit point lost during pullback");
      q = *it;
    }
    component = *interval_intersect(component, q);
  }
  return component;
}

UnitInterval pullback_onto(const SkewSystem& sys, const BasePoint& eta, std::size_t start, std::size_t len,
                           const UnitInterval& source, const UnitInterval& target) {
  std::vector<UnitInterval> chain{source};
  for (std::size_t t = 0; t < len; ++t) chain.push_back(image_interval(map_at(sys, eta, start + t), chain.back()));
  if (!chain.back().contains(target)) {
    throw Error(ErrorKind::TargetNotCovered, "image " + chain.back().str() + " does not contain " + target.str());
  }
  UnitInterval v = target;
  for (std::size_t t = len; t-- > 0;) v = covering_pullback(map_at(sys, eta, start + t), chain[t], v);
  return v;
}

Rational periodic_point_in(const SkewSystem& sys, const BasePoint& eta, std::size_t period, const UnitInterval& k) {
  if (period == 0) return k.lo();
  auto F = [&](const Rational& x) { return nonaut_compose(sys, eta, 0, period, x); };
  const UnitInterval v0 = pullback_onto(sys, eta, 0, period, k, k);

  // F(z) - z changes sign across v0 because F maps its endpoints onto those of k.
  Rational u = v0.lo();
  Rational v = v0.hi();
  Rational gu = F(u) - u;
  Rational gv = F(v) - v;
  if (gu.sign() == 0) return u;
  if (gv.sign() == 0) return v;
  if (gu.sign() == gv.sign()) throw Error(ErrorKind::InternalContradiction, "no sign change on the pulled-back interval");

  // Keeps the half of [u, v] on which F(z) - z still changes sign; true if w is a root.
  auto split_at = [&](const Rational& w) {
    Rational gw = F(w) - w;
    if (gw.sign() == 0) return true;
    if (gw.sign() != gu.sign()) {
      v = w;
      gv = std::move(gw);
    } else {
      u = w;
      gu = std::move(gw);
    }
    return false;
  };

  constexpr int kMaxRounds = 100000;
  for (int round = 0; round < kMaxRounds; ++round) {
    std::vector<UnitInterval> chain{UnitInterval(u, v)};
    std::optional<Rational> breakpoint;
    std::size_t at = 0;
    for (std::size_t t = 0; t < period && !breakpoint; ++t) {
      const PwlMap& f = map_at(sys, eta, t);
      if (f.has_node_in_interior(chain.back())) {
        for (const Node& n : f.nodes()) {
          if (chain.back().interior_contains(n.x)) {
            breakpoint = n.x;
            at = t;
            break;
          }
        }
      } else {
        chain.push_back(image_interval(f, chain.back()));
      }
    }

    if (!breakpoint) {
      // F is affine on [u, v] with slope of modulus > 1.
      const Rational fu = gu + u;
      const Rational fv = gv + v;
      const Rational a = (fv - fu) / (v - u);
      if (a == 1) throw Error(ErrorKind::InternalContradiction, "composite has slope 1 on a linear piece");
      const Rational z = (fu - a * u) / (Rational(1) - a);
      if (z < u || z > v || F(z) != z) throw Error(ErrorKind::InternalContradiction, "affine fixed point check failed");
      return z;
    }

    Rational w = *breakpoint;
    for (std::size_t s = at; s-- > 0;) {
      w = covering_pullback(map_at(sys, eta, s), chain[s], UnitInterval::point(w)).lo();
    }
    if (split_at(w)) return w;
    const Rational mid = (u + v) / Rational(2);
    if (split_at(mid)) return mid;
  }
  throw Error(ErrorKind::InternalContradiction, "periodic point search did not terminate");
}

WitnessReport witness(const SkewSystem& sys, std::span<const OrbitSegmentSpec> segments, const Rational& eps,
                      const WitnessOptions& options) {
  if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0,1)");
  if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "at least one segment is required");
  for (const auto& seg : segments) {
    if (seg.length < 1) throw Error(ErrorKind::InvalidArgument, "segment lengths must be at least 1");
    if (seg.point.fibre < 0 || seg.point.fibre > 1) throw Error(ErrorKind::OutOfDomain, "fibre point outside [0,1]");
    if (!lies_in(sys.base(), seg.point.base)) {
      throw Error(ErrorKind::InvalidArgument, "base point " + seg.point.base.str() + " is not in the subshift");
    }
  }
  const std::size_t k = segments.size();
  std::vector<int> extra = options.extra_gaps.empty() ? std::vector<int>(k, 0) : options.extra_gaps;
  if (extra.size() != k || std::any_of(extra.begin(), extra.end(), [](int l) { return l < 0; })) {
    throw Error(ErrorKind::InvalidArgument, "extra gaps need one nonnegative entry per segment");
  }

  MixingAnchor anchor = options.anchor ? anchor_from_word(sys, *options.anchor, options.mixing_cap)
                                       : find_mixing_anchor(sys, options.anchor_search_cap, options.mixing_cap);
  const GapLength gap = gap_length_M(sys, eps, anchor);
  anchor.leo_m = gap.m;
  const int block = gap.m * anchor.period();

  // A gap of M + L_j is realised by lengthening segment j by L_j.
  std::vector<int> lengths(k);
  std::vector<BaseSegment> base_segments;
  for (std::size_t j = 0; j < k; ++j) {
    lengths[j] = segments[j].length + extra[j];
    base_segments.push_back({segments[j].point.base, lengths[j], InsertBlock{anchor.alpha, block}});
  }
  const BasePoint eta = construct_base_witness(sys.base(), base_segments, eps, gap.K, gap.M);

  std::vector<long> r{0};
  for (std::size_t j = 0; j < k; ++j) r.push_back(r.back() + lengths[j] + gap.M);

  std::vector<UnitInterval> J;
  for (std::size_t j = 0; j < k; ++j) {
    const auto start = static_cast<std::size_t>(r[j]);
    J.push_back(tracing_component(sys, eta, start, segments[j].point.fibre, lengths[j], eps));
    const auto milestone = static_cast<std::size_t>(lengths[j] + gap.K + block);
    if (!nonaut_image(sys, eta, start, milestone, J.back()).is_unit() ||
        !nonaut_image(sys, eta, start, static_cast<std::size_t>(lengths[j] + gap.M), J.back()).is_unit()) {
      throw Error(ErrorKind::InternalContradiction, "tracing component " + std::to_string(j + 1) +
                                                        " does not cover [0,1] after the anchor block");
    }
  }

  std::vector<UnitInterval> nested;
  UnitInterval current = J.front();
  for (std::size_t j = 1; j < k; ++j) {
    current = pullback_onto(sys, eta, 0, static_cast<std::size_t>(r[j]), current, J[j]);
    nested.push_back(current);
  }
  const Rational z = periodic_point_in(sys, eta, static_cast<std::size_t>(r.back()), current);

  std::vector<int> gaps(k);
  for (std::size_t j = 0; j < k; ++j) gaps[j] = gap.M + extra[j];
  TracingAudit audit = verify_tracing(sys, segments, gaps, SkewPoint{eta, z});
  if (!audit.passes(eps)) {
    throw Error(ErrorKind::InternalContradiction, "witness audit failed: worst defect " + audit.worst_defect.str() +
                                                      " exceeds eps " + eps.str());
  }

  return WitnessReport{eps,
                       gap.M,
                       gap.K,
                       gap.gamma,
                       std::move(anchor),
                       {segments.begin(), segments.end()},
                       std::move(gaps),
                       eta,
                       z,
                       std::move(r),
                       std::move(J),
                       std::move(nested),
                       std::move(audit)};
}

}  // namespace skewspec
