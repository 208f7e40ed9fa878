#include "skewspec/pwl.hpp"

#include <algorithm>

namespace skewspec {

namespace {

// x on the segment from (x0, y0) to (x1, y1) where the linear interpolant equals y.
Rational solve_on_segment(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1,
                          const Rational& y) {
  return x0 + (y - y0) * (x1 - x0) / (y1 - y0);
}

struct Sample {
  Rational x;
  Rational y;
};

// Breakpoints of t restricted to j, with their values, left to right.
std::vector<Sample> samples_on(const PwlMap& t, const UnitInterval& j) {
  std::vector<Sample> out;
  out.push_back({j.lo(), t(j.lo())});
  for (const Node& n : t.nodes()) {
    if (j.interior_contains(n.x)) out.push_back({n.x, n.y});
  }
  if (!j.degenerate()) out.push_back({j.hi(), t(j.hi())});
  return out;
}

}  // namespace

PwlMap::PwlMap(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw Error(ErrorKind::InvalidArgument, "a map needs at least two nodes");
  if (nodes_.front().x != 0 || nodes_.back().x != 1) {
    throw Error(ErrorKind::InvalidArgument, "nodes must start at x = 0 and end at x = 1");
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].y < 0 || nodes_[i].y > 1) {
      throw Error(ErrorKind::InvalidArgument, "node value outside [0,1]: " + nodes_[i].y.str());
    }
    if (i > 0 && !(nodes_[i - 1].x < nodes_[i].x)) {
      throw Error(ErrorKind::InvalidArgument, "node abscissae must be strictly increasing");
    }
  }
  slopes_.reserve(nodes_.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    Rational s = (nodes_[i + 1].y - nodes_[i].y) / (nodes_[i + 1].x - nodes_[i].x);
    if (s.sign() == 0) {
      throw Error(ErrorKind::InvalidArgument, "constant piece on [" + nodes_[i].x.str() + ", " +
                                                  nodes_[i + 1].x.str() + "]");
    }
    slopes_.push_back(std::move(s));
  }

  // Laps merge across breakpoints where the slope keeps its sign.
  laps_.critical_points.push_back(nodes_.front().x);
  for (std::size_t i = 1; i < slopes_.size(); ++i) {
    if (slopes_[i].sign() != slopes_[i - 1].sign()) laps_.critical_points.push_back(nodes_[i].x);
  }
  laps_.critical_points.push_back(nodes_.back().x);
  for (std::size_t i = 0; i + 1 < laps_.critical_points.size(); ++i) {
    laps_.laps.emplace_back(laps_.critical_points[i], laps_.critical_points[i + 1]);
  }
}

PwlMap PwlMap::identity() { return PwlMap({{0, 0}, {1, 1}}); }

std::size_t PwlMap::piece_of(const Rational& x) const {
  if (x < 0 || x > 1) throw Error(ErrorKind::OutOfDomain, "point outside [0,1]: " + x.str());
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                                   [](const Rational& v, const Node& n) { return v < n.x; });
  const auto idx = static_cast<std::size_t>(std::distance(nodes_.begin(), it));
  return std::min(idx == 0 ? 0 : idx - 1, slopes_.size() - 1);
}

Rational PwlMap::operator()(const Rational& x) const {
  const std::size_t i = piece_of(x);
  if (x == nodes_[i].x) return nodes_[i].y;
  return nodes_[i].y + slopes_[i] * (x - nodes_[i].x);
}

bool PwlMap::has_node_in_interior(const UnitInterval& j) const {
  const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), j.lo(),
                                   [](const Rational& v, const Node& n) { return v < n.x; });
  return it != nodes_.end() && it->x < j.hi();
}

bool PwlMap::has_critical_in_interior(const UnitInterval& j) const {
  const auto& cps = laps_.critical_points;
  const auto it = std::upper_bound(cps.begin(), cps.end(), j.lo());
  return it != cps.end() && *it < j.hi();
}

Rational eval(const PwlMap& t, const Rational& x) { return t(x); }

UnitInterval image_interval(const PwlMap& t, const UnitInterval& j) {
  Rational lo = t(j.lo());
  Rational hi = lo;
  auto take = [&](const Rational& v) {
    if (v < lo) lo = v;
    if (hi < v) hi = v;
  };
  take(t(j.hi()));
  for (const Node& n : t.nodes()) {
    if (j.interior_contains(n.x)) take(n.y);
  }
  return {std::move(lo), std::move(hi)};
}

std::vector<UnitInterval> preimage_components(const PwlMap& t, const UnitInterval& j) {
  std::vector<UnitInterval> out;
  const auto nodes = t.nodes();
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const Node& a = nodes[i];
    const Node& b = nodes[i + 1];
    const UnitInterval piece_image(min(a.y, b.y), max(a.y, b.y));
    const auto hit = interval_intersect(piece_image, j);
    if (!hit) continue;
    Rational x0 = solve_on_segment(a.x, a.y, b.x, b.y, hit->lo());
    Rational x1 = solve_on_segment(a.x, a.y, b.x, b.y, hit->hi());
    if (x1 < x0) std::swap(x0, x1);
    if (!out.empty() && x0 <= out.back().hi()) {
      out.back() = UnitInterval(out.back().lo(), max(out.back().hi(), x1));
    } else {
      out.emplace_back(std::move(x0), std::move(x1));
    }
  }
  return out;
}

Rational expansion_rate(const PwlMap& t) {
  Rational rate = abs(t.slope(0));
  for (const Rational& s : t.slopes()) rate = min(rate, abs(s));
  return rate;
}

bool is_expanding(const PwlMap& t) { return expansion_rate(t) > 1; }

bool is_surjective(const PwlMap& t) {
  bool has_zero = false;
  bool has_one = false;
  for (const Node& n : t.nodes()) {
    has_zero = has_zero || n.y == 0;
    has_one = has_one || n.y == 1;
  }
  return has_zero && has_one;
}

PwlMap compose(const PwlMap& outer, const PwlMap& inner) {
  std::vector<Rational> xs;
  const auto in_nodes = inner.nodes();
  const auto out_nodes = outer.nodes();
  for (std::size_t i = 0; i + 1 < in_nodes.size(); ++i) {
    const Node& a = in_nodes[i];
    const Node& b = in_nodes[i + 1];
    xs.push_back(a.x);
    const Rational& ylo = min(a.y, b.y);
    const Rational& yhi = max(a.y, b.y);
    for (const Node& o : out_nodes) {
      if (ylo < o.x && o.x < yhi) xs.push_back(solve_on_segment(a.x, a.y, b.x, b.y, o.x));
    }
  }
  xs.push_back(in_nodes.back().x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<Node> nodes;
  nodes.reserve(xs.size());
  for (const Rational& x : xs) {
    Node n{x, outer(inner(x))};
    // Drop the previous node when it is collinear with its neighbours.
    if (nodes.size() >= 2) {
      const Node& p = nodes[nodes.size() - 2];
      const Node& q = nodes.back();
      if ((q.y - p.y) * (n.x - q.x) == (n.y - q.y) * (q.x - p.x)) nodes.pop_back();
    }
    nodes.push_back(std::move(n));
  }
  return PwlMap(std::move(nodes));
}

PwlMap compose_in_order(std::span<const PwlMap* const> maps) {
  PwlMap result = PwlMap::identity();
  for (const PwlMap* m : maps) result = compose(*m, result);
  return result;
}

UnitInterval covering_pullback(const PwlMap& t, const UnitInterval& source, const UnitInterval& target) {
  if (!image_interval(t, source).contains(target)) {
    throw Error(ErrorKind::TargetNotCovered,
                "target " + target.str() + " is not inside the image of " + source.str());
  }
  const Rational& c = target.lo();
  const Rational& d = target.hi();
  const std::vector<Sample> s = samples_on(t, source);

  // Smallest v such that t([source.lo, v]) contains [c, d].
  Rational v = s.front().x;
  {
    Rational run_min = s.front().y;
    Rational run_max = s.front().y;
    bool found = run_min <= c && run_max >= d;
    for (std::size_t k = 0; !found && k + 1 < s.size(); ++k) {
      const Sample& p = s[k];
      const Sample& q = s[k + 1];
      if (q.y > p.y && run_min <= c && q.y >= d) {
        v = solve_on_segment(p.x, p.y, q.x, q.y, d);
        found = true;
      } else if (q.y < p.y && run_max >= d && q.y <= c) {
        v = solve_on_segment(p.x, p.y, q.x, q.y, c);
        found = true;
      } else {
        run_min = min(run_min, q.y);
        run_max = max(run_max, q.y);
      }
    }
    if (!found) throw Error(ErrorKind::InternalContradiction, "forward covering scan failed");
  }

  // Largest u <= v such that t([u, v]) contains [c, d].
  std::vector<Sample> back;
  back.push_back({v, t(v)});
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    if (it->x < v) back.push_back(*it);
  }
  Rational u = v;
  Rational run_min = back.front().y;
  Rational run_max = back.front().y;
  bool found = run_min <= c && run_max >= d;
  for (std::size_t k = 0; !found && k + 1 < back.size(); ++k) {
    const Sample& p = back[k];
    const Sample& q = back[k + 1];
    if (q.y > p.y && run_min <= c && q.y >= d) {
      u = solve_on_segment(p.x, p.y, q.x, q.y, d);
      found = true;
    } else if (q.y < p.y && run_max >= d && q.y <= c) {
      u = solve_on_segment(p.x, p.y, q.x, q.y, c);
      found = true;
    } else {
      run_min = min(run_min, q.y);
      run_max = max(run_max, q.y);
    }
  }
  if (!found) throw Error(ErrorKind::InternalContradiction, "backward covering scan failed");
  return {std::move(u), std::move(v)};
}

int iterations_to_cover(const PwlMap& t, const UnitInterval& j, int cap) {
  UnitInterval cur = j;
  for (int n = 0; n <= cap; ++n) {
    if (cur.is_unit()) return n;
    cur = image_interval(t, cur);
  }
  return -1;
}

int leo_exponent(const PwlMap& t, const Rational& gamma, int cap) {
  if (gamma <= 0 || gamma > 1) throw Error(ErrorKind::InvalidArgument, "gamma must lie in (0,1]");
  if (!is_surjective(t)) {
    throw Error(ErrorKind::NotLeoWithinCap, "map is not surjective, so it is not locally eventually onto");
  }
  // [0,1] is the only interval of length 1.
  if (gamma == 1) return 0;
  // Pieces of length 1/count <= gamma/2; every closed interval of length gamma contains one.
  const Rational ratio = Rational(2) / gamma;
  const long count = mpz_class(floor(ratio) + (ratio.is_integer() ? 0 : 1)).get_si();
  int m = 0;
  for (long i = 0; i < count; ++i) {
    const UnitInterval piece(make_rational(i, count), make_rational(i + 1, count));
    const int mi = iterations_to_cover(t, piece, cap);
    if (mi < 0) {
      throw Error(ErrorKind::NotLeoWithinCap, "piece " + piece.str() + " does not cover [0,1] within " +
                                                  std::to_string(cap) + " iterations");
    }
    m = std::max(m, mi);
  }
  return m;
}

bool is_mixing(const PwlMap& t, int cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be at least 1");
  for (const UnitInterval& lap : t.laps().laps) {
    const long count = mpz_class(floor(lap.length() * 8) + 1).get_si();
    const Rational step = lap.length() / Rational(count);
    for (long i = 0; i < count; ++i) {
      const UnitInterval piece(lap.lo() + step * Rational(i), lap.lo() + step * Rational(i + 1));
      if (iterations_to_cover(t, piece, cap) < 0) return false;
    }
  }
  return true;
}

}  // namespace skewspec
