#include "skewspec/nonshrink.hpp"

#include <algorithm>
#include <random>
#include <thread>

namespace skewspec {

namespace {

// Unique x in `on` with t(x) = y; t is monotone on `on`.
Rational monotone_inverse(const PwlMap& t, const UnitInterval& on, const Rational& y) {
  return covering_pullback(t, on, UnitInterval::point(y)).lo();
}

// Admissible length for intervals anchored at c on one side (+1 right, -1 left),
// or nullopt when no interval on that side ever violates the condition.
std::optional<Rational> side_bound(std::span<const PwlMap* const> delta, const Rational& c, int side) {
  Rational bound = side > 0 ? Rational(1) - c : c;
  bool constrained = false;
  for (std::size_t j = 0; j < delta.size(); ++j) {
    const UnitInterval u0 = side > 0 ? UnitInterval(c, c + bound) : UnitInterval(c - bound, c);
    // Image chain of the longest admissible interval; every map is monotone on it.
    std::vector<UnitInterval> chain{u0};
    Rational fixed = c;
    Rational moving = side > 0 ? u0.hi() : u0.lo();
    for (std::size_t i = 0; i < j; ++i) {
      chain.push_back(image_interval(*delta[i], chain.back()));
      fixed = (*delta[i])(fixed);
      moving = (*delta[i])(moving);
    }
    // Nearest critical point of delta[j] strictly between the fixed and moving ends.
    std::optional<Rational> hit;
    for (const Rational& q : delta[j]->critical_points()) {
      const bool between = fixed < moving ? (fixed < q && q < moving) : (moving < q && q < fixed);
      if (!between) continue;
      if (!hit || abs(q - fixed) < abs(*hit - fixed)) hit = q;
    }
    if (!hit) continue;
    Rational y = *hit;
    for (std::size_t i = j; i-- > 0;) y = monotone_inverse(*delta[i], chain[i], y);
    bound = abs(y - c);
    constrained = true;
  }
  if (!constrained) return std::nullopt;
  return bound;
}

}  // namespace

ExpandingFamily::ExpandingFamily(std::vector<PwlMap> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(ErrorKind::InvalidArgument, "family must be nonempty");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (!is_expanding(maps_[i])) {
      throw Error(ErrorKind::NotExpanding, "map " + std::to_string(i + 1) + " has expansion rate " +
                                               expansion_rate(maps_[i]).str() + " <= 1");
    }
  }
}

Rational beta_delta(std::span<const PwlMap* const> delta) {
  if (delta.empty()) throw Error(ErrorKind::InvalidArgument, "beta_delta needs at least one map");
  std::optional<Rational> beta;
  for (const Rational& c : delta.front()->critical_points()) {
    for (int side : {-1, 1}) {
      if ((side < 0 && c == 0) || (side > 0 && c == 1)) continue;
      if (auto b = side_bound(delta, c, side)) {
        if (!beta || *b < *beta) beta = std::move(b);
      }
    }
  }
  if (beta && beta->sign() <= 0) throw Error(ErrorKind::InternalContradiction, "beta_delta is not positive");
  return beta ? *beta : Rational(1);
}

GammaCertificate gamma_bound(const ExpandingFamily& fam, const Rational& eps) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  GammaCertificate cert;
  cert.eps = eps;
  cert.alpha = expansion_rate(fam.maps().front());
  for (const PwlMap& t : fam.maps()) cert.alpha = min(cert.alpha, expansion_rate(t));
  cert.m = 1;
  for (Rational power = cert.alpha; power <= 2; power *= cert.alpha) ++cert.m;

  const auto n = fam.size();
  double tuples = 1;
  for (int i = 0; i < cert.m; ++i) tuples *= static_cast<double>(n);
  if (tuples > 1e6) throw Error(ErrorKind::InvalidArgument, "too many m-tuples to enumerate");

  Word tuple(static_cast<std::size_t>(cert.m), 1);
  std::vector<const PwlMap*> delta(tuple.size());
  while (true) {
    for (std::size_t i = 0; i < tuple.size(); ++i) delta[i] = &fam.maps()[static_cast<std::size_t>(tuple[i] - 1)];
    Rational b = beta_delta(delta);
    if (cert.per_tuple.empty() || b < cert.beta) cert.beta = b;
    cert.per_tuple.emplace_back(tuple, std::move(b));
    // Next tuple in lexicographic order.
    std::size_t pos = tuple.size();
    while (pos > 0 && tuple[pos - 1] == static_cast<Symbol>(n)) tuple[--pos] = 1;
    if (pos == 0) break;
    ++tuple[pos - 1];
  }
  cert.gamma = min(eps / Rational(2), cert.beta);
  return cert;
}

NonshrinkResult verify_nonshrink(std::span<const PwlMap> maps, const Word& word, const UnitInterval& u,
                                 const Rational& gamma) {
  NonshrinkResult result;
  UnitInterval cur = u;
  result.min_length = cur.length();
  for (Symbol q : word) {
    if (q < 1 || static_cast<std::size_t>(q) > maps.size()) {
      throw Error(ErrorKind::InvalidArgument, "word symbol outside the family");
    }
    cur = image_interval(maps[static_cast<std::size_t>(q - 1)], cur);
    result.min_length = min(result.min_length, cur.length());
  }
  result.holds = result.min_length >= gamma;
  return result;
}

FuzzSummary fuzz_nonshrink(const ExpandingFamily& fam, const Rational& eps, long trials, int word_length,
                           std::uint64_t seed) {
  if (eps <= 0 || eps > 1) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0,1]");
  if (trials < 1 || word_length < 0) throw Error(ErrorKind::InvalidArgument, "trials must be positive");
  FuzzSummary summary;
  summary.certificate = gamma_bound(fam, eps);
  summary.trials = trials;
  const Rational gamma = summary.certificate.gamma;
  const auto symbols = static_cast<int>(fam.size());

  struct Partial {
    long failures = 0;
    std::optional<Rational> min_length;
  };
  auto run_range = [&](long begin, long end, Partial& out) {
    constexpr long kGrid = 1024;
    for (long trial = begin; trial < end; ++trial) {
      std::mt19937_64 rng(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(trial + 1));
      std::uniform_int_distribution<long> grid(0, kGrid);
      std::uniform_int_distribution<int> symbol(1, symbols);
      const Rational length = eps + (Rational(1) - eps) * make_rational(grid(rng), kGrid);
      const Rational lo = (Rational(1) - length) * make_rational(grid(rng), kGrid);
      Word word(static_cast<std::size_t>(word_length));
      for (Symbol& s : word) s = symbol(rng);
      const NonshrinkResult r = verify_nonshrink(fam.maps(), word, UnitInterval(lo, lo + length), gamma);
      if (!r.holds) ++out.failures;
      if (!out.min_length || r.min_length < *out.min_length) out.min_length = r.min_length;
    }
  };

  const long workers = std::clamp<long>(static_cast<long>(std::thread::hardware_concurrency()), 1, 16);
  std::vector<Partial> partials(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  const long chunk = (trials + workers - 1) / workers;
  for (long w = 0; w < workers; ++w) {
    const long begin = std::min(trials, w * chunk);
    const long end = std::min(trials, begin + chunk);
    threads.emplace_back(run_range, begin, end, std::ref(partials[static_cast<std::size_t>(w)]));
  }
  for (auto& t : threads) t.join();

  std::optional<Rational> best;
  for (const Partial& p : partials) {
    summary.failures += p.failures;
    if (p.min_length && (!best || *p.min_length < *best)) best = p.min_length;
  }
  summary.min_length = best.value_or(Rational(1));
  return summary;
}

std::string to_string(ShrinkMap m) {
  switch (m) {
    case ShrinkMap::Phi: return "phi";
    case ShrinkMap::F: return "f";
    case ShrinkMap::G: return "g";
  }
  return "?";
}

long ShrinkTrace::g_events() const {
  return std::count_if(schedule.begin(), schedule.end(), [](const auto& e) { return e.second == ShrinkMap::G; });
}

PwlMap shrink_phi(const Rational& xi) { return PwlMap({{0, xi}, {Rational(1) - xi, 1}, {1, 0}}); }

PwlMap shrink_f(const Rational& xi) {
  return PwlMap({{0, 1}, {Rational(1) - Rational(2) * xi, 0}, {1, Rational(2) * xi}});
}

PwlMap shrink_g() {
  return PwlMap({{0, 1}, {make_rational(1, 4), make_rational(1, 4)}, {make_rational(1, 2), 0}, {1, make_rational(1, 2)}});
}

ShrinkTrace shrinking_system(const Rational& xi, long steps) {
  if (xi <= 0 || xi >= make_rational(1, 4)) throw Error(ErrorKind::InvalidArgument, "xi must lie in (0, 1/4)");
  if (steps < 1) throw Error(ErrorKind::InvalidArgument, "steps must be at least 1");
  const PwlMap phi = shrink_phi(xi);
  const PwlMap f = shrink_f(xi);
  const PwlMap g = shrink_g();
  const Rational half = make_rational(1, 2);
  const Rational wrap = Rational(1) - xi;
  // phi translates by xi until the interval reaches [1 - xi, 1].
  const long max_run = mpz_class(floor(Rational(1) / xi) + 2).get_si();

  ShrinkTrace trace{xi, UnitInterval(0, xi), {}, {}};
  UnitInterval cur = trace.initial;
  long k = 0;
  while (static_cast<long>(trace.steps.size()) < steps) {
    const Rational third = cur.length() / Rational(3);
    const bool middle_third_hits_half = cur.lo() + third <= half && half <= cur.lo() + third * Rational(2);
    const bool reaches_wrap = cur.hi() >= wrap;
    ShrinkMap next = ShrinkMap::Phi;
    if (middle_third_hits_half) {
      next = ShrinkMap::G;
    } else if (reaches_wrap) {
      next = ShrinkMap::F;
    } else if (k > max_run) {
      throw Error(ErrorKind::NoTrigger, "no trigger after " + std::to_string(k) + " applications of phi");
    }
    const PwlMap& map = next == ShrinkMap::Phi ? phi : (next == ShrinkMap::F ? f : g);
    cur = image_interval(map, cur);
    trace.steps.push_back({next, cur});
    if (next == ShrinkMap::Phi) {
      ++k;
    } else {
      trace.schedule.emplace_back(k, next);
      k = 0;
    }
  }
  return trace;
}

}  // namespace skewspec
