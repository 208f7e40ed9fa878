#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "skewspec/numeric.hpp"
#include "skewspec/pwl.hpp"
#include "skewspec/subshift.hpp"

namespace skewspec {

/// A finite family of expanding piecewise-linear maps; symbol q selects maps[q-1].
class ExpandingFamily {
 public:
  /// Throws NotExpanding if some map has expansion rate <= 1.
  explicit ExpandingFamily(std::vector<PwlMap> maps);

  std::span<const PwlMap> maps() const { return maps_; }
  std::size_t size() const { return maps_.size(); }

 private:
  std::vector<PwlMap> maps_;
};

struct GammaCertificate {
  Rational eps;
  Rational alpha;
  int m = 0;
  Rational beta;
  Rational gamma;
  /// beta_delta for each m-tuple, tuples enumerated lexicographically by symbol.
  std::vector<std::pair<Word, Rational>> per_tuple;
};

/// Largest b such that every interval U with |U| <= b and a critical point of
/// delta[0] as an endpoint keeps G_{j-1}(U) free of critical points of delta[j-1]
/// in its interior, where G_i = delta[i-1] o ... o delta[0].
Rational beta_delta(std::span<const PwlMap* const> delta);

GammaCertificate gamma_bound(const ExpandingFamily& fam, const Rational& eps);

struct NonshrinkResult {
  bool holds = false;
  Rational min_length;
};

/// Iterates U along word (symbol q applies maps[q-1]) and tracks the smallest
/// image length, the start interval included.
NonshrinkResult verify_nonshrink(std::span<const PwlMap> maps, const Word& word, const UnitInterval& u,
                                 const Rational& gamma);

struct FuzzSummary {
  GammaCertificate certificate;
  long trials = 0;
  long failures = 0;
  Rational min_length;
};

/// Random words of `word_length` over the family with random start intervals
/// of length >= eps, checked against gamma_bound(fam, eps). Deterministic in seed.
FuzzSummary fuzz_nonshrink(const ExpandingFamily& fam, const Rational& eps, long trials, int word_length,
                           std::uint64_t seed);

enum class ShrinkMap { Phi, F, G };
std::string to_string(ShrinkMap m);

struct ShrinkStep {
  ShrinkMap map;
  UnitInterval interval;  // after the map is applied
};

struct ShrinkTrace {
  Rational xi;
  UnitInterval initial;
  std::vector<std::pair<long, ShrinkMap>> schedule;  // (k_i, psi_i)
  std::vector<ShrinkStep> steps;

  long g_events() const;
};

/// The maps phi, f, g of the shrinking nonautonomous construction.
PwlMap shrink_phi(const Rational& xi);
PwlMap shrink_f(const Rational& xi);
PwlMap shrink_g();

/// Runs the adaptive phi^k, psi schedule from J = [0, xi] for `steps` map applications.
ShrinkTrace shrinking_system(const Rational& xi, long steps);

}  // namespace skewspec
