#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "skewspec/numeric.hpp"

namespace skewspec {

/// Symbols are 1..n.
using Symbol = int;
using Word = std::vector<Symbol>;

/// Parses "121" (digits 1..9). An empty string is the empty word.
Word parse_word(std::string_view text);
std::string to_string(const Word& w);

/// One-sided subshift of finite type given by allowed adjacent pairs.
class Sft {
 public:
  /// allowed[a-1][b-1] is true iff "ab" is permitted. Rejects stranded symbols.
  explicit Sft(std::vector<std::vector<bool>> allowed);

  static Sft full_shift(int n);
  static Sft from_forbidden(int n, std::span<const std::pair<Symbol, Symbol>> forbidden);

  int alphabet_size() const { return static_cast<int>(allowed_.size()); }
  bool allows(Symbol a, Symbol b) const;
  bool in_alphabet(Symbol s) const { return s >= 1 && s <= alphabet_size(); }
  const std::vector<std::vector<bool>>& matrix() const { return allowed_; }

 private:
  std::vector<std::vector<bool>> allowed_;
};

/// The eventually periodic sequence preperiod . period^infinity.
class BasePoint {
 public:
  BasePoint(Word preperiod, Word period);
  static BasePoint periodic(Word period) { return {{}, std::move(period)}; }

  /// "12|3"; "|12" is the periodic point (12)^infinity.
  static BasePoint parse(std::string_view text);
  std::string str() const;

  const Word& preperiod() const { return preperiod_; }
  const Word& period() const { return period_; }
  bool is_periodic() const { return preperiod_.empty(); }

  Symbol at(std::size_t i) const {
    return i < preperiod_.size() ? preperiod_[i] : period_[(i - preperiod_.size()) % period_.size()];
  }
  /// First `len` symbols.
  Word prefix(std::size_t len) const;

  /// Equality of the represented sequences (not of the representations).
  friend bool operator==(const BasePoint& a, const BasePoint& b);

 private:
  Word preperiod_;
  Word period_;
};

Symbol symbol_at(const BasePoint& x, std::size_t i);
BasePoint shift(const BasePoint& x);
BasePoint shift_by(const BasePoint& x, std::size_t n);

/// Index of the first position where x and y differ, or nullopt when equal.
std::optional<std::size_t> first_disagreement(const BasePoint& x, const BasePoint& y);

/// 2^(-j) with j the first disagreement index, 0 for equal sequences.
Rational rho(const BasePoint& x, const BasePoint& y);

bool is_word(const Sft& b, const Word& w);
/// Every adjacency of the represented sequence, seams included, is allowed.
bool lies_in(const Sft& b, const BasePoint& x);

/// 0 when every pair is adjacent, else the least t >= 1 with A^t > 0.
/// Throws NotPrimitive past the Wielandt bound.
int primitivity_exponent(const Sft& b);

/// Lexicographically least word w of length t with a.w.b a B-word.
Word connecting_word(const Sft& b, Symbol a, Symbol c, int t);

/// h(eps): least h with 2^(-h) <= eps, so rho <= eps iff the first h symbols agree.
int agreement_depth(const Rational& eps);

/// K = h(eps) + P.
int base_gap_length(const Sft& b, const Rational& eps);

/// A block copied into a gap: the first `length` symbols of `source`, followed
/// by h(eps) further symbols of it.
struct InsertBlock {
  BasePoint source;
  int length = 0;
};

struct BaseSegment {
  BasePoint point;
  int length = 1;
  std::optional<InsertBlock> insert;
};

/// Purely periodic point eta of period r_k = sum(n_j) + k * gap that eps-traces
/// every segment, with each insert block starting exactly K symbols into the
/// gap that follows its segment.
BasePoint construct_base_witness(const Sft& b, std::span<const BaseSegment> segments, const Rational& eps, int K,
                                 int gap);

struct BaseTracingAudit {
  bool periodic = false;
  Rational worst_defect;
};

/// Audits S^{r_k}(eta) = eta and rho(S^i w_j, S^{r_{j-1}+i} eta) for 0 <= i < n_j.
BaseTracingAudit verify_base_tracing(std::span<const std::pair<BasePoint, int>> segments,
                                     std::span<const int> gaps, const BasePoint& eta);

}  // namespace skewspec
