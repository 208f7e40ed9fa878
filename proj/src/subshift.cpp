#include "skewspec/subshift.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace skewspec {

namespace {

void check_symbols(const Word& w) {
  for (Symbol s : w) {
    if (s < 1) throw Error(ErrorKind::InvalidArgument, "symbols are numbered from 1");
  }
}

void append(Word& out, const Word& w) { out.insert(out.end(), w.begin(), w.end()); }

}  // namespace

Word parse_word(std::string_view text) {
  Word w;
  for (char ch : text) {
    if (ch < '1' || ch > '9') {
      throw Error(ErrorKind::ParseError, "word symbols must be digits 1..9: '" + std::string(text) + "'");
    }
    w.push_back(ch - '0');
  }
  return w;
}

std::string to_string(const Word& w) {
  std::string s;
  for (Symbol c : w) s += std::to_string(c);
  return s;
}

Sft::Sft(std::vector<std::vector<bool>> allowed) : allowed_(std::move(allowed)) {
  const std::size_t n = allowed_.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty");
  for (const auto& row : allowed_) {
    if (row.size() != n) throw Error(ErrorKind::InvalidArgument, "transition matrix must be square");
  }
  for (std::size_t a = 0; a < n; ++a) {
    bool has_successor = false;
    bool has_predecessor = false;
    for (std::size_t b = 0; b < n; ++b) {
      has_successor = has_successor || allowed_[a][b];
      has_predecessor = has_predecessor || allowed_[b][a];
    }
    if (!has_successor || !has_predecessor) {
      throw Error(ErrorKind::InvalidArgument, "symbol " + std::to_string(a + 1) + " is stranded");
    }
  }
}

Sft Sft::full_shift(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty");
  return Sft(std::vector<std::vector<bool>>(n, std::vector<bool>(n, true)));
}

Sft Sft::from_forbidden(int n, std::span<const std::pair<Symbol, Symbol>> forbidden) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "alphabet must be nonempty");
  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, true));
  for (const auto& [a, b] : forbidden) {
    if (a < 1 || a > n || b < 1 || b > n) {
      throw Error(ErrorKind::InvalidArgument, "forbidden pair outside the alphabet");
    }
    allowed[a - 1][b - 1] = false;
  }
  return Sft(std::move(allowed));
}

bool Sft::allows(Symbol a, Symbol b) const {
  return in_alphabet(a) && in_alphabet(b) && allowed_[a - 1][b - 1];
}

BasePoint::BasePoint(Word preperiod, Word period) : preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw Error(ErrorKind::InvalidArgument, "period word must be nonempty");
  check_symbols(preperiod_);
  check_symbols(period_);
}

BasePoint BasePoint::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) return periodic(parse_word(text));
  if (text.find('|', bar + 1) != std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "base point has more than one '|': '" + std::string(text) + "'");
  }
  Word period = parse_word(text.substr(bar + 1));
  if (period.empty()) throw Error(ErrorKind::ParseError, "base point needs a nonempty period");
  return {parse_word(text.substr(0, bar)), std::move(period)};
}

std::string BasePoint::str() const { return to_string(preperiod_) + "|" + to_string(period_); }

Word BasePoint::prefix(std::size_t len) const {
  Word w(len);
  for (std::size_t i = 0; i < len; ++i) w[i] = at(i);
  return w;
}

bool operator==(const BasePoint& a, const BasePoint& b) { return !first_disagreement(a, b).has_value(); }

Symbol symbol_at(const BasePoint& x, std::size_t i) { return x.at(i); }

BasePoint shift(const BasePoint& x) { return shift_by(x, 1); }

BasePoint shift_by(const BasePoint& x, std::size_t n) {
  const Word& pre = x.preperiod();
  if (n < pre.size()) return {Word(pre.begin() + static_cast<std::ptrdiff_t>(n), pre.end()), x.period()};
  const Word& per = x.period();
  const std::size_t r = (n - pre.size()) % per.size();
  Word rotated(per.begin() + static_cast<std::ptrdiff_t>(r), per.end());
  rotated.insert(rotated.end(), per.begin(), per.begin() + static_cast<std::ptrdiff_t>(r));
  return BasePoint::periodic(std::move(rotated));
}

std::optional<std::size_t> first_disagreement(const BasePoint& x, const BasePoint& y) {
  // Past both preperiods the pair of sequences is periodic with period lcm(p_x, p_y).
  const std::size_t bound = std::max(x.preperiod().size(), y.preperiod().size()) +
                            std::lcm(x.period().size(), y.period().size());
  for (std::size_t i = 0; i < bound; ++i) {
    if (x.at(i) != y.at(i)) return i;
  }
  return std::nullopt;
}

Rational rho(const BasePoint& x, const BasePoint& y) {
  const auto j = first_disagreement(x, y);
  return j ? pow2_neg(static_cast<long>(*j)) : Rational(0);
}

bool is_word(const Sft& b, const Word& w) {
  for (Symbol s : w) {
    if (!b.in_alphabet(s)) return false;
  }
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (!b.allows(w[i], w[i + 1])) return false;
  }
  return true;
}

bool lies_in(const Sft& b, const BasePoint& x) {
  Word w = x.preperiod();
  append(w, x.period());
  if (!is_word(b, w)) return false;
  return b.allows(x.period().back(), x.period().front());
}

int primitivity_exponent(const Sft& b) {
  const int n = b.alphabet_size();
  using Matrix = std::vector<std::vector<bool>>;
  const Matrix& a = b.matrix();
  auto positive = [n](const Matrix& m) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!m[i][j]) return false;
      }
    }
    return true;
  };
  if (positive(a)) return 0;
  const int wielandt = (n - 1) * (n - 1) + 1;
  Matrix power = a;
  for (int t = 2; t <= wielandt; ++t) {
    Matrix next(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (!power[i][k]) continue;
        for (int j = 0; j < n; ++j) {
          if (a[k][j]) next[i][j] = true;
        }
      }
    }
    power = std::move(next);
    if (positive(power)) return t;
  }
  throw Error(ErrorKind::NotPrimitive, "no power of the transition matrix up to the Wielandt bound " +
                                           std::to_string(wielandt) + " is positive");
}

Word connecting_word(const Sft& b, Symbol a, Symbol c, int t) {
  if (!b.in_alphabet(a) || !b.in_alphabet(c) || t < 0) {
    throw Error(ErrorKind::InvalidArgument, "connecting_word arguments out of range");
  }
  const int n = b.alphabet_size();
  // reach[k][s]: a path of exactly k edges leads from s to c.
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(t) + 1, std::vector<bool>(n + 1, false));
  reach[0][c] = true;
  for (int k = 1; k <= t; ++k) {
    for (Symbol s = 1; s <= n; ++s) {
      for (Symbol nx = 1; nx <= n && !reach[k][s]; ++nx) {
        reach[k][s] = b.allows(s, nx) && reach[k - 1][nx];
      }
    }
  }
  Word w;
  Symbol prev = a;
  for (int pos = 0; pos < t; ++pos) {
    const int remaining = t - pos;  // edges from this symbol to c
    Symbol pick = 0;
    for (Symbol s = 1; s <= n; ++s) {
      if (b.allows(prev, s) && reach[remaining][s]) {
        pick = s;
        break;
      }
    }
    if (pick == 0) break;
    w.push_back(pick);
    prev = pick;
  }
  if (static_cast<int>(w.size()) != t || !b.allows(prev, c)) {
    throw Error(ErrorKind::NoPath, "no word of length " + std::to_string(t) + " connects " + std::to_string(a) +
                                       " to " + std::to_string(c));
  }
  return w;
}

int agreement_depth(const Rational& eps) {
  if (eps <= 0) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  int h = 0;
  while (pow2_neg(h) > eps) ++h;
  return h;
}

int base_gap_length(const Sft& b, const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0,1)");
  return agreement_depth(eps) + primitivity_exponent(b);
}

BasePoint construct_base_witness(const Sft& b, std::span<const BaseSegment> segments, const Rational& eps, int K,
                                 int gap) {
  if (eps <= 0 || eps >= 1) throw Error(ErrorKind::InvalidArgument, "eps must lie in (0,1)");
  if (segments.empty()) throw Error(ErrorKind::InvalidArgument, "at least one segment is required");
  const int h = agreement_depth(eps);
  const int p = primitivity_exponent(b);
  if (K < h + p) {
    throw Error(ErrorKind::BudgetTooSmall, "K = " + std::to_string(K) + " is below h + P = " + std::to_string(h + p));
  }
  if (gap < K) throw Error(ErrorKind::BudgetTooSmall, "gap length is below K");

  Word eta;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const BaseSegment& seg = segments[j];
    if (seg.length < 1) throw Error(ErrorKind::InvalidArgument, "segment lengths must be at least 1");
    if (!lies_in(b, seg.point)) {
      throw Error(ErrorKind::InvalidArgument, "segment base point " + seg.point.str() + " is not in the subshift");
    }
    const std::size_t start = eta.size();
    append(eta, seg.point.prefix(static_cast<std::size_t>(seg.length + h)));
    int closing = gap - h;
    if (seg.insert) {
      const InsertBlock& block = *seg.insert;
      if (!lies_in(b, block.source)) {
        throw Error(ErrorKind::InvalidArgument, "insert block source " + block.source.str() + " is not in the subshift");
      }
      closing = gap - K - block.length - h;
      if (block.length < 0 || closing < p) {
        throw Error(ErrorKind::BudgetTooSmall, "gap " + std::to_string(gap) + " cannot hold an insert block of length " +
                                                   std::to_string(block.length));
      }
      append(eta, connecting_word(b, eta.back(), block.source.at(0), K - h));
      append(eta, block.source.prefix(static_cast<std::size_t>(block.length + h)));
    }
    const Symbol next = segments[(j + 1) % segments.size()].point.at(0);
    append(eta, connecting_word(b, eta.back(), next, closing));
    if (eta.size() - start != static_cast<std::size_t>(seg.length + gap)) {
      throw Error(ErrorKind::InternalContradiction, "segment budget layout does not add up");
    }
  }
  BasePoint result = BasePoint::periodic(std::move(eta));
  if (!lies_in(b, result)) throw Error(ErrorKind::InternalContradiction, "constructed witness leaves the subshift");
  return result;
}

BaseTracingAudit verify_base_tracing(std::span<const std::pair<BasePoint, int>> segments, std::span<const int> gaps,
                                     const BasePoint& eta) {
  if (segments.size() != gaps.size()) throw Error(ErrorKind::InvalidArgument, "one gap per segment is required");
  std::size_t rk = 0;
  for (std::size_t j = 0; j < segments.size(); ++j) rk += static_cast<std::size_t>(segments[j].second + gaps[j]);

  BaseTracingAudit audit;
  audit.periodic = eta.is_periodic() && shift_by(eta, rk) == eta;
  std::size_t r = 0;
  for (std::size_t j = 0; j < segments.size(); ++j) {
    const auto& [omega, n] = segments[j];
    for (int i = 0; i < n; ++i) {
      audit.worst_defect = max(audit.worst_defect, rho(shift_by(omega, i), shift_by(eta, r + i)));
    }
    r += static_cast<std::size_t>(n + gaps[j]);
  }
  return audit;
}

}  // namespace skewspec
