#pragma once

// B-valued *-moments of the quasinilpotent DT-operator T over B = C([0,1]).
//
// T is B-valued circular with covariance maps
//   alpha12(b) = E(T b T*)   (x -> integral of b over [x,1])
//   alpha21(b) = E(T* b T)   (x -> integral of b over [0,x])
// and every moment E(T^e1 b1 ... T^en bn) is computed by first-pair
// expansion of the moment-cumulant formula.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dtlab/bpoly.hpp"

namespace dtlab {

/// One letter of an epsilon word: ONE is T, STAR is T*.
enum class Letter : std::uint8_t { one, star };

class EpsWord {
 public:
  EpsWord() = default;
  explicit EpsWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  /// Parses a string over {'*', '1'}, e.g. "*1*1".
  static EpsWord parse(std::string_view text);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  EpsWord subword(std::size_t begin, std::size_t end) const;
  /// Every ONE becomes STAR and vice versa.
  EpsWord flipped() const;
  std::string to_string() const;

  friend bool operator==(const EpsWord&, const EpsWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// True iff the word has as many ONEs as STARs.
bool is_balanced(const EpsWord& word);

/// All balanced words of the given (even) length, in lexicographic order of
/// their string form ('*' < '1').
std::vector<EpsWord> balanced_words(std::size_t length);

/// A word together with one coefficient b_j following each letter:
/// T^e1 b1 T^e2 b2 ... T^en bn.
class CoeffWord {
 public:
  CoeffWord() = default;
  CoeffWord(EpsWord word, std::vector<BElem> coeffs);

  /// All coefficients equal to the unit of B.
  static CoeffWord units(EpsWord word);

  const EpsWord& word() const noexcept { return word_; }
  const std::vector<BElem>& coeffs() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return word_.size(); }

 private:
  EpsWord word_;
  std::vector<BElem> coeffs_;
};

inline constexpr std::size_t kDefaultMaxWordLength = 16;

/// Moment evaluator with a memo table keyed by (subword, coefficients).
///
/// An engine is a single evaluation context; it is not safe to share one
/// instance between threads. Distinct engines are independent.
class MomentEngine {
 public:
  explicit MomentEngine(std::size_t max_length = kDefaultMaxWordLength) : max_length_(max_length) {}

  BElem moment(const CoeffWord& cw);
  Rational scalar_moment(const CoeffWord& cw) { return trace(moment(cw)); }

  std::size_t memo_size() const noexcept { return memo_.size(); }
  std::size_t max_length() const noexcept { return max_length_; }

 private:
  BElem moment_range(const CoeffWord& cw, std::size_t begin, std::size_t end);
  std::string memo_key(const CoeffWord& cw, std::size_t begin, std::size_t end) const;

  std::size_t max_length_;
  std::unordered_map<std::string, BElem> memo_;
};

/// E(T^e1 b1 ... T^en bn) with a fresh engine.
BElem moment(const CoeffWord& cw, std::size_t max_length = kDefaultMaxWordLength);
/// trace(E(...)).
Rational scalar_moment(const CoeffWord& cw, std::size_t max_length = kDefaultMaxWordLength);

/// Moment of the plain word is >= 0 at every point of the grid (exact).
bool check_positivity(const EpsWord& word, int grid_size = 101);

inline constexpr int kDefaultSupGrid = 257;

/// |E(T^e1 b1 ... T^en bn)| <= (prod_j sup|b_j|) E(T^e1 ... T^en) pointwise on
/// the grid, with sup|b_j| estimated as the grid maximum.
bool check_coeff_bound(const CoeffWord& cw, int grid_size = kDefaultSupGrid);

/// {"word", "coeffs", "moment_coeffs", "moment", "trace"}.
nlohmann::json moment_report(const CoeffWord& cw, const BElem& moment);

}  // namespace dtlab
