#include "dtlab/cumulant_engine.hpp"

#include <functional>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"

namespace dtlab {

EpsWord EpsWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (ch == '*') {
      letters.push_back(Letter::star);
    } else if (ch == '1') {
      letters.push_back(Letter::one);
    } else {
      throw_config("cumulant_engine.parse",
                   "word must be a string over {'*','1'}, got '" + std::string(text) + "'");
    }
  }
  return EpsWord(std::move(letters));
}

EpsWord EpsWord::subword(std::size_t begin, std::size_t end) const {
  return EpsWord(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                                     letters_.begin() + static_cast<std::ptrdiff_t>(end)));
}

EpsWord EpsWord::flipped() const {
  std::vector<Letter> out(letters_);
  for (auto& l : out) l = l == Letter::one ? Letter::star : Letter::one;
  return EpsWord(std::move(out));
}

std::string EpsWord::to_string() const {
  std::string out;
  out.reserve(letters_.size());
  for (Letter l : letters_) out += l == Letter::one ? '1' : '*';
  return out;
}

bool is_balanced(const EpsWord& word) {
  std::ptrdiff_t balance = 0;
  for (Letter l : word.letters()) balance += l == Letter::one ? 1 : -1;
  return balance == 0;
}

std::vector<EpsWord> balanced_words(std::size_t length) {
  std::vector<EpsWord> out;
  if (length % 2 != 0) return out;
  std::vector<Letter> buf;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t stars, std::size_t ones) {
    if (buf.size() == length) {
      out.emplace_back(buf);
      return;
    }
    if (stars < length / 2) {
      buf.push_back(Letter::star);
      rec(stars + 1, ones);
      buf.pop_back();
    }
    if (ones < length / 2) {
      buf.push_back(Letter::one);
      rec(stars, ones + 1);
      buf.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

CoeffWord::CoeffWord(EpsWord word, std::vector<BElem> coeffs)
    : word_(std::move(word)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != word_.size()) {
    throw_config("cumulant_engine.coeffs", "coefficient count must equal word length");
  }
}

CoeffWord CoeffWord::units(EpsWord word) {
  std::vector<BElem> coeffs(word.size(), BElem::one());
  return CoeffWord(std::move(word), std::move(coeffs));
}

std::string MomentEngine::memo_key(const CoeffWord& cw, std::size_t begin, std::size_t end) const {
  std::string key;
  for (std::size_t i = begin; i < end; ++i) key += cw.word()[i] == Letter::one ? '1' : '*';
  for (std::size_t i = begin; i < end; ++i) {
    key += '|';
    key += cw.coeffs()[i].key();
  }
  return key;
}

BElem MomentEngine::moment(const CoeffWord& cw) {
  if (cw.size() > max_length_) {
    throw_config("cumulant_engine.length",
                 "word length " + std::to_string(cw.size()) + " exceeds the cap " +
                     std::to_string(max_length_));
  }
  return moment_range(cw, 0, cw.size());
}

BElem MomentEngine::moment_range(const CoeffWord& cw, std::size_t begin, std::size_t end) {
  if (begin == end) return BElem::one();

  const auto& w = cw.word();
  std::ptrdiff_t balance = 0;
  for (std::size_t i = begin; i < end; ++i) balance += w[i] == Letter::one ? 1 : -1;
  if (balance != 0) return {};

  std::string key = memo_key(cw, begin, end);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  const Letter first = w[begin];
  const auto& b = cw.coeffs();
  BElem result;
  balance = first == Letter::one ? 1 : -1;
  for (std::size_t j = begin + 1; j < end; ++j) {
    balance += w[j] == Letter::one ? 1 : -1;
    if (balance != 0 || w[j] == first) continue;
    BElem inner = b[begin] * moment_range(cw, begin + 1, j);
    BElem paired = first == Letter::one ? alpha12(inner) : alpha21(inner);
    if (paired.is_zero()) continue;
    result += paired * b[j] * moment_range(cw, j + 1, end);
  }
  memo_.emplace(std::move(key), result);
  return result;
}

BElem moment(const CoeffWord& cw, std::size_t max_length) {
  MomentEngine engine(max_length);
  return engine.moment(cw);
}

Rational scalar_moment(const CoeffWord& cw, std::size_t max_length) {
  return trace(moment(cw, max_length));
}

bool check_positivity(const EpsWord& word, int grid_size) {
  const BElem m = moment(CoeffWord::units(word), std::max(word.size(), kDefaultMaxWordLength));
  for (const auto& v : eval_grid(m, grid_size)) {
    if (v < 0) return false;
  }
  return true;
}

bool check_coeff_bound(const CoeffWord& cw, int grid_size) {
  const std::size_t cap = std::max(cw.size(), kDefaultMaxWordLength);
  MomentEngine engine(cap);
  const BElem lhs = engine.moment(cw);
  const BElem plain = engine.moment(CoeffWord::units(cw.word()));
  Rational norm_product = 1;
  for (const auto& bj : cw.coeffs()) norm_product *= grid_sup_abs(bj, grid_size);
  const auto left = eval_grid(lhs, grid_size);
  const auto right = eval_grid(plain, grid_size);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (abs(left[i]) > norm_product * right[i]) return false;
  }
  return true;
}

nlohmann::json moment_report(const CoeffWord& cw, const BElem& m) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& b : cw.coeffs()) coeffs.push_back(to_json(b));
  return {
      {"word", cw.word().to_string()},
      {"coeffs", coeffs},
      {"moment_coeffs", to_json(m)},
      {"moment", m.to_string()},
      {"trace", rational_to_string(trace(m))},
  };
}

}  // namespace dtlab
