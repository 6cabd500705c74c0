#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "dtlab/cumulant_engine.hpp"
#include "dtlab/error.hpp"
#include "dtlab/pairing_oracle.hpp"

using dtlab::BElem;
using dtlab::CoeffWord;
using dtlab::EpsWord;
using dtlab::Letter;
using dtlab::Rational;

namespace {

// Test-local oracle.  Each non-crossing STAR/ONE pairing gets one variable
// per pair plus the outer variable x, all uniform on [0,1].  A pair opened by
// T^* sits below its parent variable, a pair opened by T sits above it (read
// off from the two covariance integrals).  The volume of that order polytope
// is computed by brute force over all orderings of the variables.
struct Constraint {
  int low;
  int high;
};

void enumerate(const std::string& w, std::size_t begin, std::size_t end, int parent, int& next_var,
               std::vector<Constraint>& cs, const std::function<void()>& emit);

// Pairs w[begin] with some closer, then continues with the rest of the range.
void enumerate(const std::string& w, std::size_t begin, std::size_t end, int parent, int& next_var,
               std::vector<Constraint>& cs, const std::function<void()>& emit) {
  if (begin == end) {
    emit();
    return;
  }
  for (std::size_t close = begin + 1; close < end; close += 2) {
    if (w[close] == w[begin]) continue;
    const int var = next_var++;
    cs.push_back(w[begin] == '*' ? Constraint{var, parent} : Constraint{parent, var});
    enumerate(w, begin + 1, close, var, next_var, cs, [&] {
      enumerate(w, close + 1, end, parent, next_var, cs, emit);
    });
    cs.pop_back();
    --next_var;
  }
}

Rational brute_force_moment(const std::string& w) {
  if (w.size() % 2 != 0) return 0;
  Rational total = 0;
  int next_var = 1;  // variable 0 is x
  std::vector<Constraint> cs;
  enumerate(w, 0, w.size(), 0, next_var, cs, [&] {
    const int vars = static_cast<int>(w.size() / 2) + 1;
    std::vector<int> rank(static_cast<std::size_t>(vars));
    std::iota(rank.begin(), rank.end(), 0);
    long good = 0, all = 0;
    do {
      ++all;
      const bool ok = std::all_of(cs.begin(), cs.end(), [&](const Constraint& c) {
        return rank[static_cast<std::size_t>(c.low)] < rank[static_cast<std::size_t>(c.high)];
      });
      if (ok) ++good;
    } while (std::next_permutation(rank.begin(), rank.end()));
    Rational share(good, all);
    share.canonicalize();
    total += share;
  });
  return total;
}

std::vector<std::string> all_words(std::size_t length) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out) {
      next.push_back(w + "*");
      next.push_back(w + "1");
    }
    out = std::move(next);
  }
  return out;
}

Rational scalar(const std::string& w) { return dtlab::scalar_moment(CoeffWord::units(EpsWord::parse(w))); }

}  // namespace

TEST_CASE("known exact values") {
  CHECK(scalar("*1") == Rational(1, 2));
  CHECK(scalar("**11") == Rational(1, 6));
  CHECK(scalar("*1*1") == Rational(2, 3));
  CHECK(scalar("1*") == Rational(1, 2));
  CHECK(scalar("") == 1);
  CHECK(scalar("11") == 0);
  CHECK(scalar("*") == 0);
  // B-valued moments: E(T^* T) = alpha21(1) = x, E(T T^*) = alpha12(1) = 1 - x.
  CHECK(dtlab::moment(CoeffWord::units(EpsWord::parse("*1"))) == BElem::identity());
  CHECK(dtlab::moment(CoeffWord::units(EpsWord::parse("1*"))) == BElem::one() - BElem::identity());
}

TEST_CASE("brute-force oracle agrees with itself on the hand values") {
  CHECK(brute_force_moment("*1") == Rational(1, 2));
  CHECK(brute_force_moment("**11") == Rational(1, 6));
  CHECK(brute_force_moment("*1*1") == Rational(2, 3));
}

TEST_CASE("engine, library oracle and brute-force oracle agree on every word up to length 8") {
  for (std::size_t len = 0; len <= 8; ++len) {
    for (const auto& w : all_words(len)) {
      const EpsWord word = EpsWord::parse(w);
      const Rational engine = dtlab::scalar_moment(CoeffWord::units(word));
      CAPTURE(w);
      CHECK(engine == dtlab::pairing_oracle(word));
      if (len % 2 == 0) CHECK(engine == brute_force_moment(w));
      if (!dtlab::is_balanced(word)) CHECK(engine == 0);
    }
  }
}

TEST_CASE("balanced word enumeration") {
  CHECK(dtlab::balanced_words(8).size() == 70);
  CHECK(dtlab::balanced_words(0).size() == 1);
  CHECK(dtlab::balanced_words(3).empty());
  const auto words = dtlab::balanced_words(4);
  CHECK(words.front().to_string() == "**11");
  CHECK(std::is_sorted(words.begin(), words.end(),
                       [](const EpsWord& a, const EpsWord& b) { return a.to_string() < b.to_string(); }));
}

TEST_CASE("flipping every letter reflects the moment and keeps its trace") {
  for (const auto& word : dtlab::balanced_words(6)) {
    const BElem m = dtlab::moment(CoeffWord::units(word));
    const BElem flipped = dtlab::moment(CoeffWord::units(word.flipped()));
    CHECK(flipped == m.reflected());
    CHECK(dtlab::trace(flipped) == dtlab::trace(m));
  }
}

TEST_CASE("positivity holds for every balanced word up to length 8") {
  for (std::size_t len = 0; len <= 8; len += 2) {
    for (const auto& word : dtlab::balanced_words(len)) CHECK(dtlab::check_positivity(word));
  }
}

TEST_CASE("coefficient bound on random coefficient words") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7), deg(0, 3), len(1, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const auto words = dtlab::balanced_words(2 * static_cast<std::size_t>(len(rng)));
    const EpsWord word = words[rng() % words.size()];
    std::vector<BElem> coeffs;
    for (std::size_t i = 0; i < word.size(); ++i) {
      std::vector<Rational> c;
      for (int d = 0; d <= deg(rng); ++d) c.emplace_back(num(rng), den(rng));
      coeffs.emplace_back(std::move(c));
    }
    CHECK(dtlab::check_coeff_bound(CoeffWord(word, std::move(coeffs))));
  }
}

TEST_CASE("coefficients enter linearly") {
  const EpsWord word = EpsWord::parse("*1*1");
  std::vector<BElem> a(4, BElem::one()), b(4, BElem::one()), sum(4, BElem::one());
  a[1] = BElem::identity();
  b[1] = BElem::constant(3);
  sum[1] = a[1] + b[1];
  CHECK(dtlab::moment(CoeffWord(word, sum)) ==
        dtlab::moment(CoeffWord(word, a)) + dtlab::moment(CoeffWord(word, b)));
}

TEST_CASE("memo reuse does not change results") {
  dtlab::MomentEngine engine;
  for (const auto& word : dtlab::balanced_words(6)) {
    const Rational first = engine.scalar_moment(CoeffWord::units(word));
    CHECK(engine.scalar_moment(CoeffWord::units(word)) == first);
    CHECK(dtlab::MomentEngine().scalar_moment(CoeffWord::units(word)) == first);
  }
  CHECK(engine.memo_size() > 0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(EpsWord::parse("*2"), dtlab::Error);
  CHECK_THROWS_AS(CoeffWord(EpsWord::parse("*1"), {BElem::one()}), dtlab::Error);
  dtlab::MomentEngine small(4);
  CHECK_THROWS_AS(small.moment(CoeffWord::units(EpsWord::parse("***111"))), dtlab::Error);
}

TEST_CASE("moment report layout") {
  const CoeffWord cw = CoeffWord::units(EpsWord::parse("*1"));
  const auto j = dtlab::moment_report(cw, dtlab::moment(cw));
  CHECK(j.at("word") == "*1");
  CHECK(j.at("trace") == "1/2");
  CHECK(j.at("moment_coeffs") == nlohmann::json::array({"0", "1"}));
}

TEST_CASE("pairing counts are Catalan-like for alternating words") {
  // "*1" repeated k times admits the non-crossing pairings of 2k points in
  // which every pair joins a STAR with a later ONE or a ONE with a later
  // STAR; for alternating words that is every non-crossing pairing.
  const std::size_t catalan[] = {1, 1, 2, 5, 14};
  std::string w;
  for (std::size_t k = 0; k <= 4; ++k) {
    CHECK(dtlab::admissible_pairings(EpsWord::parse(w)).size() == catalan[k]);
    w += "*1";
  }
}
