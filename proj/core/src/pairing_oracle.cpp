#include "dtlab/pairing_oracle.hpp"

#include <functional>

#include "dtlab/error.hpp"

namespace dtlab {

namespace {

// Variables that fit in a subset bitmask for the extension count.
constexpr std::size_t kMaxPosetSize = 18;

// Pairs [begin, end) completely, then calls `done`.
void enumerate(const EpsWord& word, std::size_t begin, std::size_t end, Pairing& current,
               const std::function<void()>& done) {
  if (begin == end) {
    done();
    return;
  }
  for (std::size_t j = begin + 1; j < end; j += 2) {
    if (word[j] == word[begin]) continue;
    current.emplace_back(begin, j);
    enumerate(word, begin + 1, j, current,
              [&] { enumerate(word, j + 1, end, current, done); });
    current.pop_back();
  }
}

}  // namespace

std::vector<Pairing> admissible_pairings(const EpsWord& word) {
  std::vector<Pairing> out;
  if (word.size() % 2 != 0) return out;
  Pairing current;
  enumerate(word, 0, word.size(), current, [&] { out.push_back(current); });
  return out;
}

Rational pairing_volume(const EpsWord& word, const Pairing& pairing) {
  const std::size_t pairs = pairing.size();
  const std::size_t vars = pairs + 1;  // variable 0 is x
  if (vars > kMaxPosetSize) throw_config("pairing_oracle.size", "word too long for the oracle");

  // Parent of pair p is the innermost pair strictly enclosing it.
  std::vector<std::uint32_t> below(vars, 0);  // below[v]: mask of variables that must precede v
  for (std::size_t p = 0; p < pairs; ++p) {
    const auto [open, close] = pairing[p];
    std::size_t parent = 0;
    std::size_t best_width = word.size() + 1;
    for (std::size_t q = 0; q < pairs; ++q) {
      const auto [qo, qc] = pairing[q];
      if (qo < open && close < qc && qc - qo < best_width) {
        best_width = qc - qo;
        parent = q + 1;
      }
    }
    const std::size_t self = p + 1;
    if (word[open] == Letter::one) {
      below[self] |= 1u << parent;  // u_self >= u_parent
    } else {
      below[parent] |= 1u << self;  // u_self <= u_parent
    }
  }

  // Count linear extensions by dynamic programming over down-sets.
  std::vector<mpz_class> ways(std::size_t{1} << vars, 0);
  ways[0] = 1;
  for (std::uint32_t set = 0; set < ways.size(); ++set) {
    if (ways[set] == 0) continue;
    for (std::size_t v = 0; v < vars; ++v) {
      const std::uint32_t bit = 1u << v;
      if ((set & bit) == 0 && (below[v] & ~set) == 0) ways[set | bit] += ways[set];
    }
  }
  mpz_class factorial = 1;
  for (std::size_t k = 2; k <= vars; ++k) factorial *= static_cast<unsigned long>(k);
  Rational out(ways.back(), factorial);
  out.canonicalize();
  return out;
}

Rational pairing_oracle(const EpsWord& word) {
  if (word.empty()) return 1;
  Rational total = 0;
  for (const auto& p : admissible_pairings(word)) total += pairing_volume(word, p);
  return total;
}

}  // namespace dtlab
