#pragma once

// Independent check of the scalar moments tau(T^e1 ... T^en).
//
// Enumerates every non-crossing pairing of positions that joins each STAR
// with a ONE.  A pairing is a forest of nested pairs; giving each pair a
// variable u in [0,1] and the outermost level the variable x, the pair's
// opener letter fixes an order relation with its parent (ONE: u >= parent,
// STAR: u <= parent).  The pairing contributes the volume of that order
// polytope, which is (number of linear extensions) / (pairs + 1)!.
//
// Nothing here touches polynomial arithmetic; the result only depends on
// counting.

#include <cstdint>
#include <utility>
#include <vector>

#include "dtlab/bpoly.hpp"
#include "dtlab/cumulant_engine.hpp"

namespace dtlab {

/// A non-crossing pairing as a list of (opener, closer) positions.
using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

/// All non-crossing pairings of the word matching STARs with ONEs.
std::vector<Pairing> admissible_pairings(const EpsWord& word);

/// Volume contribution of a single pairing (see file comment).
Rational pairing_volume(const EpsWord& word, const Pairing& pairing);

/// Sum of pairing volumes; equals tau(E(T^e1 ... T^en)).
Rational pairing_oracle(const EpsWord& word);

}  // namespace dtlab
