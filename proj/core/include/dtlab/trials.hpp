#pragma once

// Seeded trial loops and order-insensitive aggregation for the experiment
// drivers, plus the flat per-trial table written as CSV.

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "dtlab/seed.hpp"

namespace dtlab {

/// Stream ids for per-trial seeds drawn by the experiment drivers.
enum class TrialStream : std::uint64_t {
  lemma62 = 101,
  cor55 = 102,
  lemma54 = 103,
  lemma53 = 104,
  restriction = 105,
  restriction_direct = 106,
  hs_battery = 107,
  word_moments = 108,
  semicircle = 109,
  simulate = 110,
};

inline std::uint64_t trial_seed(std::uint64_t global, TrialStream stream, int index) {
  return derive_seed(global, static_cast<std::uint64_t>(stream), static_cast<std::uint64_t>(index));
}

/// Runs fn(0), ..., fn(trials - 1) and returns the results in index order.
/// Each call must depend only on its index (and seeds derived from it).
template <class Fn>
auto map_trials(int trials, Fn&& fn) -> std::vector<std::invoke_result_t<Fn&, int>> {
  std::vector<std::invoke_result_t<Fn&, int>> out;
  out.reserve(static_cast<std::size_t>(trials > 0 ? trials : 0));
  for (int i = 0; i < trials; ++i) out.push_back(fn(i));
  return out;
}

/// Mean over values summed in sorted order, so the result does not depend
/// on the order the trials finished in.
double mean(std::vector<double> values);
double median(std::vector<double> values);
double min_value(const std::vector<double>& values);
double max_value(const std::vector<double>& values);

/// Flat table, one row per trial.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

/// Shortest round-trip representation of a double.
std::string format_number(double value);

/// RFC 4180 style CSV with a header line; cells containing separators or
/// quotes are quoted.
std::string to_csv(const Table& table);

}  // namespace dtlab
