#pragma once

// Chords of a lattice path and the Poisson-snake description of the sticky flow.
//
// Every up-step of a(0,.) at time s starts a chord at level x = a(0,s). The chord
// ends at the first return of a(0,.) to x, or is infinite when the path stays above
// x up to the horizon. The infinite chords at horizon t are exactly those starting
// at sigma(x), the last visit to x, for x in [min a, a(0,t)).

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "noiselab/budget.hpp"
#include "noiselab/flow.hpp"
#include "noiselab/rational.hpp"

namespace noiselab::flow {

struct Chord {
  int start = 0;
  std::optional<int> end;  // nullopt marks an infinite chord
  std::int64_t level = 0;
  bool selected = false;

  bool infinite() const { return !end.has_value(); }
};

struct ChordSet {
  int horizon = 0;
  std::vector<Chord> chords;  // ordered by start

  std::size_t infinite_count() const;
  /// Levels of the infinite chords, increasing.
  std::vector<std::int64_t> infinite_levels() const;
};

/// One chord per up-step. A chord is selected when its step is f_* (G3 paths).
ChordSet chord_decomposition(const LatticePath& path);

/// c(0,t) read off the selected infinite chords:
/// a - c = min(a, lowest level whose infinite chord is selected).
std::int64_t snake_c(const ChordSet& chords, std::int64_t a);

/// Law of c(0,t) given the a-path when every up-step is selected independently
/// with probability p. Only infinite chords matter.
std::map<std::int64_t, Rational> snake_conditional_c(const LatticePath& path, const Rational& p);

/// Law of the number of selected infinite chords given the a-path.
std::map<std::int64_t, Rational> alive_count_law(const LatticePath& path, const Rational& p);

/// Law of (a,b,c) obtained by averaging snake_conditional_c over all 2^t paths.
FlowLaw snake_flow_law(int t, const Rational& p, const Budget& budget = {});

struct SnakeReport {
  int t = 0;
  Rational p;
  bool flow_match = false;         // snake aggregate == exact G3 law
  std::int64_t alive_paths = 0;    // paths whose alive-count law was compared
  std::int64_t alive_mismatches = 0;
  std::int64_t words = 0;          // G3 words checked for the path-wise c identity
  std::int64_t word_mismatches = 0;

  bool ok() const { return flow_match && alive_mismatches == 0 && word_mismatches == 0; }
};

/// Runs the three snake checks at horizon t: aggregate law, Binomial(a+b, p)
/// alive counts (by enumerating all selections), and the path-wise identity for c
/// on all 3^t G3 words.
SnakeReport check_snake(int t, const Rational& p, const Budget& budget = {});

}  // namespace noiselab::flow
