#pragma once

// Discrete coalescing web. Signs live on the sublattice {(u,x) : u + x even}; a
// walker at (u, x) moves to x + sign(u, x). Walkers sharing a site read the same
// sign, so they coalesce forever.

#include <cstdint>
#include <vector>

#include "noiselab/rational.hpp"

namespace noiselab::web {

enum class Topology { Circle, Line };

class SignField {
 public:
  /// Circle: positions are residues mod `width` (even). Line: walkers start in
  /// [0, width) and the field also covers the margin they can reach by time `horizon`.
  SignField(Topology topology, int horizon, int width, std::vector<std::int8_t> signs);

  /// Every site +1.
  static SignField constant(Topology topology, int horizon, int width, int sign);
  /// Independent fair signs, deterministic in seed.
  static SignField random(Topology topology, int horizon, int width, std::uint64_t seed);
  /// The field whose k-th sublattice site (time-major, increasing position) is +1
  /// iff bit k of `bits` is set. Requires site_count() <= 63.
  static SignField from_bits(Topology topology, int horizon, int width, std::uint64_t bits);

  Topology topology() const { return topology_; }
  int horizon() const { return horizon_; }
  int width() const { return width_; }
  /// Number of sublattice sites carrying a sign.
  std::size_t site_count() const;

  int sign(int u, std::int64_t x) const;
  /// One step of the walker at (u, x).
  std::int64_t step(int u, std::int64_t x) const;

 private:
  static std::size_t columns_for(Topology topology, int horizon, int width);
  std::size_t offset(int u, std::int64_t x) const;

  Topology topology_;
  int horizon_;
  int width_;
  std::size_t columns_;
  std::vector<std::int8_t> signs_;  // horizon x columns_, zero off the sublattice
};

/// A coalescing map xi_{s,t}: images of the sublattice points at time s.
class WebMap {
 public:
  WebMap(Topology topology, int width, int start_parity, int end_parity, std::vector<std::int64_t> domain,
         std::vector<std::int64_t> image);

  static WebMap identity(Topology topology, int width, int parity);

  Topology topology() const { return topology_; }
  int width() const { return width_; }
  int start_parity() const { return start_parity_; }
  int end_parity() const { return end_parity_; }
  const std::vector<std::int64_t>& domain() const { return domain_; }
  const std::vector<std::int64_t>& image() const { return image_; }

  /// Image of a domain point (off-parity points are rounded down first).
  std::int64_t operator()(std::int64_t x) const;

  bool operator==(const WebMap&) const = default;

 private:
  Topology topology_;
  int width_;
  int start_parity_;
  int end_parity_;
  std::vector<std::int64_t> domain_;
  std::vector<std::int64_t> image_;
};

/// xi_{s,t} on `field`; throws InvalidParameter unless 0 <= s <= t <= horizon.
WebMap evolve_web(const SignField& field, int s, int t);

/// x -> g(f(x)). Throws ParityMismatch when f's end parity differs from g's start
/// parity, InvalidParameter when the geometries differ.
WebMap compose_maps(const WebMap& f, const WebMap& g);

/// n(s,t): the number of distinct image points.
std::size_t critical_count(const WebMap& map);

/// Domain points whose image differs from that of the previous domain point
/// (cyclically on the circle). These are the left ends of the steps.
std::vector<std::int64_t> critical_points(const WebMap& map);

/// E n(0,t) on the circle of even circumference `width`, by enumerating every field.
Rational expected_critical_count(int width, int t);

struct CriticalCountEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of E n(0,t) on the circle; shard seeds derive from `seed`.
CriticalCountEstimate sample_critical_count(int width, int t, std::size_t samples, std::uint64_t seed);

}  // namespace noiselab::web
