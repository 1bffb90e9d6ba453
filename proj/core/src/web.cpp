#include "noiselab/web.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "noiselab/errors.hpp"
#include "noiselab/random.hpp"

namespace noiselab::web {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n) { return ((x % n) + n) % n; }

int parity(std::int64_t x) { return static_cast<int>(mod(x, 2)); }

void check_geometry(Topology topology, int horizon, int width) {
  if (horizon < 0) throw InvalidParameter("horizon must be non-negative");
  if (width < 2) throw InvalidParameter("width must be at least 2");
  if (topology == Topology::Circle && width % 2 != 0) throw InvalidParameter("circle circumference must be even");
}

// Leftmost window coordinate stored for the line.
std::int64_t line_origin(int horizon) { return -static_cast<std::int64_t>(horizon); }

}  // namespace

// ---------------------------------------------------------------- field

std::size_t SignField::columns_for(Topology topology, int horizon, int width) {
  return topology == Topology::Circle ? static_cast<std::size_t>(width)
                                      : static_cast<std::size_t>(width) + 2 * static_cast<std::size_t>(horizon);
}

SignField::SignField(Topology topology, int horizon, int width, std::vector<std::int8_t> signs)
    : topology_(topology), horizon_(horizon), width_(width), columns_(0), signs_(std::move(signs)) {
  check_geometry(topology, horizon, width);
  columns_ = columns_for(topology, horizon, width);
  if (signs_.size() != static_cast<std::size_t>(horizon) * columns_) throw InvalidParameter("sign table has the wrong size");
  const std::int64_t origin = topology == Topology::Circle ? 0 : line_origin(horizon);
  for (int u = 0; u < horizon; ++u) {
    for (std::size_t c = 0; c < columns_; ++c) {
      const auto s = signs_[static_cast<std::size_t>(u) * columns_ + c];
      const bool on = parity(u + origin + static_cast<std::int64_t>(c)) == 0;
      if (on && s != 1 && s != -1) throw InvalidParameter("field signs must be +-1 on the sublattice");
      if (!on && s != 0) throw InvalidParameter("field sites off the sublattice must be 0");
    }
  }
}

namespace {

template <class Draw>
std::vector<std::int8_t> fill(Topology topology, int horizon, std::size_t columns, std::int64_t origin, Draw&& draw) {
  (void)topology;
  std::vector<std::int8_t> signs(static_cast<std::size_t>(horizon) * columns, 0);
  for (int u = 0; u < horizon; ++u) {
    for (std::size_t c = 0; c < columns; ++c) {
      if (parity(u + origin + static_cast<std::int64_t>(c)) == 0) signs[static_cast<std::size_t>(u) * columns + c] = draw();
    }
  }
  return signs;
}

}  // namespace

SignField SignField::constant(Topology topology, int horizon, int width, int sign) {
  check_geometry(topology, horizon, width);
  if (sign != 1 && sign != -1) throw InvalidParameter("constant sign must be +-1");
  const auto origin = topology == Topology::Circle ? 0 : line_origin(horizon);
  return SignField(topology, horizon, width,
                   fill(topology, horizon, columns_for(topology, horizon, width), origin,
                        [sign] { return static_cast<std::int8_t>(sign); }));
}

SignField SignField::random(Topology topology, int horizon, int width, std::uint64_t seed) {
  check_geometry(topology, horizon, width);
  Rng rng(seed);
  const auto origin = topology == Topology::Circle ? 0 : line_origin(horizon);
  return SignField(topology, horizon, width,
                   fill(topology, horizon, columns_for(topology, horizon, width), origin,
                        [&rng] { return static_cast<std::int8_t>(rng.coin() ? 1 : -1); }));
}

SignField SignField::from_bits(Topology topology, int horizon, int width, std::uint64_t bits) {
  check_geometry(topology, horizon, width);
  const auto origin = topology == Topology::Circle ? 0 : line_origin(horizon);
  int k = 0;
  auto signs = fill(topology, horizon, columns_for(topology, horizon, width), origin, [&] {
    if (k >= 63) throw BudgetExceeded("field has too many sites for a 63-bit encoding");
    return static_cast<std::int8_t>(((bits >> k++) & 1U) != 0 ? 1 : -1);
  });
  return SignField(topology, horizon, width, std::move(signs));
}

std::size_t SignField::site_count() const {
  return static_cast<std::size_t>(std::count_if(signs_.begin(), signs_.end(), [](std::int8_t s) { return s != 0; }));
}

std::size_t SignField::offset(int u, std::int64_t x) const {
  if (u < 0 || u >= horizon_) throw InvalidParameter("time outside the field");
  std::int64_t c = 0;
  if (topology_ == Topology::Circle) {
    c = mod(x, width_);
  } else {
    c = x - line_origin(horizon_);
    if (c < 0 || c >= static_cast<std::int64_t>(columns_)) throw InvalidParameter("position outside the line window");
  }
  return static_cast<std::size_t>(u) * columns_ + static_cast<std::size_t>(c);
}

int SignField::sign(int u, std::int64_t x) const {
  if (parity(u + x) != 0) throw InvalidParameter("site is off the sublattice");
  return signs_[offset(u, x)];
}

std::int64_t SignField::step(int u, std::int64_t x) const {
  const std::int64_t y = x + sign(u, x);
  return topology_ == Topology::Circle ? mod(y, width_) : y;
}

// ---------------------------------------------------------------- maps

WebMap::WebMap(Topology topology, int width, int start_parity, int end_parity, std::vector<std::int64_t> domain,
               std::vector<std::int64_t> image)
    : topology_(topology),
      width_(width),
      start_parity_(start_parity),
      end_parity_(end_parity),
      domain_(std::move(domain)),
      image_(std::move(image)) {
  if (domain_.size() != image_.size() || domain_.empty()) throw InvalidParameter("web map needs matching nonempty domain and image");
  if (!std::is_sorted(domain_.begin(), domain_.end())) throw InvalidParameter("web map domain must be increasing");
  for (auto x : domain_) {
    if (parity(x) != start_parity_) throw ParityMismatch("domain point off the start parity");
  }
  for (auto y : image_) {
    if (parity(y) != end_parity_) throw ParityMismatch("image point off the end parity");
  }
}

WebMap WebMap::identity(Topology topology, int width, int parity_class) {
  if (topology != Topology::Circle) throw InvalidParameter("identity map is defined on the circle");
  check_geometry(topology, 0, width);
  std::vector<std::int64_t> points;
  for (std::int64_t x = parity_class; x < width; x += 2) points.push_back(x);
  return WebMap(topology, width, parity_class, parity_class, points, points);
}

std::int64_t WebMap::operator()(std::int64_t x) const {
  if (topology_ == Topology::Circle) x = mod(x, width_);
  if (parity(x) != start_parity_) x -= 1;
  if (topology_ == Topology::Circle) x = mod(x, width_);
  const auto it = std::lower_bound(domain_.begin(), domain_.end(), x);
  if (it == domain_.end() || *it != x) throw InvalidParameter("point outside the map's domain");
  return image_[static_cast<std::size_t>(it - domain_.begin())];
}

WebMap evolve_web(const SignField& field, int s, int t) {
  if (s < 0 || s > t || t > field.horizon()) throw InvalidParameter("need 0 <= s <= t <= horizon");
  std::int64_t lo = 0;
  std::int64_t hi = field.width();
  if (field.topology() == Topology::Line) {
    // Walkers from this window stay inside the stored field up to time t.
    lo = line_origin(field.horizon()) + (t - s);
    hi = field.width() + field.horizon() - (t - s);
  }
  std::vector<std::int64_t> domain;
  for (std::int64_t x = lo; x < hi; ++x) {
    if (parity(s + x) == 0) domain.push_back(x);
  }
  if (domain.empty()) throw InvalidParameter("line window is empty for this interval");
  std::vector<std::int64_t> image = domain;
  for (int u = s; u < t; ++u) {
    for (auto& x : image) x = field.step(u, x);
  }
  return WebMap(field.topology(), field.width(), parity(s), parity(t), std::move(domain), std::move(image));
}

WebMap compose_maps(const WebMap& f, const WebMap& g) {
  if (f.topology() != g.topology() || f.width() != g.width()) throw InvalidParameter("maps live on different geometries");
  if (f.end_parity() != g.start_parity()) throw ParityMismatch("end parity of the first map differs from start parity of the second");
  std::vector<std::int64_t> image;
  image.reserve(f.image().size());
  for (auto y : f.image()) image.push_back(g(y));
  return WebMap(f.topology(), f.width(), f.start_parity(), g.end_parity(), f.domain(), std::move(image));
}

std::size_t critical_count(const WebMap& map) {
  return std::set<std::int64_t>(map.image().begin(), map.image().end()).size();
}

std::vector<std::int64_t> critical_points(const WebMap& map) {
  const auto& dom = map.domain();
  const auto& img = map.image();
  std::vector<std::int64_t> out;
  for (std::size_t k = 0; k < dom.size(); ++k) {
    if (k == 0 && map.topology() == Topology::Line) {
      out.push_back(dom[0]);
      continue;
    }
    const std::size_t prev = k == 0 ? dom.size() - 1 : k - 1;
    if (img[k] != img[prev]) out.push_back(dom[k]);
  }
  // A circle map with a single image has one step; report its first point.
  if (out.empty()) out.push_back(dom.front());
  return out;
}

Rational expected_critical_count(int width, int t) {
  check_geometry(Topology::Circle, t, width);
  const std::size_t sites = static_cast<std::size_t>(t) * static_cast<std::size_t>(width / 2);
  if (sites > 30) throw BudgetExceeded("too many sites to enumerate every field");
  BigInt total = 0;
  const std::uint64_t count = std::uint64_t{1} << sites;
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    total += static_cast<unsigned long>(critical_count(evolve_web(SignField::from_bits(Topology::Circle, t, width, bits), 0, t)));
  }
  Rational q(total, BigInt(1));
  mpz_mul_2exp(q.get_den_mpz_t(), q.get_den_mpz_t(), static_cast<mp_bitcnt_t>(sites));
  q.canonicalize();
  return q;
}

CriticalCountEstimate sample_critical_count(int width, int t, std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw InvalidParameter("need at least two samples");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const auto field = SignField::random(Topology::Circle, t, width, derive_seed(seed, n));
    const auto c = static_cast<double>(critical_count(evolve_web(field, 0, t)));
    sum += c;
    sum_sq += c * c;
  }
  const double ns = static_cast<double>(samples);
  const double mean = sum / ns;
  const double var = (sum_sq - ns * mean * mean) / (ns - 1.0);
  return {mean, std::sqrt(std::max(var, 0.0) / ns), samples};
}

}  // namespace noiselab::web
