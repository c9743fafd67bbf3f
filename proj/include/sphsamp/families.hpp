#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sphsamp/linalg.hpp"
#include "sphsamp/point.hpp"

namespace sphsamp {

/// Point sets Z(L), one per degree L.
struct TriangularFamily {
  int d = 2;
  std::map<int, std::vector<SpherePoint>> generations;

  const std::vector<SpherePoint>& at(int L) const;
  bool has(int L) const { return generations.count(L) != 0; }
  std::vector<int> degrees() const;
};

/// m Fibonacci-spiral points on S^2; m = 1 is the north pole.
std::vector<SpherePoint> fibonacci_points(std::size_t m);

/// round(c * pi_L) Fibonacci points.
std::vector<SpherePoint> gen_fibonacci(int L, double c);

/// m i.i.d. uniform points on S^d from normalized Gaussian vectors.
std::vector<SpherePoint> gen_random(int d, std::size_t m, std::uint64_t seed);

/// Smallest pairwise geodesic distance. +inf when fewer than two points.
double min_pairwise_distance(const std::vector<SpherePoint>& pts);

struct Separation {
  double value;     // (L+1) * min distance
  bool degenerate;  // fewer than two points
};

Separation separation_constant(const std::vector<SpherePoint>& pts, int L);

/// Infimum over all generations of the family.
Separation separation_constant(const TriangularFamily& family);

/// Greedy pass in input order: keep a point iff it is at distance >= delta/(L+1)
/// from every kept point. Returns the kept indices.
std::vector<std::size_t> extract_separated_indices(const std::vector<SpherePoint>& pts,
                                                   int L, double delta);
std::vector<SpherePoint> extract_separated(const std::vector<SpherePoint>& pts, int L,
                                           double delta);

/// (L+1) * max over the probe of the distance to the nearest family point.
/// Upper-biased: depends on the probe.
double mesh_norm(const std::vector<SpherePoint>& pts, int L,
                 const std::vector<SpherePoint>& probe);
/// Default probe: 20 m Fibonacci points (d = 2).
double mesh_norm(const std::vector<SpherePoint>& pts, int L);

/// #{z : d(z, center) <= radius}.
long count_in_cap(const std::vector<SpherePoint>& pts, const SpherePoint& center,
                  double radius);

struct DensityCell {
  double alpha;
  int L;
  long min_count;
  long max_count;
  double min_ratio;
  double max_ratio;
};

struct DensityReport {
  int d = 2;
  std::vector<DensityCell> cells;
  double d_minus_est = 0.0;
  double d_plus_est = 0.0;
  std::vector<std::string> warnings;
};

/// Min/max counts in caps of radius alpha/(L+1) over candidate centers (the
/// family's points plus a Fibonacci probe of probe_factor * m_L points,
/// optionally rotated by `probe_rotation`), divided by alpha^d.
DensityReport density_scan(const TriangularFamily& family, const std::vector<double>& alphas,
                           const std::vector<int>& Ls, int probe_factor,
                           const Matrix* probe_rotation = nullptr);

enum class PerturbSign { kPlus, kMinus };

/// Output generation L is source generation floor((1 +- delta) L).
TriangularFamily perturb_index(const TriangularFamily& family, double delta,
                               PerturbSign sign, const std::vector<int>& target_Ls);

/// Largest number of points of Z(L) in a cap of radius radius_scale / L
/// centered at a point of Z(L). Centers are restricted to the family, so the
/// value can undercount the true supremum.
long carleson_max_count(const std::vector<SpherePoint>& pts, int L,
                        double radius_scale = 1.0);

// Family on disk: Z_<L>.pts per generation plus family.json.
void write_family(const std::string& dir, const TriangularFamily& family);
TriangularFamily read_family(const std::string& dir);

}  // namespace sphsamp
