#include "sphsamp/families.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sphsamp/error.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/parallel.hpp"
#include "sphsamp/sphere.hpp"

namespace sphsamp {

using std::numbers::pi;

const std::vector<SpherePoint>& TriangularFamily::at(int L) const {
  auto it = generations.find(L);
  if (it == generations.end())
    throw InputError("family has no generation L=" + std::to_string(L));
  return it->second;
}

std::vector<int> TriangularFamily::degrees() const {
  std::vector<int> out;
  for (const auto& [L, pts] : generations) out.push_back(L);
  return out;
}

std::vector<SpherePoint> fibonacci_points(std::size_t m) {
  std::vector<SpherePoint> out;
  if (m == 0) return out;
  if (m == 1) {
    out.push_back(SpherePoint::north(2));
    return out;
  }
  out.reserve(m);
  const double golden_angle = pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < m; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(m);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * static_cast<double>(i);
    out.emplace_back(std::vector<double>{r * std::cos(phi), r * std::sin(phi), z});
  }
  return out;
}

std::vector<SpherePoint> gen_fibonacci(int L, double c) {
  if (!(c > 0.0)) throw InputError("gen_fibonacci: c must be positive");
  const double target = c * static_cast<double>(dim_pi(2, L));
  if (target < 1.0 - 1e-12) throw InputError("gen_fibonacci: c * pi_L must be >= 1");
  return fibonacci_points(static_cast<std::size_t>(std::llround(target)));
}

std::vector<SpherePoint> gen_random(int d, std::size_t m, std::uint64_t seed) {
  if (d < 1) throw InputError("gen_random: d must be >= 1");
  if (m < 1) throw InputError("gen_random: m must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<SpherePoint> out;
  out.reserve(m);
  std::vector<double> v(static_cast<std::size_t>(d) + 1);
  while (out.size() < m) {
    double n2 = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      n2 += x * x;
    }
    if (n2 > 1e-300) out.emplace_back(v);
  }
  return out;
}

double min_pairwise_distance(const std::vector<SpherePoint>& pts) {
  if (pts.size() < 2) return std::numeric_limits<double>::infinity();
  // geodesic distance dominates the difference of polar angles, so a sweep
  // sorted by polar angle can stop early
  std::vector<std::pair<double, std::size_t>> polar(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    polar[i] = {std::acos(std::clamp(pts[i].coords().back(), -1.0, 1.0)), i};
  std::sort(polar.begin(), polar.end());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < polar.size(); ++a)
    for (std::size_t b = a + 1; b < polar.size(); ++b) {
      if (polar[b].first - polar[a].first >= best) break;
      best = std::min(best, geodesic_distance(pts[polar[a].second], pts[polar[b].second]));
    }
  return best;
}

Separation separation_constant(const std::vector<SpherePoint>& pts, int L) {
  if (pts.size() < 2) return {std::numeric_limits<double>::infinity(), true};
  return {(L + 1) * min_pairwise_distance(pts), false};
}

Separation separation_constant(const TriangularFamily& family) {
  Separation out{std::numeric_limits<double>::infinity(), true};
  for (const auto& [L, pts] : family.generations) {
    const Separation s = separation_constant(pts, L);
    if (!s.degenerate) {
      out.degenerate = false;
      out.value = std::min(out.value, s.value);
    }
  }
  return out;
}

std::vector<std::size_t> extract_separated_indices(const std::vector<SpherePoint>& pts, int L,
                                                   double delta) {
  if (!(delta > 0.0)) throw InputError("extract_separated: delta must be positive");
  const double radius = delta / (L + 1);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool ok = true;
    for (std::size_t k : kept)
      if (geodesic_distance(pts[i], pts[k]) < radius) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(i);
  }
  return kept;
}

std::vector<SpherePoint> extract_separated(const std::vector<SpherePoint>& pts, int L,
                                           double delta) {
  std::vector<SpherePoint> out;
  for (std::size_t i : extract_separated_indices(pts, L, delta)) out.push_back(pts[i]);
  return out;
}

double mesh_norm(const std::vector<SpherePoint>& pts, int L,
                 const std::vector<SpherePoint>& probe) {
  if (pts.empty()) throw InputError("mesh_norm: empty family");
  std::vector<double> nearest(probe.size());
  parallel_for(probe.size(), [&](std::size_t i) {
    double best = -2.0;
    std::size_t arg = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double c = dot(probe[i], pts[k]);
      if (c > best) {
        best = c;
        arg = k;
      }
    }
    nearest[i] = geodesic_distance(probe[i], pts[arg]);
  });
  double worst = 0.0;
  for (double v : nearest) worst = std::max(worst, v);
  return (L + 1) * worst;
}

double mesh_norm(const std::vector<SpherePoint>& pts, int L) {
  return mesh_norm(pts, L, fibonacci_points(20 * pts.size()));
}

long count_in_cap(const std::vector<SpherePoint>& pts, const SpherePoint& center, double radius) {
  if (radius >= pi) return static_cast<long>(pts.size());
  const double c = std::cos(radius);
  long n = 0;
  for (const auto& z : pts)
    if (dot(z, center) >= c) ++n;
  return n;
}

DensityReport density_scan(const TriangularFamily& family, const std::vector<double>& alphas,
                           const std::vector<int>& Ls, int probe_factor,
                           const Matrix* probe_rotation) {
  if (alphas.empty() || Ls.empty()) throw InputError("density_scan: empty alpha or L grid");
  if (probe_factor < 0) throw InputError("density_scan: negative probe factor");
  if (family.d != 2) throw UnsupportedDimension("density_scan: Fibonacci probe needs d = 2");
  DensityReport rep;
  rep.d = family.d;
  if (probe_factor < 4)
    rep.warnings.push_back("probe_factor " + std::to_string(probe_factor) +
                           " < 4: minimum counts may be overestimated");
  for (int L : Ls)
    for (double a : alphas)
      if (!(a > 0.0) || a / (L + 1) >= pi)
        throw InputError("density_scan: need 0 < alpha/(L+1) < pi");

  for (int L : Ls) {
    if (!family.has(L)) {
      rep.warnings.push_back("generation L=" + std::to_string(L) + " missing, skipped");
      continue;
    }
    const auto& pts = family.at(L);
    std::vector<SpherePoint> centers = pts;
    std::vector<SpherePoint> probe = fibonacci_points(static_cast<std::size_t>(probe_factor) * pts.size());
    if (probe_rotation) probe = apply_map(*probe_rotation, probe);
    centers.insert(centers.end(), probe.begin(), probe.end());

    for (double a : alphas) {
      const double radius = a / (L + 1);
      DensityCell cell{a, L, 0, 0, 0.0, 0.0};
      if (!centers.empty()) {
        std::vector<long> counts(centers.size());
        parallel_for(centers.size(), [&](std::size_t i) { counts[i] = count_in_cap(pts, centers[i], radius); });
        const auto [mn, mx] = std::minmax_element(counts.begin(), counts.end());
        cell.min_count = *mn;
        cell.max_count = *mx;
      }
      const double scale = std::pow(a, family.d);
      cell.min_ratio = cell.min_count / scale;
      cell.max_ratio = cell.max_count / scale;
      rep.cells.push_back(cell);
    }
  }
  if (!rep.cells.empty()) {
    const int l_max = *std::max_element(Ls.begin(), Ls.end());
    const double a_max = *std::max_element(alphas.begin(), alphas.end());
    for (const auto& c : rep.cells)
      if (c.L == l_max && c.alpha == a_max) {
        rep.d_minus_est = c.min_ratio;
        rep.d_plus_est = c.max_ratio;
      }
  }
  return rep;
}

TriangularFamily perturb_index(const TriangularFamily& family, double delta, PerturbSign sign,
                               const std::vector<int>& target_Ls) {
  if (delta < 0.0) throw InputError("perturb_index: delta must be >= 0");
  TriangularFamily out;
  out.d = family.d;
  std::vector<int> gaps;
  for (int L : target_Ls) {
    const double f = sign == PerturbSign::kPlus ? 1.0 + delta : 1.0 - delta;
    const int src = static_cast<int>(std::floor(f * L + 1e-9));
    if (!family.has(src)) {
      gaps.push_back(src);
      continue;
    }
    out.generations[L] = family.at(src);
  }
  if (!gaps.empty()) {
    std::ostringstream msg;
    msg << "perturb_index: missing source generations";
    for (int g : gaps) msg << ' ' << g;
    throw InputError(msg.str());
  }
  return out;
}

long carleson_max_count(const std::vector<SpherePoint>& pts, int L, double radius_scale) {
  if (!(radius_scale > 0.0)) throw InputError("carleson_max_count: radius_scale must be positive");
  const double radius = L == 0 ? pi : radius_scale / L;
  std::vector<long> counts(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { counts[i] = count_in_cap(pts, pts[i], radius); });
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

void write_family(const std::string& dir, const TriangularFamily& family) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::json manifest;
  manifest["format"] = "sphsamp-family";
  manifest["version"] = 1;
  manifest["d"] = family.d;
  manifest["generations"] = family.degrees();
  for (const auto& [L, pts] : family.generations)
    write_points((fs::path(dir) / ("Z_" + std::to_string(L) + ".pts")).string(), pts, family.d, L);
  std::ofstream os(fs::path(dir) / "family.json");
  if (!os) throw InputError("cannot write family manifest in " + dir);
  os << manifest.dump(2) << '\n';
}

TriangularFamily read_family(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream is(fs::path(dir) / "family.json");
  if (!is) throw InputError("no family.json in " + dir);
  nlohmann::json manifest;
  try {
    is >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("family.json: ") + e.what());
  }
  TriangularFamily fam;
  fam.d = manifest.at("d").get<int>();
  for (int L : manifest.at("generations").get<std::vector<int>>()) {
    PointFile pf = read_points((fs::path(dir) / ("Z_" + std::to_string(L) + ".pts")).string());
    if (pf.d != fam.d || pf.L != L)
      throw InputError("Z_" + std::to_string(L) + ".pts header disagrees with the manifest");
    fam.generations[L] = std::move(pf.points);
  }
  return fam;
}

}  // namespace sphsamp
