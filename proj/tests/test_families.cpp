#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "sphsamp/families.hpp"
#include "sphsamp/harmonic.hpp"
#include "sphsamp/sphere.hpp"

using namespace sphsamp;
using std::numbers::pi;

namespace {

double brute_min_distance(const std::vector<SpherePoint>& pts) {
  double best = pi;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, geodesic_distance(pts[i], pts[j]));
  return best;
}

}  // namespace

TEST_CASE("fibonacci points") {
  const auto one = fibonacci_points(1);
  CHECK(one[0][2] == doctest::Approx(1.0));
  const auto f = gen_fibonacci(16, 1.0);
  CHECK(f.size() == 289);
  const double sep = 17 * min_pairwise_distance(f);
  CHECK(sep >= 0.5);
  CHECK(sep <= 4.0);
  for (double c : {0.5, 0.8, 1.5, 2.0}) CHECK(gen_fibonacci(12, c).size() == static_cast<std::size_t>(std::lround(c * 169)));
}

TEST_CASE("random points") {
  const auto a = gen_random(3, 400, 17);
  const auto b = gen_random(3, 400, 17);
  double mean[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    double n2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      CHECK(a[i][k] == b[i][k]);
      n2 += a[i][k] * a[i][k];
      mean[k] += a[i][k] / 400;
    }
    CHECK(n2 == doctest::Approx(1.0));
  }
  for (double m : mean) CHECK(std::abs(m) < 4.0 / 20.0);
}

TEST_CASE("minimum distance and separation") {
  CHECK(separation_constant({SpherePoint::north(2), SpherePoint{0.0, 0.0, -1.0}}, 1).value == doctest::Approx(2 * pi));
  CHECK(separation_constant({SpherePoint::north(2), SpherePoint::north(2)}, 3).value == 0.0);
  CHECK(separation_constant({SpherePoint::north(2)}, 3).degenerate);
  auto pts = gen_random(2, 300, 3);
  CHECK(min_pairwise_distance(pts) == doctest::Approx(brute_min_distance(pts)));
  auto f = gen_fibonacci(16, 1.0);
  const double s1 = separation_constant(f, 16).value;
  std::shuffle(f.begin(), f.end(), std::mt19937_64(1));
  CHECK(s1 > 0.0);
  CHECK(separation_constant(f, 16).value == s1);
}

TEST_CASE("separated extraction") {
  const auto sep = gen_fibonacci(10, 1.0);
  CHECK(extract_separated(sep, 10, 0.5).size() == sep.size());
  CHECK(extract_separated({SpherePoint::north(2), SpherePoint::north(2)}, 5, 1.0).size() == 1);

  const auto pts = gen_random(2, 500, 21);
  const auto keep = extract_separated_indices(pts, 20, 1.0);
  const double r = 1.0 / 21;
  std::vector<bool> kept(pts.size(), false);
  for (auto i : keep) kept[i] = true;
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = a + 1; b < keep.size(); ++b) CHECK(geodesic_distance(pts[keep[a]], pts[keep[b]]) >= r);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (kept[i]) continue;
    bool covered = false;
    for (auto k : keep) covered = covered || geodesic_distance(pts[i], pts[k]) < r;
    CHECK(covered);
  }
}

TEST_CASE("mesh norm") {
  const auto f = gen_fibonacci(8, 1.0);
  CHECK(mesh_norm(f, 8, f) == 0.0);
  CHECK(mesh_norm({SpherePoint::north(2)}, 8, fibonacci_points(2000)) == doctest::Approx(9 * pi).epsilon(0.01));
  const auto g = gen_fibonacci(16, 1.0);
  const double coarse = mesh_norm(g, 16, fibonacci_points(20 * g.size()));
  const double fine = mesh_norm(g, 16, fibonacci_points(40 * g.size()));
  CHECK(std::abs(fine - coarse) < 0.05 * coarse);
}

TEST_CASE("density scan") {
  TriangularFamily empty;
  empty.generations[8] = {};
  const DensityReport e = density_scan(empty, {2.0}, {8}, 4);
  CHECK(e.d_minus_est == 0.0);
  CHECK(e.d_plus_est == 0.0);

  for (double c : {0.5, 1.0, 2.0}) {
    TriangularFamily fam;
    fam.generations[32] = gen_fibonacci(32, c);
    const DensityReport r = density_scan(fam, {16.0}, {32}, 4);
    CHECK(std::abs(r.d_minus_est - c / 4) <= 0.15 * c / 4);
    CHECK(std::abs(r.d_plus_est - c / 4) <= 0.15 * c / 4);
  }

  TriangularFamily a, b, u;
  a.generations[12] = gen_fibonacci(12, 1.0);
  b.generations[12] = gen_random(2, 150, 8);
  u.generations[12] = a.generations[12];
  u.generations[12].insert(u.generations[12].end(), b.generations[12].begin(), b.generations[12].end());
  const auto ra = density_scan(a, {4.0}, {12}, 4), ru = density_scan(u, {4.0}, {12}, 4);
  CHECK(ru.cells[0].max_count >= ra.cells[0].max_count);
  CHECK(ru.cells[0].min_count >= ra.cells[0].min_count);

  const Matrix rot = random_rotation(2, 5);
  TriangularFamily rotated;
  rotated.generations[12] = apply_map(rot, a.generations[12]);
  const auto rr = density_scan(rotated, {4.0}, {12}, 4, &rot);
  CHECK(rr.cells[0].min_count == ra.cells[0].min_count);
  CHECK(rr.cells[0].max_count == ra.cells[0].max_count);

  CHECK_FALSE(density_scan(a, {4.0}, {12}, 2).warnings.empty());
}

TEST_CASE("index perturbation") {
  TriangularFamily fam;
  for (int L = 1; L <= 20; ++L) fam.generations[L] = gen_fibonacci(L, 1.0);
  const TriangularFamily same = perturb_index(fam, 0.0, PerturbSign::kPlus, {5, 10});
  CHECK(same.at(10).size() == fam.at(10).size());
  const TriangularFamily up = perturb_index(fam, 0.5, PerturbSign::kPlus, {10});
  CHECK(up.at(10).size() == fam.at(15).size());
  const TriangularFamily down = perturb_index(fam, 0.3, PerturbSign::kMinus, {10});
  CHECK(down.at(10).size() == fam.at(7).size());
}

TEST_CASE("carleson counts") {
  std::vector<SpherePoint> stack(6, SpherePoint{0.1, 0.2, 0.9});
  CHECK(carleson_max_count(stack, 4) == 6);

  const double eps = 1.0;
  const auto sep = extract_separated(gen_random(2, 2000, 2), 10, eps);
  CHECK(carleson_max_count(sep, 10, 1.0) <= std::pow(1 + 2.0 / eps, 2));

  long worst = 0;
  for (int L : {8, 16, 32}) worst = std::max(worst, carleson_max_count(gen_fibonacci(L, 1.0), L));
  CHECK(worst <= 4);

  const auto p = gen_fibonacci(10, 1.0), q = gen_random(2, 100, 1);
  std::vector<SpherePoint> both = p;
  both.insert(both.end(), q.begin(), q.end());
  CHECK(carleson_max_count(both, 10) <= carleson_max_count(p, 10) + carleson_max_count(q, 10));
}

TEST_CASE("family directories round trip") {
  TriangularFamily fam;
  fam.generations[4] = gen_fibonacci(4, 1.5);
  fam.generations[9] = gen_fibonacci(9, 1.5);
  const auto dir = std::filesystem::temp_directory_path() / "sphsamp_family_test";
  std::filesystem::remove_all(dir);
  write_family(dir.string(), fam);
  CHECK(std::filesystem::exists(dir / "Z_4.pts"));
  CHECK(std::filesystem::exists(dir / "family.json"));
  const TriangularFamily back = read_family(dir.string());
  CHECK(back.degrees() == std::vector<int>{4, 9});
  for (std::size_t i = 0; i < fam.at(9).size(); ++i)
    for (int k = 0; k < 3; ++k) CHECK(back.at(9)[i][k] == fam.at(9)[i][k]);
  std::filesystem::remove_all(dir);
}
