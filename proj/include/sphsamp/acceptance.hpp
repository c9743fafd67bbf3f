#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sphsamp {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
  double seconds;
};

/// Runs the thirteen acceptance criteria, printing one PASS/FAIL line each.
/// quick trims the parameter grids; tolerances are never relaxed.
std::vector<CriterionResult> run_acceptance(bool quick, std::ostream& os);

/// max over sample points u of |sigma(S^d) K_L(u,u) - pi_L| / pi_L.
double kernel_diagonal_error(int d, int L, int samples, std::uint64_t seed);

/// max over trials of |int K_L(u, .) Q - Q(u)| / ||Q||_inf on S^2, with Q random
/// in Pi_L and u at random positions.
double reproducing_error(int L, int trials, std::uint64_t seed);

}  // namespace sphsamp
