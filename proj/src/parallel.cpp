#include "sphsamp/parallel.hpp"

namespace sphsamp {
namespace {
std::atomic<unsigned> g_jobs{0};
}

void set_jobs(unsigned n) { g_jobs = n; }

unsigned jobs() {
  const unsigned n = g_jobs.load();
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace sphsamp
