// Parallel kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <omp.h>

#include "galcas/envelope.hpp"
#include "galcas/invariants.hpp"
#include "galcas/liealg.hpp"
#include "galcas/virtual_copy.hpp"

using namespace galcas;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

bool report(const std::string& name, const std::function<void()>& par, const std::function<void()>& ser, bool agree,
            int reps = 3) {
  const double tp = seconds(par, reps), ts = seconds(ser, reps);
  std::printf("%-34s serial %9.4f s  parallel %9.4f s  speedup %5.2f  %s\n", name.c_str(), ts, tp, ts / tp,
              agree ? "agree" : "DISAGREE");
  return agree;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  bool ok = true;

  for (auto [tw, d] : {std::pair{3, 6}, std::pair{5, 6}}) {
    const auto L = lie::build_extended(lie::HalfInt(tw), lie::Signature(d, 0));
    const std::string tag = " l=" + std::to_string(tw) + "/2 d=" + std::to_string(d);
    ok &= report("jacobi_check" + tag, [&] { lie::jacobi_check(L); }, [&] { lie::jacobi_check_serial(L); },
                 lie::jacobi_check(L).size() == lie::jacobi_check_serial(L).size());
  }

  for (auto [tw, d] : {std::pair{5, 6}, std::pair{5, 8}}) {
    const auto L = lie::build_unextended(lie::HalfInt(tw), lie::Signature(d, 0));
    const std::string tag = " l=" + std::to_string(tw) + "/2 d=" + std::to_string(d);
    constexpr std::size_t trials = 8;
    ok &= report("generic_rank" + tag, [&] { inv::generic_rank(L, trials, 42); },
                 [&] { inv::generic_rank_serial(L, trials, 42); },
                 inv::generic_rank(L, trials, 42).rank == inv::generic_rank_serial(L, trials, 42).rank, 1);
  }

  {
    const auto L = lie::build_extended(lie::HalfInt(3), lie::Signature(4, 0));
    envelope::Envelope env(L);
    const auto vc = vcopy::solve_copy(L, env);
    for (const auto& s : inv::casimir_so(vc)) {
      const std::string tag = " so " + s.route + " e-degree " + std::to_string(s.e_degree);
      ok &= report("invariance_check" + tag, [&] { inv::invariance_check(s.poly, L); },
                   [&] { inv::invariance_check_serial(s.poly, L); },
                   inv::invariance_check(s.poly, L) == inv::invariance_check_serial(s.poly, L));
    }
  }
  return ok ? 0 : 1;
}
