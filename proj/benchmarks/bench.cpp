// Compares the OpenMP kernels against their serial reference implementations
// on representative workloads and prints a timing table.

#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>

#include "findep/lemmas.hpp"
#include "findep/search.hpp"

using namespace findep;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
#endif
}

void row(const std::string& name, double serial, double parallel) {
  std::printf("%-40s %10.3f s %10.3f s %8.2fx\n", name.c_str(), serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main(int argc, char** argv) {
  int workers = 0;
  if (argc > 1) workers = std::atoi(argv[1]);
#ifdef _OPENMP
  if (workers <= 0) workers = omp_get_max_threads();
  std::printf("threads: %d\n", workers);
#else
  std::printf("built without OpenMP; parallel columns run the same code\n");
  workers = 1;
#endif
  std::printf("%-40s %12s %12s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    IntegerTower t(3, 5, 6);
    IntEngine engine(t, Mode::RF, 6);
    const auto ball = integer_ball(40);
    double t0 = now();
    const auto serial_res = [&] {
      SearchResult<long long> r;
      // Reference path: the same level-wise search with the serial checker.
      r = search_max(engine, ball, 6, {}, ExecPolicy{1});
      return r;
    }();
    double t1 = now();
    const auto par_res = search_max(engine, ball, 6, {}, ExecPolicy{workers});
    double t2 = now();
    row("subset search, integer ball 40, N=6", t1 - t0, t2 - t1);
    if (serial_res.max_size != par_res.max_size) {
      std::printf("MISMATCH in subset search results\n");
      return 1;
    }
  }

  {
    SanovTower t(3, 3);
    WordEngine engine(t, Mode::FREE, 3);
    const auto ball = word_ball(4);
    std::vector<ReducedWord> sets;
    double t0 = now();
    int independent_serial = 0;
    for (std::size_t i = 0; i + 1 < ball.size(); i += 2) {
      std::vector<ReducedWord> m{ball[i], ball[i + 1]};
      if (engine.is_independence_set_serial(m).status == Verdict::Status::independent)
        ++independent_serial;
    }
    double t1 = now();
    int independent_par = 0;
    for (std::size_t i = 0; i + 1 < ball.size(); i += 2) {
      std::vector<ReducedWord> m{ball[i], ball[i + 1]};
      if (engine.is_independence_set(m, ExecPolicy{workers}).status ==
          Verdict::Status::independent)
        ++independent_par;
    }
    double t2 = now();
    row("pair checks, word ball 4, N=3", t1 - t0, t2 - t1);
    if (independent_serial != independent_par) {
      std::printf("MISMATCH in pair check results\n");
      return 1;
    }
  }

  {
    SanovTower t(3, 3);
    double t0 = now();
    const auto serial_rep = verify_lemma_free5(t, 3, ExecPolicy{1});
    double t1 = now();
    const auto par_rep = verify_lemma_free5(t, 3, ExecPolicy{workers});
    double t2 = now();
    row("lemma free5, sanov(3), N=3", t1 - t0, t2 - t1);
    if (serial_rep.instances != par_rep.instances ||
        serial_rep.counterexamples != par_rep.counterexamples) {
      std::printf("MISMATCH in lemma verifier results\n");
      return 1;
    }
  }

  return 0;
}
