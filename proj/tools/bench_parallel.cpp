// Compares the serial reference paths against the OpenMP ones on generated
// instances and checks that both produce identical solutions.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "viewsel/exact.hpp"
#include "viewsel/fptas.hpp"
#include "viewsel/genbench.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP benchmark"};
  std::vector<std::int64_t> sizes{1023, 2047, 4095};
  std::string epsilon_text = "0.5";
  std::uint64_t seed = 1;
  std::string family_text = "balanced-binary";
  bool run_dp = false;
  app.add_option("--sizes", sizes, "instance sizes")->delimiter(',');
  app.add_option("--epsilon", epsilon_text, "scheme accuracy");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--family", family_text, "instance family");
  app.add_flag("--dp", run_dp, "also benchmark the exact DP row kernel");
  CLI11_PARSE(app, argc, argv);

  using namespace viewsel;
  Rational eps = Rational::from_decimal(epsilon_text);

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel runs fall back to serial\n");
#endif

  std::printf("\nfptas (epsilon = %s, family = %s)\n", eps.str().c_str(),
              family_text.c_str());
  std::printf("%10s %12s %12s %9s %10s %8s\n", "n", "serial_ms", "parallel_ms",
              "speedup", "lambda", "max_list");
  for (std::int64_t n : sizes) {
    GenSpec spec;
    spec.family = GenSpec::parse_family(family_text);
    spec.n = n;
    spec.seed = seed;
    spec.freq_max = 20;
    spec.cost_max = 50;
    spec.size_max = 30;
    Instance inst = generate(spec);

    SketchStats stats_serial;
    FptasOptions serial_opts;
    serial_opts.exec = Exec::serial;
    serial_opts.stats = &stats_serial;
    auto t0 = Clock::now();
    Solution serial = approximate(inst, eps, serial_opts);
    double serial_ms = time_ms(t0);

    FptasOptions parallel_opts;
    parallel_opts.exec = Exec::parallel;
    t0 = Clock::now();
    Solution parallel = approximate(inst, eps, parallel_opts);
    double parallel_ms = time_ms(t0);

    if (!(serial == parallel)) {
      std::fprintf(stderr, "MISMATCH at n=%lld: serial and parallel differ\n",
                   static_cast<long long>(n));
      return 1;
    }
    std::printf("%10lld %12.1f %12.1f %8.2fx %10lld %8lld\n",
                static_cast<long long>(n), serial_ms, parallel_ms,
                serial_ms / parallel_ms, static_cast<long long>(serial.lambda),
                static_cast<long long>(stats_serial.max_list_len));
  }

  if (run_dp) {
    GenSpec spec;
    spec.family = GenSpec::Family::random;
    spec.n = 400;
    spec.seed = seed;
    spec.size_max = 200;
    spec.budget = 20000;
    Instance inst = generate(spec);

    auto t0 = Clock::now();
    Solution serial = dp_exact(inst, Exec::serial);
    double serial_ms = time_ms(t0);
    t0 = Clock::now();
    Solution parallel = dp_exact(inst, Exec::parallel);
    double parallel_ms = time_ms(t0);
    if (!(serial == parallel)) {
      std::fprintf(stderr, "MISMATCH: dp serial and parallel differ\n");
      return 1;
    }
    std::printf("\ndp (n=400, budget=20000)\n");
    std::printf("%10s %12.1f %12.1f %8.2fx %10lld\n", "",
                serial_ms, parallel_ms, serial_ms / parallel_ms,
                static_cast<long long>(serial.lambda));
  }
  std::printf("\nserial and parallel results identical\n");
  return 0;
}
