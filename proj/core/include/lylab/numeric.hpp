#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

namespace lylab {

using Complex = std::complex<double>;
using ComplexLD = std::complex<long double>;
using Quad = boost::multiprecision::float128;
using ComplexQuad = boost::multiprecision::complex128;

enum class Precision { Double, Extended };

// Reads LYLAB_PRECISION; unset means extended.
Precision precision_from_env();
std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

// C99 hex-float text, exact round trip.
std::string to_hex(double v);
double hex_to_double(std::string_view text);
std::string to_hex(const Quad& v);
Quad hex_to_quad(std::string_view text);

// 17 significant digits, used for CSV output.
std::string format_g17(double v);

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  // Independent stream for item `index`, so results do not depend on scheduling.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return SplitMix64(mix.next());
  }

 private:
  std::uint64_t state_;
};

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL);
std::string hash_hex(std::uint64_t h);

// Runs fn(i) for i in [0, n) on up to `jobs` threads with static contiguous
// blocks. Each index writes its own slot, so results never depend on jobs.
template <class F>
void parallel_for(std::size_t n, int jobs, F&& fn) {
  std::size_t workers = static_cast<std::size_t>(std::max(1, jobs));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct GaussRule {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

// Gauss-Legendre on [-1, 1], Newton on the three-term recurrence.
GaussRule gauss_legendre(int order);

// Gauss-Jacobi for (1-x)^a (1+x)^a on [-1, 1], weights normalized to sum 1.
GaussRule gauss_gegenbauer(int order, double a);

}  // namespace lylab
