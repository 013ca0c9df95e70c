#pragma once

/// \file sampling.hpp
/// \brief Seeded sample generation and the data-parallel reduction kernels.
///
/// Every sampled check exists in two flavours selected by Execution: a plain
/// serial loop kept as the reference, and an OpenMP loop. Samples are always
/// drawn serially from the seed before evaluation, and the reductions are
/// order-independent (max, element-wise map), so both flavours return
/// bit-identical results.

#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <random>
#include <vector>

#include "blowup/blowup_model.hpp"

namespace blowup {

enum class Execution { Serial, Parallel };

using Rng = std::mt19937_64;

/// max(a, b) that lets NaN win, so a broken sample cannot hide.
inline double nan_max(double a, double b) {
  if (std::isnan(a) || std::isnan(b)) return std::numeric_limits<double>::infinity();
  return a > b ? a : b;
}

#pragma omp declare reduction(nanmax : double : omp_out = nan_max(omp_out, omp_in)) initializer(omp_priv = 0.0)

/// max_i fn(i) for i in [0, count). Exceptions thrown by fn are rethrown
/// after the loop (the first one recorded).
template <class Fn>
double max_over(std::size_t count, Fn&& fn, Execution exec) {
  double worst = 0.0;
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::Serial) {
    for (std::int64_t i = 0; i < n; ++i) worst = nan_max(worst, fn(static_cast<std::size_t>(i)));
    return worst;
  }
  std::exception_ptr error;
#pragma omp parallel for reduction(nanmax : worst) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      worst = nan_max(worst, fn(static_cast<std::size_t>(i)));
    } catch (...) {
#pragma omp critical(blowup_max_over_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return worst;
}

/// out[i] = fn(i), evaluated serially or with OpenMP.
template <class T, class Fn>
std::vector<T> map_over(std::size_t count, Fn&& fn, Execution exec) {
  std::vector<T> out(count);
  const auto n = static_cast<std::int64_t>(count);
  if (exec == Execution::Serial) {
    for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(blowup_map_over_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

/// Gaussian vector in F^n (independent real and imaginary parts over C).
Vector random_vector(Rng& rng, Field field, int n);

/// Uniformly distributed point of P(F^n).
ProjPoint random_proj_point(Rng& rng, Field field, int n);

/// Which part of X to draw from.
enum class SampleMix { Mixed, OffSigmaOnly, SigmaOnly };

/// Seeded points of X. Off-Sigma points have |x| log-uniform in
/// [1e-8, 3]; in Mixed mode every tenth sample lies on Sigma.
std::vector<BlowupPoint> sample_blowup_points(Field field, int n, std::size_t count, std::uint64_t seed,
                                              SampleMix mix = SampleMix::Mixed);

}  // namespace blowup
