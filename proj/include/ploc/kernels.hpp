#pragma once

// Data-parallel sweep kernels. Every kernel comes in a serial and an OpenMP
// flavour with identical results; the serial one is the reference the tests
// compare against, and tools/bench times both.

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ploc::kernels {

enum class Mode { Serial, Parallel };

#ifdef _OPENMP
inline constexpr bool have_openmp = true;
#else
inline constexpr bool have_openmp = false;
#endif

/// Smallest index in [0, n) where pred(i) is true, or -1 if none.
template <class Pred>
long first_index_serial(long n, Pred&& pred) {
  for (long i = 0; i < n; ++i)
    if (pred(i)) return i;
  return -1;
}

template <class Pred>
long first_index_omp(long n, Pred&& pred) {
  long best = n;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1024) reduction(min : best)
#endif
  for (long i = 0; i < n; ++i) {
    if (pred(i) && i < best) best = i;
  }
  return best == n ? -1 : best;
}

template <class Pred>
long first_index(long n, Pred&& pred, Mode mode) {
  return mode == Mode::Serial ? first_index_serial(n, pred) : first_index_omp(n, pred);
}

/// All indices in [0, n) where pred(i) is true, ascending.
template <class Pred>
std::vector<long> filter_indices_serial(long n, Pred&& pred) {
  std::vector<long> out;
  for (long i = 0; i < n; ++i)
    if (pred(i)) out.push_back(i);
  return out;
}

template <class Pred>
std::vector<long> filter_indices_omp(long n, Pred&& pred) {
  std::vector<long> out;
#ifdef _OPENMP
  int nt = omp_get_max_threads();
  std::vector<std::vector<long>> parts(static_cast<std::size_t>(nt));
  long chunk = (n + nt - 1) / std::max(nt, 1);
#pragma omp parallel num_threads(nt)
  {
    int t = omp_get_thread_num();
    long lo = t * chunk, hi = std::min(n, lo + chunk);
    auto& mine = parts[static_cast<std::size_t>(t)];
    for (long i = lo; i < hi; ++i)
      if (pred(i)) mine.push_back(i);
  }
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
#else
  out = filter_indices_serial(n, pred);
#endif
  return out;
}

template <class Pred>
std::vector<long> filter_indices(long n, Pred&& pred, Mode mode) {
  return mode == Mode::Serial ? filter_indices_serial(n, pred) : filter_indices_omp(n, pred);
}

/// Number of indices in [0, n) where pred(i) is true.
template <class Pred>
long count_matching_serial(long n, Pred&& pred) {
  long c = 0;
  for (long i = 0; i < n; ++i)
    if (pred(i)) ++c;
  return c;
}

template <class Pred>
long count_matching_omp(long n, Pred&& pred) {
  long c = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(+ : c)
#endif
  for (long i = 0; i < n; ++i)
    if (pred(i)) ++c;
  return c;
}

template <class Pred>
long count_matching(long n, Pred&& pred, Mode mode) {
  return mode == Mode::Serial ? count_matching_serial(n, pred) : count_matching_omp(n, pred);
}

}  // namespace ploc::kernels
