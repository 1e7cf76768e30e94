// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernel_table.hpp"

namespace nanowire::simd {
namespace {

using detail::KernelTable;

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return &detail::scalar_table();
    case Backend::Avx2:
#if defined(NANOWIRE_HAVE_AVX2)
      return &detail::avx2_table();
#else
      return nullptr;
#endif
    case Backend::Neon:
#if defined(NANOWIRE_HAVE_NEON)
      return &detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect() {
  if (const char* env = std::getenv("NANOWIRE_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Backend::Scalar;
    if (want == "avx2" && supported(Backend::Avx2)) return Backend::Avx2;
    if (want == "neon" && supported(Backend::Neon)) return Backend::Neon;
  }
  if (supported(Backend::Avx2)) return Backend::Avx2;
  if (supported(Backend::Neon)) return Backend::Neon;
  return Backend::Scalar;
}

struct Active {
  std::atomic<Backend> backend{detect()};
};

Active& active() {
  static Active instance;
  return instance;
}

const KernelTable& table() { return *table_for(active().backend.load(std::memory_order_relaxed)); }

void require_same(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) throw std::invalid_argument(std::string("simd: size mismatch in ") + what);
}

}  // namespace

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Scalar:
      return "scalar";
    case Backend::Avx2:
      return "avx2";
    case Backend::Neon:
      return "neon";
  }
  return "unknown";
}

bool supported(Backend backend) {
  if (table_for(backend) == nullptr) return false;
#if defined(NANOWIRE_HAVE_AVX2)
  if (backend == Backend::Avx2) {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }
#endif
  return true;
}

Backend active_backend() { return active().backend.load(std::memory_order_relaxed); }

void force_backend(Backend backend) {
  if (!supported(backend))
    throw std::runtime_error("simd backend not available: " + std::string(to_string(backend)));
  active().backend.store(backend, std::memory_order_relaxed);
}

void tridiag_matvec(std::span<const double> lower, std::span<const double> diag,
                    std::span<const double> upper, std::span<const double> x,
                    std::span<double> y) {
  const std::size_t n = diag.size();
  require_same(n, lower.size(), "tridiag_matvec");
  require_same(n, upper.size(), "tridiag_matvec");
  require_same(n, x.size(), "tridiag_matvec");
  require_same(n, y.size(), "tridiag_matvec");
  table().tridiag_matvec(lower.data(), diag.data(), upper.data(), x.data(), y.data(), n);
}

void pentadiag_matvec(std::span<const double> lower2, std::span<const double> lower1,
                      std::span<const double> diag, std::span<const double> upper1,
                      std::span<const double> upper2, std::span<const double> x,
                      std::span<double> y) {
  const std::size_t n = diag.size();
  for (auto s : {lower2.size(), lower1.size(), upper1.size(), upper2.size(), x.size(), y.size()})
    require_same(n, s, "pentadiag_matvec");
  table().pentadiag_matvec(lower2.data(), lower1.data(), diag.data(), upper1.data(),
                           upper2.data(), x.data(), y.data(), n);
}

void axpby(double alpha, std::span<const double> x, double beta, std::span<const double> y,
           std::span<double> out) {
  require_same(x.size(), y.size(), "axpby");
  require_same(x.size(), out.size(), "axpby");
  table().axpby(alpha, x.data(), beta, y.data(), out.data(), x.size());
}

Moments weighted_moments(std::span<const double> w, std::span<const double> x,
                         std::span<const double> p) {
  require_same(w.size(), x.size(), "weighted_moments");
  require_same(w.size(), p.size(), "weighted_moments");
  return table().weighted_moments(w.data(), x.data(), p.data(), w.size());
}

double abs_diff_sum(std::span<const double> a, std::span<const double> b) {
  require_same(a.size(), b.size(), "abs_diff_sum");
  return table().abs_diff_sum(a.data(), b.data(), a.size());
}

void phase_rates(std::span<const double> n, std::span<const double> a, double k_plus, double c0,
                 double c1, std::span<double> dn, std::span<double> da) {
  const std::size_t count = n.size();
  for (auto s : {a.size(), dn.size(), da.size()}) require_same(count, s, "phase_rates");
  table().phase_rates(n.data(), a.data(), k_plus, c0, c1, dn.data(), da.data(), count);
}

}  // namespace nanowire::simd
