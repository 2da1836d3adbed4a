#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "symstab/kernels/modp.hpp"

namespace symstab::kernels {

ModPrime::ModPrime(std::uint32_t prime) : p(static_cast<double>(prime)), inv(1.0 / prime) {
  if (prime < 2 || prime >= (1u << 26))
    throw std::invalid_argument("modulus must lie in [2, 2^26)");
}

void axpy_mod_scalar(std::span<double> dst, std::span<const double> src, double factor,
                     const ModPrime& p) {
  const std::size_t n = dst.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = dst[i] + factor * src[i];
    const double q = std::floor(t * p.inv);
    double r = t - q * p.p;
    if (r < 0) r += p.p;
    if (r >= p.p) r -= p.p;
    dst[i] = r;
  }
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (isa_available(Isa::avx2)) return Isa::avx2;
  if (isa_available(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

AxpyFn axpy_kernel(Isa isa) {
  if (!isa_available(isa))
    throw std::runtime_error("instruction set " + std::string(isa_name(isa)) + " unavailable");
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2: return &axpy_mod_avx2;
#endif
#if defined(__aarch64__)
    case Isa::neon: return &axpy_mod_neon;
#endif
    default: return &axpy_mod_scalar;
  }
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("SYMSTAB_ISA")) {
      const std::string want(env);
      for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
        if (want == isa_name(isa) && isa_available(isa)) return isa;
    }
    return best_isa();
  }();
  return chosen;
}

AxpyFn axpy_kernel() { return axpy_kernel(active_isa()); }

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a % p;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("residue is not invertible");
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

std::size_t rank_mod_p(std::vector<double> entries, std::size_t rows, std::size_t cols,
                       const ModPrime& p, AxpyFn kernel) {
  if (entries.size() != rows * cols) throw std::invalid_argument("rank_mod_p: size mismatch");
  const auto prime = p.value();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (entries[r * cols + c] != 0) {
        pivot = r;
        break;
      }
    if (pivot == rows) continue;
    if (pivot != rank)
      for (std::size_t k = c; k < cols; ++k)
        std::swap(entries[pivot * cols + k], entries[rank * cols + k]);
    const auto inv = inverse_mod(static_cast<std::uint32_t>(entries[rank * cols + c]), prime);
    std::span<const double> src(entries.data() + rank * cols + c, cols - c);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const auto a = static_cast<std::uint64_t>(entries[r * cols + c]);
      if (a == 0) continue;
      const std::uint64_t f = (prime - (a * inv) % prime) % prime;
      kernel(std::span<double>(entries.data() + r * cols + c, cols - c), src,
             static_cast<double>(f), p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace symstab::kernels
