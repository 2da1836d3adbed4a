#pragma once
// Modular row kernels for the rank fast path.
//
// Residues are held in doubles: with p < 2^26 every product of two residues is
// below 2^52 and therefore exact, so a reduction a - floor(a / p) * p needs no
// 64-bit integer division and vectorizes on AVX2 and NEON. All variants return
// bit-identical results; the scalar kernel is the reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace symstab::kernels {

inline constexpr std::uint32_t kDefaultPrime = 67108859;  // largest prime below 2^26

struct ModPrime {
  double p;
  double inv;  // 1.0 / p

  explicit ModPrime(std::uint32_t prime = kDefaultPrime);
  std::uint32_t value() const { return static_cast<std::uint32_t>(p); }
};

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa best_isa();

// dst[i] = (dst[i] + factor * src[i]) mod p; inputs must already be reduced.
using AxpyFn = void (*)(std::span<double> dst, std::span<const double> src, double factor,
                        const ModPrime& p);

void axpy_mod_scalar(std::span<double> dst, std::span<const double> src, double factor,
                     const ModPrime& p);
#if defined(__x86_64__) || defined(_M_X64)
void axpy_mod_avx2(std::span<double> dst, std::span<const double> src, double factor,
                   const ModPrime& p);
#endif
#if defined(__aarch64__)
void axpy_mod_neon(std::span<double> dst, std::span<const double> src, double factor,
                   const ModPrime& p);
#endif

/// Kernel for a specific instruction set. Throws std::runtime_error when unavailable.
AxpyFn axpy_kernel(Isa isa);

/// Runtime-dispatched kernel (best available, honouring SYMSTAB_ISA=scalar|avx2|neon).
AxpyFn axpy_kernel();
Isa active_isa();

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p);

/// Rank of a dense row-major matrix of residues. The buffer is consumed.
std::size_t rank_mod_p(std::vector<double> entries, std::size_t rows, std::size_t cols,
                       const ModPrime& p, AxpyFn kernel);

}  // namespace symstab::kernels
