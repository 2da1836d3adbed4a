#include <cstring>
#include <random>

#include "doctest.h"
#include "symstab/exactlin/linalg.hpp"
#include "symstab/kernels/modp.hpp"

using namespace symstab;
using namespace symstab::kernels;

namespace {

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa i : {Isa::scalar, Isa::avx2, Isa::neon})
    if (isa_available(i)) out.push_back(i);
  return out;
}

}  // namespace

TEST_CASE("modulus validation") {
  CHECK_THROWS(ModPrime(1));
  CHECK_THROWS(ModPrime(1u << 26));
  CHECK(ModPrime().value() == kDefaultPrime);
}

TEST_CASE("inverse_mod") {
  for (std::uint32_t a : {1u, 2u, 12345u, kDefaultPrime - 1})
    CHECK((static_cast<std::uint64_t>(a) * inverse_mod(a, kDefaultPrime)) % kDefaultPrime == 1);
  CHECK_THROWS(inverse_mod(0, 7));
}

TEST_CASE("axpy kernels agree bit for bit with the scalar reference") {
  std::mt19937_64 rng(11);
  for (std::uint32_t prime : {3u, 65521u, kDefaultPrime}) {
    const ModPrime p(prime);
    std::uniform_int_distribution<std::uint32_t> res(0, prime - 1);
    for (std::size_t len : {0u, 1u, 3u, 4u, 7u, 64u, 1001u}) {
      std::vector<double> src(len), dst(len);
      for (auto& x : src) x = res(rng);
      for (auto& x : dst) x = res(rng);
      const double f = res(rng);
      std::vector<double> ref = dst;
      axpy_mod_scalar(ref, src, f, p);
      // reference against 64-bit integer arithmetic
      for (std::size_t i = 0; i < len; ++i) {
        const std::uint64_t want =
            (static_cast<std::uint64_t>(dst[i]) + static_cast<std::uint64_t>(f) *
                                                      static_cast<std::uint64_t>(src[i])) % prime;
        REQUIRE(ref[i] == static_cast<double>(want));
      }
      for (Isa isa : available_isas()) {
        std::vector<double> got = dst;
        axpy_kernel(isa)(got, src, f, p);
        CAPTURE(isa_name(isa));
        CHECK(std::memcmp(got.data(), ref.data(), len * sizeof(double)) == 0);
      }
    }
  }
}

TEST_CASE("rank_mod_p is ISA independent") {
  std::mt19937_64 rng(5);
  const ModPrime p;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30;
    std::vector<double> m(r * c);
    for (auto& x : m) x = (rng() % 3 == 0) ? static_cast<double>(rng() % 5) : 0.0;
    const auto ref = rank_mod_p(m, r, c, p, &axpy_mod_scalar);
    for (Isa isa : available_isas()) CHECK(rank_mod_p(m, r, c, p, axpy_kernel(isa)) == ref);
  }
}

TEST_CASE("unavailable ISA is reported, dispatch returns a working kernel") {
  for (Isa isa : {Isa::avx2, Isa::neon})
    if (!isa_available(isa)) CHECK_THROWS(axpy_kernel(isa));
  CHECK(isa_available(active_isa()));
  CHECK(axpy_kernel() != nullptr);
}

TEST_CASE("modular rank never exceeds the exact rank") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (rng() % 2) m.set(i, j, make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)));
    const long rp = rank_modp(m);
    REQUIRE(rp >= 0);
    CHECK(static_cast<std::size_t>(rp) <= rank_exact(m));
  }
}
