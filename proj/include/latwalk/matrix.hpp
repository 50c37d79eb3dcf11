#pragma once

#include <cstdint>
#include <vector>

#include "latwalk/rational.hpp"

namespace latwalk {

class RatMatrix {
  public:
    RatMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Rat(0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rat& at(size_t r, size_t c) { return e_[r * cols_ + c]; }
    const Rat& at(size_t r, size_t c) const { return e_[r * cols_ + c]; }

  private:
    size_t rows_, cols_;
    std::vector<Rat> e_;
};

// Fixed 62-bit primes for modular rank pre-passes.
inline constexpr uint64_t kModularPrimes[] = {
    4611686018427388039ull, 4611686018427388073ull, 4611686018427388081ull,
    4611686018427388091ull, 4611686018427388093ull, 4611686018427388097ull};

// Rank of m reduced mod p. Throws RetryablePrimeError if p divides some
// entry denominator. Always <= the exact rank.
size_t rank_mod_prime(const RatMatrix& m, uint64_t p);

// Basis of the exact right nullspace, each vector normalized so its first
// nonzero entry is 1. Empty iff m has full column rank. Fraction-free
// (Bareiss) forward elimination after clearing rows to integers, exact
// rational back-substitution; a modular rank pre-pass short-circuits the
// full-column-rank case.
std::vector<std::vector<Rat>> nullspace(const RatMatrix& m);

}  // namespace latwalk
