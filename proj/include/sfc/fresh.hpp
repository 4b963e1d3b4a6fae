#pragma once

#include <cstdint>

#include "sfc/ast.hpp"

namespace sfc {

/// Monotone supply of fresh identifiers, base + ' + counter (v -> v'1).
/// The lexer rejects primes, so names drawn from a supply seeded above every
/// prime suffix already in a program are globally fresh for it.
class FreshSupply {
 public:
  explicit FreshSupply(std::int64_t start = 0) : counter_(start) {}

  /// Seeds the counter above the largest prime suffix occurring in p, so a
  /// program that already went through renaming cannot collide.
  static FreshSupply for_program(const Program& p);

  Ident fresh(const Ident& base);

  std::int64_t counter() const { return counter_; }

 private:
  std::int64_t counter_;
};

}  // namespace sfc
