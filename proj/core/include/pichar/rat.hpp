#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "pichar/errors.hpp"

namespace pichar {

/// Exact arbitrary-precision rational / integer types. All field arithmetic in
/// the library is exact; floating point never feeds any logic.
using Rat = mpq_class;
using Int = mpz_class;

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::int64_t int_to_i64(const Int& z) {
  PICHAR_CHECK(z.fits_slong_p(), ErrorKind::Certification, "integer out of 64-bit range");
  return static_cast<std::int64_t>(z.get_si());
}

inline std::int64_t rat_to_i64(const Rat& q) {
  PICHAR_CHECK(rat_is_integer(q), ErrorKind::Certification, "expected an integer rational");
  return int_to_i64(Int(q.get_num()));
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

}  // namespace pichar
