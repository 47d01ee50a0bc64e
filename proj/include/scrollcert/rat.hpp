#pragma once

#include <gmpxx.h>

namespace scrollcert {

// Arbitrary-precision rationals are GMP's mpq_class behind the generic
// scalar surface used by Matrix and MultiPoly.
using Rat = mpq_class;

inline bool is_zero(const Rat& a) { return sgn(a) == 0; }
inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }

struct QQField {
    using Scalar = Rat;
    Rat from_int(int64_t v) const { return Rat(static_cast<long>(v)); }
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
};

} // namespace scrollcert
