#pragma once

#include "iafc/half_int.hpp"

namespace iafc {

// Wigner 3j symbol. Selection-rule violations return 0.0 rather than raising:
// callers routinely scan full m grids. Evaluated from the Racah single-sum
// form in exact rational arithmetic, so alternating-sum cancellation never
// costs digits; only the final square root and quotient are rounded.
double wigner3j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt m1, HalfInt m2, HalfInt m3);

// Wigner 6j symbol; 0.0 when any of the four triads breaks the triangle rule.
double wigner6j(HalfInt j1, HalfInt j2, HalfInt j3,
                HalfInt j4, HalfInt j5, HalfInt j6);

// <j1 m1; j2 m2 | J M> via the standard 3j relation.
double clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2,
                      HalfInt J, HalfInt M);

}  // namespace iafc
