#pragma once

namespace opjensen {

// Kantorovich-type constant for the power function x^r on [m, M], 0 < m <= M:
//
//               m*M^r - M*m^r     [ (r-1) * (M^r - m^r)  ]^r
//   K(m,M,r) = --------------- * [ --------------------- ]
//              (r-1) * (M - m)    [ r * (m*M^r - M*m^r)  ]
//
// with the removable singularities at r = 0 and r = 1 filled by their limit
// value 1, and a degenerate interval (M - m below the point-collapse
// threshold) also giving 1.  K >= 1 for r outside (0, 1) and 0 < K <= 1 for
// r inside.  Requires m > 0 (NonPositiveSpectrum otherwise).
double kantorovich(double m, double M, double r);

// Independent cross-check: the extremal value over [m, M] of the ratio
// chord(x) / x^r, where chord is the secant of x^r through (m, m^r) and
// (M, M^r).  The extremum is a maximum for r outside (0, 1) and a minimum
// inside (there the chord runs below the function), and equals K(m,M,r) in
// both regimes.  Computed by grid + golden-section optimization, entirely
// independent of the closed form above.
double kantorovich_oracle(double m, double M, double r);

}  // namespace opjensen
