#pragma once

#include <doctest.h>

#include <limits>

// doctest::Approx adds an absolute slack of epsilon * 1.0 by default, which
// makes it vacuous for SI quantities like 1e-6 m. Rel compares relatively.
inline doctest::Approx Rel(double value) { return doctest::Approx(value).scale(std::numeric_limits<double>::min()); }
