#pragma once

#include <stdexcept>
#include <string>

namespace nleig {

// Gamma evaluated at a pole (zero or a negative integer).
class gamma_pole_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A ratio recurrence hit a denominator below the configured guard.
class divide_by_near_zero : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Newton iteration on the local singular series failed to converge.
class series_fit_failure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Too few trajectory samples in the requested fit window.
class insufficient_samples : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A requested eigenvalue bracket was not found in the scanned range.
class bracket_not_found : public std::runtime_error {
public:
  bracket_not_found(int index, const std::string& what)
      : std::runtime_error(what), index(index) {}
  int index;
};

// The linear solver's domain cannot host the requested number of levels.
class domain_too_small : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Fewer data points than the regression requires.
class insufficient_data : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Power-law fit input contains slopes of mixed (or zero) sign.
class mixed_signs : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A classification stayed Unresolved after the automatic window increase.
class unresolved_classification : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace nleig
