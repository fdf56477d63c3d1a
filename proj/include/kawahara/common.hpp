#pragma once

#include <stdexcept>
#include <string>

namespace kawahara {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Contract violations (bad arguments, broken invariants) surface as ContractError;
// numerical escape of the flow surfaces as BlowUpError carrying the last finite time.
// Everything else is a plain runtime_error.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_finite_t)
      : std::runtime_error(what), last_finite_t_(last_finite_t) {}
  double last_finite_t() const { return last_finite_t_; }

 private:
  double last_finite_t_;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractError(msg);
}

}  // namespace kawahara
