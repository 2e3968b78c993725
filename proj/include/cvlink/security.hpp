#pragma once

#include <array>
#include <stdexcept>

#include "cvlink/phase_space.hpp"

namespace cvlink {

// Raised when covariance algebra leaves the physical domain by more than
// rounding slack (negative discriminant, symplectic eigenvalue below 1,
// non-finite intermediates). Distinct from std::invalid_argument so the CLI
// can map it to its own exit code.
class NumericalDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs to the collective-attack security analysis. The channel (t_ch, eps)
// is untrusted; the detector (eta, nu_el) is trusted and calibrated.
struct SecurityInputs {
  double v = 5.0;      // V = V_A + 1, shot-noise units
  double t_ch = 1.0;   // channel transmittance, detector efficiency excluded
  double eps = 0.0;    // channel excess noise, SNU, channel-input referred
  double eta = 1.0;    // detector efficiency
  double nu_el = 0.0;  // detector electronic noise, SNU
  double f = 1.0;      // reconciliation efficiency

  void validate() const;  // throws std::invalid_argument
};

// Channel/detector noise referred to the channel input:
//   chi_line = 1/t_ch - 1 + eps
//   chi_hom  = (1 - eta + nu_el) / eta
//   chi_tot  = chi_line + chi_hom / t_ch
struct ChiTerms {
  double line = 0.0;
  double hom = 0.0;
  double tot = 0.0;
};

ChiTerms chi_terms(const SecurityInputs& in);

// Shannon rate of the heterodyne-free (single-quadrature) Gaussian channel:
//   I_AB = (1/2) log2( (v + chi_tot) / (1 + chi_tot) ).
double mutual_information(const SecurityInputs& in);

// Bosonic entropy kernel g(x) = (x+1) log2(x+1) - x log2 x, g(0) = 0.
double entropy_g(double x);

struct HolevoResult {
  double chi_be = 0.0;
  std::array<double, 5> lambdas{};  // symplectic eigenvalues, lambda_5 = 1
  // Covariance invariants: a = lam1^2 + lam2^2, b = lam1^2 * lam2^2 and
  // likewise c, d for the post-measurement pair. Kept for diagnostics and
  // identity tests.
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

// Eve's Holevo information under an entangling-cloner collective attack with
// trusted homodyne detection. Tiny negative excursions (discriminants above
// -1e-9, eigenvalues above 1 - 1e-9) are clamped; anything worse throws
// NumericalDomainError.
HolevoResult holevo_bound(const SecurityInputs& in);

struct KeyRateReport {
  double rate = 0.0;  // f * i_ab - chi_be, bits per pulse
  double i_ab = 0.0;
  double chi_be = 0.0;
  std::array<double, 5> lambdas{};
  double chi_line = 0.0;
  double chi_hom = 0.0;
  double chi_tot = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

// Asymptotic secret key rate against collective attacks. May be negative;
// callers decide whether to floor at zero.
KeyRateReport key_rate(const SecurityInputs& in);

// Convenience: assemble SecurityInputs from SystemParams plus a channel
// excess noise figure (typically total_excess_noise()).
SecurityInputs security_inputs(const SystemParams& params, double excess_noise);

}  // namespace cvlink
