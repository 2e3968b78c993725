#include "cvlink/security.hpp"

#include <cmath>
#include <string>

namespace cvlink {

namespace {

constexpr double kDomainSlack = 1e-9;

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument(std::string(name) + " must be finite");
  }
}

// sqrt of a discriminant that is non-negative up to rounding slack.
double checked_disc_sqrt(double disc, const char* what) {
  if (!std::isfinite(disc)) {
    throw NumericalDomainError(std::string(what) + " is not finite");
  }
  if (disc < -kDomainSlack) {
    throw NumericalDomainError(std::string(what) + " is negative: " +
                               std::to_string(disc));
  }
  return std::sqrt(std::max(disc, 0.0));
}

// Symplectic eigenvalue from its square; physical states give lam^2 >= 1.
double checked_lambda(double lam_sq, const char* what) {
  if (!std::isfinite(lam_sq)) {
    throw NumericalDomainError(std::string(what) + " is not finite");
  }
  if (lam_sq < 1.0 - kDomainSlack) {
    throw NumericalDomainError(std::string(what) + "^2 below 1: " +
                               std::to_string(lam_sq));
  }
  return std::sqrt(std::max(lam_sq, 1.0));
}

}  // namespace

void SecurityInputs::validate() const {
  require_finite(v, "v");
  require_finite(t_ch, "t_ch");
  require_finite(eps, "eps");
  require_finite(eta, "eta");
  require_finite(nu_el, "nu_el");
  require_finite(f, "f");
  if (v <= 1.0) throw std::invalid_argument("v must be > 1");
  if (t_ch <= 0.0 || t_ch > 1.0) throw std::invalid_argument("t_ch must be in (0, 1]");
  if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");
  if (eta <= 0.0 || eta > 1.0) throw std::invalid_argument("eta must be in (0, 1]");
  if (nu_el < 0.0) throw std::invalid_argument("nu_el must be >= 0");
  if (f <= 0.0 || f > 1.0) throw std::invalid_argument("f must be in (0, 1]");
}

ChiTerms chi_terms(const SecurityInputs& in) {
  in.validate();
  ChiTerms chi;
  chi.line = 1.0 / in.t_ch - 1.0 + in.eps;
  chi.hom = (1.0 - in.eta + in.nu_el) / in.eta;
  chi.tot = chi.line + chi.hom / in.t_ch;
  return chi;
}

double mutual_information(const SecurityInputs& in) {
  const ChiTerms chi = chi_terms(in);
  return 0.5 * std::log2((in.v + chi.tot) / (1.0 + chi.tot));
}

double entropy_g(double x) {
  if (!std::isfinite(x)) {
    throw NumericalDomainError("entropy argument is not finite");
  }
  if (x < -kDomainSlack) {
    throw NumericalDomainError("entropy argument is negative: " +
                               std::to_string(x));
  }
  if (x <= 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

HolevoResult holevo_bound(const SecurityInputs& in) {
  const ChiTerms chi = chi_terms(in);
  const double v = in.v;
  const double t = in.t_ch;

  HolevoResult r;
  r.a = v * v * (1.0 - 2.0 * t) + 2.0 * t +
        t * t * (v + chi.line) * (v + chi.line);
  {
    const double root_b = t * (v * chi.line + 1.0);
    r.b = root_b * root_b;
  }
  const double disc12 = checked_disc_sqrt(r.a * r.a - 4.0 * r.b,
                                          "pre-measurement discriminant");
  const double lam1_sq = 0.5 * (r.a + disc12);
  const double lam2_sq = 0.5 * (r.a - disc12);

  const double sqrt_b = std::sqrt(r.b);
  const double denom = t * (v + chi.tot);
  r.c = (r.a * chi.hom + v * sqrt_b + t * (v + chi.line)) / denom;
  r.d = sqrt_b * (v + sqrt_b * chi.hom) / denom;
  const double disc34 = checked_disc_sqrt(r.c * r.c - 4.0 * r.d,
                                          "post-measurement discriminant");
  const double lam3_sq = 0.5 * (r.c + disc34);
  const double lam4_sq = 0.5 * (r.c - disc34);

  r.lambdas[0] = checked_lambda(lam1_sq, "lambda1");
  r.lambdas[1] = checked_lambda(lam2_sq, "lambda2");
  r.lambdas[2] = checked_lambda(lam3_sq, "lambda3");
  r.lambdas[3] = checked_lambda(lam4_sq, "lambda4");
  r.lambdas[4] = 1.0;

  r.chi_be = entropy_g((r.lambdas[0] - 1.0) / 2.0) +
             entropy_g((r.lambdas[1] - 1.0) / 2.0) -
             entropy_g((r.lambdas[2] - 1.0) / 2.0) -
             entropy_g((r.lambdas[3] - 1.0) / 2.0) -
             entropy_g((r.lambdas[4] - 1.0) / 2.0);
  if (!std::isfinite(r.chi_be)) {
    throw NumericalDomainError("holevo bound is not finite");
  }
  return r;
}

KeyRateReport key_rate(const SecurityInputs& in) {
  const ChiTerms chi = chi_terms(in);
  const HolevoResult h = holevo_bound(in);
  KeyRateReport rep;
  rep.i_ab = mutual_information(in);
  rep.chi_be = h.chi_be;
  rep.rate = in.f * rep.i_ab - rep.chi_be;
  rep.lambdas = h.lambdas;
  rep.chi_line = chi.line;
  rep.chi_hom = chi.hom;
  rep.chi_tot = chi.tot;
  rep.a = h.a;
  rep.b = h.b;
  rep.c = h.c;
  rep.d = h.d;
  return rep;
}

SecurityInputs security_inputs(const SystemParams& params,
                               double excess_noise) {
  params.validate();
  if (!std::isfinite(excess_noise) || excess_noise < 0.0) {
    throw std::invalid_argument("excess_noise must be >= 0");
  }
  SecurityInputs in;
  in.v = params.v_a + 1.0;
  in.t_ch = transmittance(params.gamma, params.length_km);
  in.eps = excess_noise;
  in.eta = params.eta;
  in.nu_el = params.nu_el;
  in.f = params.f;
  return in;
}

}  // namespace cvlink
