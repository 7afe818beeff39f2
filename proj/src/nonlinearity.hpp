#pragma once

#include <complex>
#include <limits>
#include <string>

namespace nlslab {

using cplx = std::complex<double>;

inline constexpr double kUntruncated = std::numeric_limits<double>::infinity();

enum class FamilyKind { PowerLocal, Logarithmic, Damping, PowerPlusDamping };

// Gauge nonlinearity g(z) = (z/|z|) r(|z|) described by its real radial
// profile r. The damping families carry an extra factor i that is applied by
// the evolution module, not here.
struct NonlinearityFamily {
  FamilyKind kind = FamilyKind::PowerLocal;
  double lambda = 1.0;  // power coefficient
  double sigma = 2.0;   // power exponent, g = lambda |u|^sigma u
  double alpha = 0.5;   // damping exponent, g = u / |u|^alpha
  // sigma <= 2 is the validated 2D well-posedness range; larger sigma is
  // allowed only with this explicit flag set
  bool sigma_override = false;

  static NonlinearityFamily power(double lambda, double sigma);
  static NonlinearityFamily logarithmic();
  static NonlinearityFamily damping(double alpha);
  static NonlinearityFamily power_plus_damping(double lambda, double sigma, double alpha);

  void validate() const;
  bool has_power_part() const {
    return kind == FamilyKind::PowerLocal || kind == FamilyKind::PowerPlusDamping;
  }
  bool has_damping_part() const {
    return kind == FamilyKind::Damping || kind == FamilyKind::PowerPlusDamping;
  }
};

std::string family_name(FamilyKind kind);
FamilyKind family_from_name(const std::string& name);

// radial profiles; m = kUntruncated means no truncation
double power_profile(double lambda, double sigma, double m, double rho);
double damping_profile(double alpha, double m, double rho);
// combined log profile -a_m + b_m (equals rho log rho^2 when m = infinity)
double log_profile(double m, double rho);

// g (Hamiltonian part for PowerPlusDamping; pure families as listed)
cplx eval_g(const NonlinearityFamily& family, cplx z);
cplx eval_g_trunc(const NonlinearityFamily& family, double m, cplx z);

// the logarithmic split evaluated as a pair; g_m = -a + b
struct LogPair {
  cplx a, b;
};
LogPair eval_log_pair(double m, cplx z);

// int_0^rho of the family's truncated profile (closed form, C^1 across the
// truncation thresholds). For Logarithmic this is the primitive of the
// combined profile -a_m + b_m, i.e. Psi_m - Phi_m.
double antiderivative(const NonlinearityFamily& family, double m, double rho);

// damping-part primitive used by the damped diagnostics
double damping_primitive(double alpha, double m, double rho);

enum class InequalityKind { Lip24, Log34, LogReg35a, LogReg35b, Monotone42, HolderDamp };

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;
};

struct OracleParams {
  double m = kUntruncated;  // truncation level for Lip24 / LogReg / Monotone42
  double alpha = 0.5;       // HolderDamp / Monotone42 damping profile
  double lambda = 1.0;      // Lip24 power coefficients
  double sigma = 2.0;
  // profile checked by Monotone42
  NonlinearityFamily monotone_family = NonlinearityFamily::damping(0.5);
};

// Evaluates both sides of the named pointwise inequality exactly; `holds`
// compares against the stated constant (2 for Log34, sign for Monotone42,
// frozen calibrated constants for the rest).
InequalityCheck inequality_oracle(InequalityKind kind, cplx u, cplx v,
                                  const OracleParams& params);

}  // namespace nlslab
