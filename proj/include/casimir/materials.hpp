#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace casimir {

using cdouble = std::complex<double>;

/// One dipole transition n -> k of the atom. `omega_nk` is (E_n - E_k)/hbar,
/// so a downward (emitting) transition from state n is positive.
struct Transition {
  double omega_nk;     // rad/s
  double dipole_sq;    // |d_nk|^2, C^2 m^2
  double magnetic_sq;  // |m_nk|^2, A^2 m^4

  Transition(double omega_nk, double dipole_sq, double magnetic_sq = 0.0);
};

/// Isotropic atom prepared in state `state_label`.
class AtomModel {
 public:
  AtomModel(std::string state_label, std::vector<Transition> transitions);

  const std::string& state_label() const noexcept { return state_label_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  /// True when at least one downward transition exists.
  bool is_excited() const noexcept;
  bool has_magnetic_transitions() const noexcept;

  /// Convenience two-level atoms: ground (omega_nk = -omega10) or excited (+omega10).
  static AtomModel two_level_ground(double omega10, double dipole_sq, double magnetic_sq = 0.0);
  static AtomModel two_level_excited(double omega10, double dipole_sq, double magnetic_sq = 0.0);

 private:
  std::string state_label_;
  std::vector<Transition> transitions_;
};

// Response functions. `broadening` is the infinitesimal of the lim eps->0
// prescription; for a real frequency it must be supplied explicitly
// unless the frequency is away from every pole.

cdouble polarizability(const AtomModel& atom, cdouble freq, double broadening = 0.0);
cdouble magnetizability(const AtomModel& atom, cdouble freq, double broadening = 0.0);

/// Real-valued alpha(i xi) and beta(i xi), xi >= 0.
double polarizability_imag_axis(const AtomModel& atom, double xi);
double magnetizability_imag_axis(const AtomModel& atom, double xi);

struct ResonantWeight {
  double omega;            // omega_nk > 0
  double electric_weight;  // pi |d_nk|^2 / (3 hbar)
  double magnetic_weight;  // pi |m_nk|^2 / (3 hbar)
};

/// Weights of the delta-function parts of Im alpha and Im beta at the
/// downward transitions; empty for a ground state.
std::vector<ResonantWeight> resonant_weights(const AtomModel& atom);

struct Susceptibilities {
  cdouble eps_minus_one;     // eps - 1
  cdouble one_minus_inv_mu;  // 1 - 1/mu
  bool dilute_guard_exceeded = false;
};

inline constexpr double kDiluteGuard = 0.1;

/// Linearised Clausius-Mossotti map from atomic response to medium
/// susceptibilities. Flags (but does not reject) densities where
/// |eps - 1| or |1 - 1/mu| exceeds `dilute_guard`.
Susceptibilities clausius_mossotti(double eta, const AtomModel& atom, cdouble freq,
                                   double broadening = 0.0, double dilute_guard = kDiluteGuard);

// ---------------------------------------------------------------------------
// Macroscopic response of the reflector.

enum class ReflectorModel { perfect_electric_mirror, perfect_magnetic_mirror, drude_lorentz };

enum class OscillatorKind { absorbing, amplifying };

/// Term sign * strength^2 / (resonance^2 - omega^2 - i damping omega).
/// resonance = 0 gives a Drude term with plasma frequency `strength`.
struct LorentzOscillator {
  double strength;   // rad/s
  double resonance;  // rad/s
  double damping;    // rad/s
  OscillatorKind kind = OscillatorKind::absorbing;
};

class MaterialResponse {
 public:
  static MaterialResponse perfect_electric_mirror();
  static MaterialResponse perfect_magnetic_mirror();
  static MaterialResponse drude_lorentz(std::vector<LorentzOscillator> epsilon_terms,
                                        std::vector<LorentzOscillator> mu_terms = {});
  /// eps = mu = 1 everywhere; a drude-lorentz medium without oscillators.
  static MaterialResponse vacuum();

  ReflectorModel model() const noexcept { return model_; }
  bool is_perfect_mirror() const noexcept { return model_ != ReflectorModel::drude_lorentz; }
  bool is_vacuum() const noexcept;
  const std::vector<LorentzOscillator>& epsilon_terms() const noexcept { return eps_; }
  const std::vector<LorentzOscillator>& mu_terms() const noexcept { return mu_; }

  /// Only defined for drude-lorentz media.
  cdouble permittivity(cdouble freq) const;
  cdouble permeability(cdouble freq) const;
  double permittivity_imag_axis(double xi) const;
  double permeability_imag_axis(double xi) const;
  /// eps - 1 and mu - 1 without the cancellation of subtracting one.
  cdouble electric_susceptibility(cdouble freq) const;
  cdouble magnetic_susceptibility(cdouble freq) const;

  /// Exchange eps <-> mu (PEC <-> PMC).
  MaterialResponse dual() const;

  std::string describe() const;

 private:
  MaterialResponse(ReflectorModel model, std::vector<LorentzOscillator> eps, std::vector<LorentzOscillator> mu)
      : model_(model), eps_(std::move(eps)), mu_(std::move(mu)) {}

  ReflectorModel model_;
  std::vector<LorentzOscillator> eps_;
  std::vector<LorentzOscillator> mu_;
};

// ---------------------------------------------------------------------------
// Atom configuration files.
//
//   {
//     "state_label": "2p",
//     "transitions": [
//       {"omega_nk_rad_s": 1.55e16, "dipole_sq_C2m2": 1.1e-58, "magnetic_sq_A2m4": 0.0}
//     ]
//   }

AtomModel atom_model_from_json(const nlohmann::json& j);
nlohmann::json atom_model_to_json(const AtomModel& atom);
AtomModel load_atom_model(const std::filesystem::path& path);

}  // namespace casimir
