#include "casimir/materials.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "casimir/constants.hpp"

namespace casimir {

Transition::Transition(double omega_nk, double dipole_sq, double magnetic_sq)
    : omega_nk(omega_nk), dipole_sq(dipole_sq), magnetic_sq(magnetic_sq) {
  if (!std::isfinite(omega_nk) || omega_nk == 0.0) {
    throw std::invalid_argument("Transition: omega_nk must be finite and nonzero");
  }
  if (!(dipole_sq >= 0.0) || !(magnetic_sq >= 0.0) || !std::isfinite(dipole_sq) || !std::isfinite(magnetic_sq)) {
    throw std::invalid_argument("Transition: squared matrix elements must be finite and non-negative");
  }
  if (dipole_sq == 0.0 && magnetic_sq == 0.0) {
    throw std::invalid_argument("Transition: dipole_sq and magnetic_sq cannot both be zero");
  }
}

AtomModel::AtomModel(std::string state_label, std::vector<Transition> transitions)
    : state_label_(std::move(state_label)), transitions_(std::move(transitions)) {
  if (transitions_.empty()) throw std::invalid_argument("AtomModel: at least one transition required");
}

bool AtomModel::is_excited() const noexcept {
  for (const auto& t : transitions_) {
    if (t.omega_nk > 0.0) return true;
  }
  return false;
}

bool AtomModel::has_magnetic_transitions() const noexcept {
  for (const auto& t : transitions_) {
    if (t.magnetic_sq > 0.0) return true;
  }
  return false;
}

AtomModel AtomModel::two_level_ground(double omega10, double dipole_sq, double magnetic_sq) {
  return AtomModel("ground", {Transition(-omega10, dipole_sq, magnetic_sq)});
}

AtomModel AtomModel::two_level_excited(double omega10, double dipole_sq, double magnetic_sq) {
  return AtomModel("excited", {Transition(omega10, dipole_sq, magnetic_sq)});
}

namespace {

template <class Weight>
cdouble response(const AtomModel& atom, cdouble freq, double broadening, Weight weight) {
  if (broadening < 0.0) throw std::invalid_argument("response: broadening must be non-negative");
  const cdouble ieps(0.0, broadening);
  cdouble sum = 0.0;
  for (const auto& t : atom.transitions()) {
    const double w = weight(t);
    if (w == 0.0) continue;
    const double omega_kn = -t.omega_nk;
    const cdouble lower = freq + omega_kn + ieps;
    const cdouble upper = freq - omega_kn + ieps;
    if (lower == 0.0 || upper == 0.0) {
      throw std::domain_error(
          fmt::format("response evaluated on the pole at omega = {:g} rad/s; supply a broadening", freq.real()));
    }
    sum += w * (1.0 / lower - 1.0 / upper);
  }
  return sum / (3.0 * kHbar);
}

template <class Weight>
double response_imag_axis(const AtomModel& atom, double xi, Weight weight) {
  double sum = 0.0;
  for (const auto& t : atom.transitions()) {
    const double omega_kn = -t.omega_nk;
    sum += weight(t) * 2.0 * omega_kn / (omega_kn * omega_kn + xi * xi);
  }
  return sum / (3.0 * kHbar);
}

constexpr auto electric = [](const Transition& t) { return t.dipole_sq; };
constexpr auto magnetic = [](const Transition& t) { return t.magnetic_sq; };

}  // namespace

cdouble polarizability(const AtomModel& atom, cdouble freq, double broadening) {
  return response(atom, freq, broadening, electric);
}

cdouble magnetizability(const AtomModel& atom, cdouble freq, double broadening) {
  return response(atom, freq, broadening, magnetic);
}

double polarizability_imag_axis(const AtomModel& atom, double xi) {
  return response_imag_axis(atom, xi, electric);
}

double magnetizability_imag_axis(const AtomModel& atom, double xi) {
  return response_imag_axis(atom, xi, magnetic);
}

std::vector<ResonantWeight> resonant_weights(const AtomModel& atom) {
  std::vector<ResonantWeight> out;
  const double pref = kPi / (3.0 * kHbar);
  for (const auto& t : atom.transitions()) {
    if (t.omega_nk > 0.0) out.push_back({t.omega_nk, pref * t.dipole_sq, pref * t.magnetic_sq});
  }
  return out;
}

Susceptibilities clausius_mossotti(double eta, const AtomModel& atom, cdouble freq, double broadening,
                                   double dilute_guard) {
  if (!(eta >= 0.0)) throw std::invalid_argument("clausius_mossotti: density must be non-negative");
  Susceptibilities s;
  if (eta == 0.0) {
    s.eps_minus_one = 0.0;
    s.one_minus_inv_mu = 0.0;
    return s;
  }
  s.eps_minus_one = eta * polarizability(atom, freq, broadening) / kEpsilon0;
  s.one_minus_inv_mu = kMu0 * eta * magnetizability(atom, freq, broadening);
  s.dilute_guard_exceeded = std::abs(s.eps_minus_one) > dilute_guard || std::abs(s.one_minus_inv_mu) > dilute_guard;
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void validate(const std::vector<LorentzOscillator>& terms) {
  for (const auto& o : terms) {
    if (!(o.strength >= 0.0) || !(o.resonance >= 0.0) || !(o.damping >= 0.0)) {
      throw std::invalid_argument("LorentzOscillator: strength, resonance and damping must be non-negative");
    }
    if (o.resonance == 0.0 && o.damping == 0.0) {
      throw std::invalid_argument("LorentzOscillator: a Drude term (resonance 0) needs nonzero damping");
    }
  }
}

double sign_of(const LorentzOscillator& o) { return o.kind == OscillatorKind::absorbing ? 1.0 : -1.0; }

// Susceptibility (response - 1), summed directly so that it keeps full
// relative precision when small.
cdouble lorentz_sum(const std::vector<LorentzOscillator>& terms, cdouble w) {
  cdouble v = 0.0;
  for (const auto& o : terms) {
    const cdouble den = o.resonance * o.resonance - w * w - cdouble(0.0, o.damping) * w;
    v += sign_of(o) * o.strength * o.strength / den;
  }
  return v;
}

double lorentz_sum_imag_axis(const std::vector<LorentzOscillator>& terms, double xi) {
  double v = 0.0;
  for (const auto& o : terms) {
    v += sign_of(o) * o.strength * o.strength / (o.resonance * o.resonance + xi * xi + o.damping * xi);
  }
  return v;
}

void require_medium(const MaterialResponse& m) {
  if (m.is_perfect_mirror()) {
    throw std::logic_error("perfect mirrors have no finite permittivity or permeability");
  }
}

std::string describe_terms(const std::vector<LorentzOscillator>& terms) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& o = terms[i];
    if (i) os << ';';
    os << fmt::format("{}:{:.17g}/{:.17g}/{:.17g}", o.kind == OscillatorKind::absorbing ? "abs" : "amp", o.strength,
                      o.resonance, o.damping);
  }
  os << ']';
  return os.str();
}

}  // namespace

MaterialResponse MaterialResponse::perfect_electric_mirror() {
  return MaterialResponse(ReflectorModel::perfect_electric_mirror, {}, {});
}

MaterialResponse MaterialResponse::perfect_magnetic_mirror() {
  return MaterialResponse(ReflectorModel::perfect_magnetic_mirror, {}, {});
}

MaterialResponse MaterialResponse::drude_lorentz(std::vector<LorentzOscillator> epsilon_terms,
                                                 std::vector<LorentzOscillator> mu_terms) {
  validate(epsilon_terms);
  validate(mu_terms);
  return MaterialResponse(ReflectorModel::drude_lorentz, std::move(epsilon_terms), std::move(mu_terms));
}

MaterialResponse MaterialResponse::vacuum() { return drude_lorentz({}, {}); }

bool MaterialResponse::is_vacuum() const noexcept {
  if (model_ != ReflectorModel::drude_lorentz) return false;
  auto inert = [](const std::vector<LorentzOscillator>& terms) {
    for (const auto& o : terms) {
      if (o.strength != 0.0) return false;
    }
    return true;
  };
  return inert(eps_) && inert(mu_);
}

cdouble MaterialResponse::permittivity(cdouble freq) const { return 1.0 + electric_susceptibility(freq); }

cdouble MaterialResponse::permeability(cdouble freq) const { return 1.0 + magnetic_susceptibility(freq); }

cdouble MaterialResponse::electric_susceptibility(cdouble freq) const {
  require_medium(*this);
  return lorentz_sum(eps_, freq);
}

cdouble MaterialResponse::magnetic_susceptibility(cdouble freq) const {
  require_medium(*this);
  return lorentz_sum(mu_, freq);
}

double MaterialResponse::permittivity_imag_axis(double xi) const {
  require_medium(*this);
  return 1.0 + lorentz_sum_imag_axis(eps_, xi);
}

double MaterialResponse::permeability_imag_axis(double xi) const {
  require_medium(*this);
  return 1.0 + lorentz_sum_imag_axis(mu_, xi);
}

MaterialResponse MaterialResponse::dual() const {
  switch (model_) {
    case ReflectorModel::perfect_electric_mirror:
      return perfect_magnetic_mirror();
    case ReflectorModel::perfect_magnetic_mirror:
      return perfect_electric_mirror();
    case ReflectorModel::drude_lorentz:
      break;
  }
  return MaterialResponse(ReflectorModel::drude_lorentz, mu_, eps_);
}

std::string MaterialResponse::describe() const {
  switch (model_) {
    case ReflectorModel::perfect_electric_mirror:
      return "perfect-electric-mirror";
    case ReflectorModel::perfect_magnetic_mirror:
      return "perfect-magnetic-mirror";
    case ReflectorModel::drude_lorentz:
      break;
  }
  return "drude-lorentz eps=" + describe_terms(eps_) + " mu=" + describe_terms(mu_);
}

// ---------------------------------------------------------------------------

AtomModel atom_model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("atom: expected an object");
  const std::string label = j.value("state_label", std::string("n"));
  if (!j.contains("transitions") || !j.at("transitions").is_array()) {
    throw std::invalid_argument("atom: missing 'transitions' array");
  }
  std::vector<Transition> transitions;
  for (const auto& t : j.at("transitions")) {
    if (!t.contains("omega_nk_rad_s")) throw std::invalid_argument("atom: transition missing 'omega_nk_rad_s'");
    transitions.emplace_back(t.at("omega_nk_rad_s").get<double>(), t.value("dipole_sq_C2m2", 0.0),
                             t.value("magnetic_sq_A2m4", 0.0));
  }
  return AtomModel(label, std::move(transitions));
}

nlohmann::json atom_model_to_json(const AtomModel& atom) {
  nlohmann::json transitions = nlohmann::json::array();
  for (const auto& t : atom.transitions()) {
    transitions.push_back(
        {{"omega_nk_rad_s", t.omega_nk}, {"dipole_sq_C2m2", t.dipole_sq}, {"magnetic_sq_A2m4", t.magnetic_sq}});
  }
  return {{"state_label", atom.state_label()}, {"transitions", transitions}};
}

AtomModel load_atom_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open atom file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("atom file " + path.string() + ": " + e.what());
  }
  return atom_model_from_json(j);
}

}  // namespace casimir
