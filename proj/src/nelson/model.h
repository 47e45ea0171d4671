// The discretized fiber Hamiltonian at fixed total momentum:
//
//     H  =  1/2 (P_eff - P_f)^2  +  H_f  +  sum_j sqrt(w_j) v_j (b_j + b*_j)
//
// on the photon-number-truncated Fock space over a finite momentum grid,
// with P_eff = P - q for an optional momentum shift q.  The coupling
// function v_j is a sharp infrared cutoff at sigma times a smooth
// ultraviolet cutoff below kappa.  The quadratic electron term can be
// disabled, which makes the model exactly solvable by a coherent-state
// completion of the square (the validation corner used by the analytic
// oracles).
//
// Structure facts used elsewhere: the quadratic and field parts are
// diagonal in the occupation basis; the interaction is real, symmetric,
// and connects only adjacent photon grades (grade-tridiagonal).

#pragma once

#include <array>
#include <memory>

#include "fock/grid.h"
#include "fock/operators.h"
#include "fock/vector.h"
#include "linalg/csr.h"

namespace nelson {

struct NelsonParams {
  std::array<double, 3> P{0.0, 0.0, 0.0};  ///< total momentum, |P| < 1/3
  double sigma = 0.05;                     ///< infrared cutoff, 0 < sigma <= kappa
  double kappa = 1.0;                      ///< ultraviolet cutoff
  double lambda = 0.2;                     ///< coupling strength (0 allowed for free oracles)
  double alpha_bar = 0.0;                  ///< radial regularity exponent in [0, 1/2]
  double eps0 = 0.2;                       ///< relative width of the smooth UV roll-off
};

/// Throws std::domain_error naming the violated constraint:
/// |P| < 1/3, 0 < sigma <= kappa, lambda >= 0, alpha_bar in [0, 1/2],
/// eps0 in (0, 1).
void validate_params(const NelsonParams& params);

double pnorm(const std::array<double, 3>& p);

/// Smooth radial UV cutoff: 1 for r <= (1-eps0)*kappa, 0 for r >= kappa,
/// and a C-infinity monotone exp(-1/x)-bump transition in between.
double chi_kappa(double r, double kappa, double eps0);

/// The outer radius (1-eps0)^{-1} kappa of the widened support indicator
/// used by the envelope bounds: the plateau of chi for the *widened*
/// cutoff covers the support of the original coupling.
double kappa_star(const NelsonParams& params);

/// Coupling value at an arbitrary momentum:
/// lambda * 1_{|k| >= sigma} * chi_kappa(|k|) * |k|^alpha_bar / sqrt(2 |k|);
/// exactly zero below the infrared cutoff and where the UV cutoff
/// vanishes.  The resolvent-based routes evaluate this off the grid.
double form_factor_value(const NelsonParams& params,
                         const std::array<double, 3>& k);

/// Per-mode coupling values v_j = form_factor_value(params, k_j).
struct FormFactor {
  std::vector<double> v;
};

FormFactor build_form_factor(const NelsonParams& params,
                             const fock::MomentumGrid& grid);

/// Immutable shift-independent model data, shared between momentum shifts.
struct FiberCore {
  NelsonParams params;
  fock::MomentumGrid grid;
  std::shared_ptr<const fock::FockBasis> basis;
  std::shared_ptr<const fock::LadderOperators> ladders;
  fock::FieldDiagonals field;
  FormFactor form;
  bool quadratic_enabled = true;
  linalg::CsrMatrix interaction;  // off-diagonal part, real symmetric

  FiberCore(const NelsonParams& p, fock::MomentumGrid g,
            std::shared_ptr<const fock::FockBasis> b, bool quadratic);
};

/// Assembled Hamiltonian at one effective momentum.  Copies share the
/// core; only the diagonal is rebuilt when the momentum changes.
class NelsonModel {
 public:
  NelsonModel(std::shared_ptr<const FiberCore> core,
              std::array<double, 3> effective_p);

  std::size_t dim() const { return core_->basis->dim(); }
  const NelsonParams& params() const { return core_->params; }
  const fock::MomentumGrid& grid() const { return core_->grid; }
  const fock::FockBasis& basis() const { return *core_->basis; }
  const fock::LadderOperators& ladders() const { return *core_->ladders; }
  const fock::FieldDiagonals& field() const { return core_->field; }
  const FormFactor& form() const { return core_->form; }
  bool quadratic_enabled() const { return core_->quadratic_enabled; }
  const std::array<double, 3>& effective_p() const { return effective_p_; }
  const std::vector<double>& diagonal() const { return diag_; }
  const linalg::CsrMatrix& interaction() const { return core_->interaction; }
  const std::shared_ptr<const FiberCore>& shared_core() const { return core_; }

  /// y = H x.
  void apply(const fock::cplx* x, fock::cplx* y) const {
    core_->interaction.apply_plus_diag(diag_.data(), x, y);
  }

  /// Same model with effective momentum P - q (shares the core).
  NelsonModel shifted(const std::array<double, 3>& q) const;
  /// Same model at a different base momentum (used by finite-difference
  /// derivative drivers; shares the core, so the coupling and grid stay
  /// fixed while the diagonal moves).
  NelsonModel at_momentum(const std::array<double, 3>& p) const;

  /// Full sparse matrix (interaction plus diagonal) for dense oracles
  /// and symmetry checks.
  linalg::CsrMatrix full_matrix() const;

 private:
  std::shared_ptr<const FiberCore> core_;
  std::array<double, 3> effective_p_;
  std::vector<double> diag_;
};

/// Builds the model; the basis is shared, not copied.  Throws
/// std::invalid_argument if the basis mode count and grid size differ,
/// std::domain_error on invalid parameters.
NelsonModel build_hamiltonian(const NelsonParams& params,
                              const fock::MomentumGrid& grid,
                              std::shared_ptr<const fock::FockBasis> basis,
                              const std::array<double, 3>& q = {0.0, 0.0, 0.0},
                              bool quadratic_enabled = true);

}  // namespace nelson
