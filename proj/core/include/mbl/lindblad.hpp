#pragma once

#include <span>
#include <vector>

#include "mbl/integrator.hpp"
#include "mbl/model.hpp"
#include "mbl/quantum.hpp"

namespace mbl {

/// Linear generator acting on column-stacked density matrices,
/// vec(A rho B) = (B^T (x) A) vec(rho).
class Superoperator {
  public:
    Superoperator(SpaceDescriptor space, Matrix data);

    const SpaceDescriptor& space() const noexcept { return space_; }
    const Matrix& data() const noexcept { return data_; }

    /// Largest |(vec(I)^T L)_k|; zero for a trace-preserving generator.
    double trace_defect() const;

  private:
    SpaceDescriptor space_;
    Matrix data_;
};

Vector vectorize(const Matrix& rho);
Matrix unvectorize(const Vector& v, int dim);

/// vec(-i[H, .]) as a superoperator matrix.
Matrix hamiltonian_generator(const Matrix& h);

/// vec(2 c rho c^dag - c^dag c rho - rho c^dag c) as a superoperator matrix.
Matrix dissipator(const Matrix& c);

/// Master-equation generator. Scenario A carries the thermal magnon bath
/// (decay at (n_th + 1) kappa_m / 2, excitation at n_th kappa_m / 2);
/// scenario B is the zero-temperature version without a qubit drive.
Superoperator build_liouvillian(const SystemParams& p);

/// Unique stationary state via trace-row replacement and partial-pivot LU.
/// Throws SingularityError when the constrained system is singular.
DensityMatrix steady_state(const Superoperator& L);

/// Largest |(L vec(rho))_k|.
double steady_residual(const Superoperator& L, const DensityMatrix& rho);

/// Adaptive integration of d vec(rho)/dt = L vec(rho); snapshots at
/// `times` (which start at the time of rho0).
std::vector<DensityMatrix> evolve(const Superoperator& L, const DensityMatrix& rho0,
                                  std::span<const double> times,
                                  const ode::Tolerances& tol = {}, ode::Stats* stats = nullptr);

/// <m^dag m^dag m m> / <m^dag m>^2.
double g2_zero(const DensityMatrix& rho, const SpaceDescriptor& space);

/// <m^dag m>.
double mean_occupation(const DensityMatrix& rho);

/// P_n = sum_q <q, n| rho |q, n> for n = 0..N-1.
std::vector<double> fock_populations(const DensityMatrix& rho, const SpaceDescriptor& space);

}  // namespace mbl
