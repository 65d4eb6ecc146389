#pragma once

#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

namespace mbl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class QubitLevel : int { ground = 0, excited = 1 };

/// Truncated qubit (x) Fock composite space.
///
/// Basis ordering is qubit-major: index(q, n) = q * fock_dim + n, with the
/// qubit ground level g' = 0 and excited level e' = 1.
class SpaceDescriptor {
  public:
    static constexpr int qubit_dim = 2;

    explicit SpaceDescriptor(int fock_dim);

    int fock_dim() const noexcept { return fock_dim_; }
    int total_dim() const noexcept { return qubit_dim * fock_dim_; }

    int index(QubitLevel q, int n) const;
    std::pair<QubitLevel, int> level(int index) const;

    friend bool operator==(const SpaceDescriptor&, const SpaceDescriptor&) = default;

  private:
    int fock_dim_;
};

/// Dense operator on a composite space. Immutable once built.
class Operator {
  public:
    Operator(SpaceDescriptor space, Matrix data);

    static Operator zero(SpaceDescriptor space);
    static Operator identity(SpaceDescriptor space);

    const SpaceDescriptor& space() const noexcept { return space_; }
    const Matrix& data() const noexcept { return data_; }
    int dim() const noexcept { return space_.total_dim(); }

    Complex operator()(int row, int col) const { return data_(row, col); }

  private:
    SpaceDescriptor space_;
    Matrix data_;
};

// Algebra. Binary operations throw DimensionError when spaces differ.
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(Complex s, const Operator& a);
Operator operator*(const Operator& a, const Operator& b);
Operator dagger(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);

/// Kronecker product of a 2x2 qubit factor and an N x N Fock factor,
/// laid out per SpaceDescriptor ordering.
Operator tensor(const Matrix& qubit_factor, const Matrix& fock_factor);

/// Plain Kronecker product, kron(A, B)(i*rb + k, j*cb + l) = A(i,j) B(k,l).
Matrix kron(const Matrix& a, const Matrix& b);

/// Truncated Fock-ladder lowering matrix a|n> = sqrt(n)|n-1>.
Matrix fock_lowering(int fock_dim);

/// m = I_2 (x) a on the composite space.
Operator annihilation(const SpaceDescriptor& space);

struct QubitOperators {
    Operator sigma_minus;
    Operator sigma_plus;
    Operator sigma_z;
    Operator sigma_x;
};

/// sigma_- = |g'><e'| (x) I_N and its derived Pauli operators.
QubitOperators qubit_ops(const SpaceDescriptor& space);

/// |q, n><q, n| on the composite space.
Operator projector(const SpaceDescriptor& space, QubitLevel q, int n);

/// Largest |H_ij - conj(H_ji)|.
double hermiticity_defect(const Operator& a);

/// Hermitian, unit-trace, positive-semidefinite operator.
///
/// Construction validates all three properties to `tolerance` and throws
/// ParameterError otherwise.
class DensityMatrix {
  public:
    static constexpr double default_tolerance = 1e-10;

    explicit DensityMatrix(Operator op, double tolerance = default_tolerance);

    static DensityMatrix pure(const SpaceDescriptor& space, QubitLevel q, int n);

    const Operator& op() const noexcept { return op_; }
    const SpaceDescriptor& space() const noexcept { return op_.space(); }
    const Matrix& data() const noexcept { return op_.data(); }

  private:
    Operator op_;
};

/// tr(op * rho).
Complex expectation(const Operator& op, const DensityMatrix& rho);

/// Smallest eigenvalue of a Hermitian operator.
double min_eigenvalue(const Operator& hermitian);

/// (1/2) * sum |eigenvalues(a - b)| for Hermitian a, b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace mbl
