#include "mbl/quantum.hpp"

#include <cmath>
#include <string>

#include "mbl/errors.hpp"

namespace mbl {

SpaceDescriptor::SpaceDescriptor(int fock_dim) : fock_dim_(fock_dim) {
    if (fock_dim < 2) {
        throw DimensionError("fock_dim must be >= 2, got " + std::to_string(fock_dim));
    }
}

int SpaceDescriptor::index(QubitLevel q, int n) const {
    if (n < 0 || n >= fock_dim_) {
        throw DimensionError("Fock level " + std::to_string(n) + " outside truncation");
    }
    return static_cast<int>(q) * fock_dim_ + n;
}

std::pair<QubitLevel, int> SpaceDescriptor::level(int index) const {
    if (index < 0 || index >= total_dim()) {
        throw DimensionError("basis index " + std::to_string(index) + " out of range");
    }
    return {static_cast<QubitLevel>(index / fock_dim_), index % fock_dim_};
}

Operator::Operator(SpaceDescriptor space, Matrix data)
    : space_(space), data_(std::move(data)) {
    const auto d = space_.total_dim();
    if (data_.rows() != d || data_.cols() != d) {
        throw DimensionError("operator data is " + std::to_string(data_.rows()) + "x" +
                             std::to_string(data_.cols()) + ", space expects " +
                             std::to_string(d) + "x" + std::to_string(d));
    }
}

Operator Operator::zero(SpaceDescriptor space) {
    const auto d = space.total_dim();
    return Operator(space, Matrix::Zero(d, d));
}

Operator Operator::identity(SpaceDescriptor space) {
    const auto d = space.total_dim();
    return Operator(space, Matrix::Identity(d, d));
}

namespace {

void require_same_space(const Operator& a, const Operator& b, const char* what) {
    if (a.space() != b.space()) {
        throw DimensionError(std::string(what) + ": operands live on different spaces (fock_dim " +
                             std::to_string(a.space().fock_dim()) + " vs " +
                             std::to_string(b.space().fock_dim()) + ")");
    }
}

}  // namespace

Operator operator+(const Operator& a, const Operator& b) {
    require_same_space(a, b, "add");
    return Operator(a.space(), a.data() + b.data());
}

Operator operator-(const Operator& a, const Operator& b) {
    require_same_space(a, b, "subtract");
    return Operator(a.space(), a.data() - b.data());
}

Operator operator*(Complex s, const Operator& a) {
    return Operator(a.space(), s * a.data());
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_space(a, b, "matmul");
    return Operator(a.space(), a.data() * b.data());
}

Operator dagger(const Operator& a) {
    return Operator(a.space(), a.data().adjoint());
}

Operator commutator(const Operator& a, const Operator& b) {
    return a * b - b * a;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Operator tensor(const Matrix& qubit_factor, const Matrix& fock_factor) {
    if (qubit_factor.rows() != SpaceDescriptor::qubit_dim ||
        qubit_factor.cols() != SpaceDescriptor::qubit_dim) {
        throw DimensionError("tensor: qubit factor must be 2x2");
    }
    if (fock_factor.rows() != fock_factor.cols()) {
        throw DimensionError("tensor: Fock factor must be square");
    }
    SpaceDescriptor space(static_cast<int>(fock_factor.rows()));
    return Operator(space, kron(qubit_factor, fock_factor));
}

Matrix fock_lowering(int fock_dim) {
    Matrix a = Matrix::Zero(fock_dim, fock_dim);
    for (int n = 1; n < fock_dim; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Operator annihilation(const SpaceDescriptor& space) {
    return tensor(Matrix::Identity(2, 2), fock_lowering(space.fock_dim()));
}

QubitOperators qubit_ops(const SpaceDescriptor& space) {
    Matrix lower = Matrix::Zero(2, 2);
    lower(static_cast<int>(QubitLevel::ground), static_cast<int>(QubitLevel::excited)) = 1.0;
    const Matrix id_fock = Matrix::Identity(space.fock_dim(), space.fock_dim());

    Operator sm = tensor(lower, id_fock);
    Operator sp = dagger(sm);
    Operator sz = sp * sm - sm * sp;
    Operator sx = sp + sm;
    return {std::move(sm), std::move(sp), std::move(sz), std::move(sx)};
}

Operator projector(const SpaceDescriptor& space, QubitLevel q, int n) {
    const int k = space.index(q, n);
    Matrix p = Matrix::Zero(space.total_dim(), space.total_dim());
    p(k, k) = 1.0;
    return Operator(space, std::move(p));
}

double hermiticity_defect(const Operator& a) {
    return (a.data() - a.data().adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(Operator op, double tolerance) : op_(std::move(op)) {
    const double herm = hermiticity_defect(op_);
    if (herm > tolerance) {
        throw ParameterError("density matrix not Hermitian (defect " + std::to_string(herm) + ")");
    }
    const Complex tr = op_.data().trace();
    if (std::abs(tr - Complex(1.0)) > tolerance) {
        throw ParameterError("density matrix trace is " + std::to_string(tr.real()) + "+" +
                             std::to_string(tr.imag()) + "i");
    }
    const double lmin = min_eigenvalue(op_);
    if (lmin < -tolerance) {
        throw ParameterError("density matrix has negative eigenvalue " + std::to_string(lmin));
    }
}

DensityMatrix DensityMatrix::pure(const SpaceDescriptor& space, QubitLevel q, int n) {
    return DensityMatrix(projector(space, q, n));
}

Complex expectation(const Operator& op, const DensityMatrix& rho) {
    if (op.space() != rho.space()) {
        throw DimensionError("expectation: operator and state live on different spaces");
    }
    // tr(A B) = sum_ij A_ij B_ji
    return op.data().cwiseProduct(rho.data().transpose()).sum();
}

double min_eigenvalue(const Operator& hermitian) {
    const Matrix sym = 0.5 * (hermitian.data() + hermitian.data().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.space() != b.space()) {
        throw DimensionError("trace_distance: states live on different spaces");
    }
    const Matrix diff = a.data() - b.data();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace mbl
