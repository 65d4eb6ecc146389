#include "mbl/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mbl/errors.hpp"

namespace mbl {

Superoperator::Superoperator(SpaceDescriptor space, Matrix data)
    : space_(space), data_(std::move(data)) {
    const auto d = space_.total_dim();
    if (data_.rows() != d * d || data_.cols() != d * d) {
        throw DimensionError("superoperator must be d^2 x d^2 with d = " + std::to_string(d));
    }
}

double Superoperator::trace_defect() const {
    const int d = space_.total_dim();
    // vec(I)^T L picks the rows k*(d+1).
    Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(data_.cols());
    for (int k = 0; k < d; ++k) {
        acc += data_.row(k * (d + 1));
    }
    return acc.cwiseAbs().maxCoeff();
}

Vector vectorize(const Matrix& rho) {
    return Eigen::Map<const Vector>(rho.data(), rho.size());
}

Matrix unvectorize(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw DimensionError("unvectorize: length does not match dim^2");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

namespace {

// out += s * kron(a, b), skipping the zero entries of a
void add_kron(Matrix& out, Complex s, const Matrix& a, const Matrix& b) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (a(i, j) == Complex(0.0)) continue;
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) += (s * a(i, j)) * b;
        }
    }
}

void add_hamiltonian(Matrix& out, const Matrix& h) {
    const Matrix id = Matrix::Identity(h.rows(), h.cols());
    const Complex i(0.0, 1.0);
    add_kron(out, -i, id, h);
    add_kron(out, i, h.transpose(), id);
}

void add_dissipator(Matrix& out, double rate, const Matrix& c) {
    const Matrix id = Matrix::Identity(c.rows(), c.cols());
    const Matrix cdc = c.adjoint() * c;
    add_kron(out, 2.0 * rate, c.conjugate(), c);
    add_kron(out, -rate, id, cdc);
    add_kron(out, -rate, cdc.transpose(), id);
}

}  // namespace

Matrix hamiltonian_generator(const Matrix& h) {
    Matrix out = Matrix::Zero(h.rows() * h.rows(), h.cols() * h.cols());
    add_hamiltonian(out, h);
    return out;
}

Matrix dissipator(const Matrix& c) {
    Matrix out = Matrix::Zero(c.rows() * c.rows(), c.cols() * c.cols());
    add_dissipator(out, 1.0, c);
    return out;
}

Superoperator build_liouvillian(const SystemParams& p) {
    p.validate();
    const SpaceDescriptor space = p.space();
    const Matrix m = annihilation(space).data();
    const Matrix sm = qubit_ops(space).sigma_minus.data();
    const Eigen::Index d = space.total_dim();

    Matrix l = Matrix::Zero(d * d, d * d);
    add_hamiltonian(l, build_h_eff(p, space).data());
    if (p.scenario == Scenario::A) {
        add_dissipator(l, 0.5 * p.kappa_m * (p.n_th + 1.0), m);
        if (p.n_th > 0.0) {
            add_dissipator(l, 0.5 * p.kappa_m * p.n_th, m.adjoint());
        }
    } else {
        add_dissipator(l, 0.5 * p.kappa_m, m);
    }
    add_dissipator(l, 0.5 * p.kappa_s, sm);
    return Superoperator(space, std::move(l));
}

DensityMatrix steady_state(const Superoperator& L) {
    const int d = L.space().total_dim();
    const Eigen::Index d2 = static_cast<Eigen::Index>(d) * d;

    Matrix a = L.data();
    a.row(0).setZero();
    for (int k = 0; k < d; ++k) {
        a(0, k * (d + 1)) = 1.0;
    }
    Vector rhs = Vector::Zero(d2);
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Matrix> lu(a);
    // the rcond estimator reports 1 for exactly zero pivots, so check those directly
    const Vector pivots = lu.matrixLU().diagonal();
    const double pivot_ratio = pivots.cwiseAbs().minCoeff() / pivots.cwiseAbs().maxCoeff();
    const double rcond = std::min(lu.rcond(), pivot_ratio);
    if (!(rcond > 1e-15)) {
        throw SingularityError("degenerate steady state: constrained Liouvillian is singular (rcond " +
                               std::to_string(rcond) + ")");
    }
    const Matrix rho = unvectorize(lu.solve(rhs), d);
    return DensityMatrix(Operator(L.space(), 0.5 * (rho + rho.adjoint())));
}

double steady_residual(const Superoperator& L, const DensityMatrix& rho) {
    return (L.data() * vectorize(rho.data())).cwiseAbs().maxCoeff();
}

std::vector<DensityMatrix> evolve(const Superoperator& L, const DensityMatrix& rho0,
                                  std::span<const double> times, const ode::Tolerances& tol,
                                  ode::Stats* stats) {
    if (rho0.space() != L.space()) {
        throw DimensionError("evolve: initial state and generator live on different spaces");
    }
    if (!times.empty() && times.front() < 0.0) {
        throw ParameterError("evolve: times must start at t >= 0");
    }
    const Matrix& gen = L.data();
    const ode::Rhs rhs = [&gen](double, const Vector& y, Vector& dydt) { dydt.noalias() = gen * y; };

    const auto states = ode::dormand_prince(rhs, vectorize(rho0.data()), times, tol, stats);

    // Snapshots carry integration error; validate at the looser level the
    // trace check is held to.
    constexpr double kSnapshotTolerance = 1e-8;
    const int d = L.space().total_dim();
    std::vector<DensityMatrix> out;
    out.reserve(states.size());
    for (const auto& v : states) {
        out.emplace_back(Operator(L.space(), unvectorize(v, d)), kSnapshotTolerance);
    }
    return out;
}

double mean_occupation(const DensityMatrix& rho) {
    const Operator m = annihilation(rho.space());
    return expectation(dagger(m) * m, rho).real();
}

double g2_zero(const DensityMatrix& rho, const SpaceDescriptor& space) {
    if (rho.space() != space) {
        throw DimensionError("g2_zero: state does not live on the given space");
    }
    const Operator m = annihilation(space);
    const Operator md = dagger(m);
    const Complex n = expectation(md * m, rho);
    const Complex nn = expectation(md * md * m * m, rho);

    const double occ = n.real();
    if (!(std::abs(occ) >= 1e-300)) {
        throw UndefinedCorrelationError("g2 undefined: <m^dag m> below 1e-300");
    }
    const Complex ratio = nn / (n * n);
    if (std::abs(ratio.imag()) > 1e-10 * std::max(std::abs(ratio.real()), 1e-300)) {
        throw NumericalError("g2 has a non-negligible imaginary part " +
                             std::to_string(ratio.imag()));
    }
    return ratio.real();
}

std::vector<double> fock_populations(const DensityMatrix& rho, const SpaceDescriptor& space) {
    if (rho.space() != space) {
        throw DimensionError("fock_populations: state does not live on the given space");
    }
    std::vector<double> pops(static_cast<std::size_t>(space.fock_dim()), 0.0);
    for (int n = 0; n < space.fock_dim(); ++n) {
        for (QubitLevel q : {QubitLevel::ground, QubitLevel::excited}) {
            const int k = space.index(q, n);
            pops[static_cast<std::size_t>(n)] += rho.data()(k, k).real();
        }
    }
    return pops;
}

}  // namespace mbl
