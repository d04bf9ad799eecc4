#include "kaleido/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <thread>

namespace kaleido {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative floor for residual denominators: 1e-30 times the natural
// scale of the quantity, so exact zeros never divide by zero.
double eps_floor(double scale) { return 1e-30 * scale; }

// Run body(i) for i in [0, count), split into contiguous chunks, one
// per worker. Each index is processed by exactly one worker with the
// same per-index arithmetic as the serial loop, so results do not
// depend on the worker count.
template <typename Body>
void parallel_for(std::size_t count, int threads, const Body& body) {
    threads = std::clamp(threads, 1, 64);
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([begin, end, &body] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace

bool in_scattering_cone(const RootSet& roots, const Eigen::VectorXd& k) {
    if (k.size() != roots.dim()) return false;
    for (int i = 2; i <= roots.dim(); ++i) {
        if (!(roots.alpha(i).dot(k) > 0.0)) return false;
    }
    return true;
}

BetheState::BetheState(const ReflectionGroup& group, Wavevector k,
                       std::complex<double> normalization)
    : group_(&group), k_(std::move(k)), norm_(normalization) {
    if (k_.k.size() != group.dim()) {
        throw DomainError("wavevector dimension does not match the group");
    }
    if (!k_.k.allFinite()) throw DomainError("wavevector must be finite");

    const int order = group.order();
    rotated_k_.resize(order, group.dim());
    signs_.resize(static_cast<std::size_t>(order));
    for (int g = 0; g < order; ++g) {
        rotated_k_.row(g) = (group.element(g).matrix * k_.k).transpose();
        signs_[static_cast<std::size_t>(g)] = group.element(g).parity ? -1.0 : 1.0;
    }
}

std::complex<double> BetheState::eval(const Eigen::VectorXd& z) const {
    const Eigen::VectorXd phases = rotated_k_ * z;
    double re = 0.0;
    double im = 0.0;
    for (int g = 0; g < phases.size(); ++g) {
        const double s = signs_[static_cast<std::size_t>(g)];
        re += s * std::cos(phases[g]);
        im += s * std::sin(phases[g]);
    }
    return norm_ * std::complex<double>(re, im);
}

std::vector<std::complex<double>> BetheState::eval_batch(
    const std::vector<Eigen::VectorXd>& points, int threads) const {
    std::vector<std::complex<double>> out(points.size());
    parallel_for(points.size(), threads,
                 [&](std::size_t i) { out[i] = eval(points[i]); });
    return out;
}

double BetheState::term_magnitude_sum() const {
    return static_cast<double>(group_->order()) * std::abs(norm_);
}

double BetheState::symmetry_residual(int element_idx,
                                     const Eigen::VectorXd& z) const {
    const GroupElement& g = group_->element(element_idx);
    const std::complex<double> base = eval(z);
    const std::complex<double> lhs = eval(g.matrix * z);
    const std::complex<double> rhs = (g.parity ? -1.0 : 1.0) * base;
    return std::abs(lhs - rhs) /
           (std::abs(base) + eps_floor(term_magnitude_sum()));
}

double BetheState::helmholtz_residual(const Eigen::VectorXd& z, double h) const {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
    const int n = static_cast<int>(z.size());
    const std::complex<double> center = eval(z);
    std::complex<double> fd = -2.0 * static_cast<double>(n) * center;
    Eigen::VectorXd zp = z;
    for (int d = 0; d < n; ++d) {
        zp[d] = z[d] + h;
        fd += eval(zp);
        zp[d] = z[d] - h;
        fd += eval(zp);
        zp[d] = z[d];
    }
    fd /= h * h;
    const double e = energy();
    return std::abs(fd + e * center) /
           (e * std::abs(center) + eps_floor(e * term_magnitude_sum()));
}

std::complex<double> bethe_eval_reference(const ReflectionGroup& group,
                                          const Eigen::VectorXd& k,
                                          const Eigen::VectorXd& z,
                                          std::complex<double> normalization) {
    const int n = group.dim();
    std::complex<double> acc = 0.0;
    for (const auto& elem : group.elements()) {
        double phase = 0.0;
        for (int r = 0; r < n; ++r) {
            double rotated = 0.0;
            for (int c = 0; c < n; ++c) rotated += elem.matrix(r, c) * k[c];
            phase += rotated * z[r];
        }
        const double s = elem.parity ? -1.0 : 1.0;
        acc += s * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return normalization * acc;
}

AntiInvariantState::AntiInvariantState(const ReflectionGroup& group,
                                       double normalization)
    : group_(&group), norm_(normalization) {
    if (group.positive_roots().empty()) {
        throw DomainError("group has no reflections");
    }
}

double AntiInvariantState::eval(const Eigen::VectorXd& z) const {
    double product = norm_;
    for (const auto& beta : group_->positive_roots()) {
        product *= beta.dot(z);
    }
    return product;
}

std::vector<double> AntiInvariantState::eval_batch(
    const std::vector<Eigen::VectorXd>& points, int threads) const {
    std::vector<double> out(points.size());
    parallel_for(points.size(), threads,
                 [&](std::size_t i) { out[i] = eval(points[i]); });
    return out;
}

int AntiInvariantState::degree() const {
    return static_cast<int>(group_->positive_roots().size());
}

AntiInvariantState::LaplacianResult AntiInvariantState::laplacian(
    const Eigen::VectorXd& z) const {
    const auto& betas = group_->positive_roots();
    const int p = static_cast<int>(betas.size());
    std::vector<double> factors(static_cast<std::size_t>(p));
    for (int m = 0; m < p; ++m) {
        factors[static_cast<std::size_t>(m)] = betas[static_cast<std::size_t>(m)].dot(z);
    }

    double value = 0.0;
    double scale = 0.0;
    for (int j = 0; j < p; ++j) {
        for (int l = j + 1; l < p; ++l) {
            double rest = norm_;
            for (int m = 0; m < p; ++m) {
                if (m == j || m == l) continue;
                rest *= factors[static_cast<std::size_t>(m)];
            }
            const double term =
                2.0 * betas[static_cast<std::size_t>(j)].dot(betas[static_cast<std::size_t>(l)]) * rest;
            value += term;
            scale += std::abs(term);
        }
    }
    return {value, scale};
}

Eigen::MatrixXd com_complement_basis(const Eigen::VectorXd& e_com) {
    const int n = static_cast<int>(e_com.size());
    Eigen::MatrixXd col(n, 1);
    col.col(0) = e_com;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(col);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
    return q.rightCols(n - 1);
}

void DensityGrid::write_csv(std::ostream& os) const {
    os << "theta,phi,density,in_chamber\n";
    char buf[128];
    for (std::size_t i = 0; i < density.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%d\n", theta[i], phi[i],
                      density[i], static_cast<int>(in_chamber[i]));
        os << buf;
    }
}

DensityGrid angular_density_grid(const AntiInvariantState& state,
                                 const RootSet& roots, int resolution,
                                 std::optional<std::pair<double, double>> slice,
                                 int threads) {
    if (resolution < 16 || resolution > 4096) {
        throw DomainError("grid resolution must lie in [16, 4096]");
    }
    const int n = roots.dim();
    const int rel_dim = n - 1;
    if (rel_dim != 3 && rel_dim != 4) {
        throw DomainError("density grid needs a 3- or 4-dimensional relative space");
    }
    if (rel_dim == 4 && !slice.has_value()) {
        throw DomainError(
            "a 4-dimensional relative space needs --slice: fix the first two "
            "hypersphere angles");
    }
    if (rel_dim == 3 && slice.has_value()) {
        throw DomainError("slice only applies to a 4-dimensional relative space");
    }

    const Eigen::MatrixXd basis = com_complement_basis(roots.e_com());

    DensityGrid grid;
    std::vector<Eigen::VectorXd> points;
    if (rel_dim == 3) {
        grid.n_theta = resolution;
        grid.n_phi = resolution;
        points.reserve(static_cast<std::size_t>(resolution) * resolution);
        for (int i = 0; i < resolution; ++i) {
            const double theta = kPi * i / (resolution - 1);
            for (int j = 0; j < resolution; ++j) {
                const double phi = 2.0 * kPi * j / resolution;
                Eigen::Vector3d u(std::sin(theta) * std::cos(phi),
                                  std::sin(theta) * std::sin(phi),
                                  std::cos(theta));
                points.push_back(basis * u);
                grid.theta.push_back(theta);
                grid.phi.push_back(phi);
            }
        }
    } else {
        const auto [psi1, psi2] = *slice;
        grid.n_theta = resolution;
        grid.n_phi = 1;
        points.reserve(static_cast<std::size_t>(resolution));
        for (int j = 0; j < resolution; ++j) {
            const double psi3 = 2.0 * kPi * j / resolution;
            Eigen::Vector4d u(std::cos(psi1),
                              std::sin(psi1) * std::cos(psi2),
                              std::sin(psi1) * std::sin(psi2) * std::cos(psi3),
                              std::sin(psi1) * std::sin(psi2) * std::sin(psi3));
            points.push_back(basis * u);
            grid.theta.push_back(psi3);
            grid.phi.push_back(0.0);
        }
    }

    const std::vector<double> values = state.eval_batch(points, threads);
    grid.density.resize(values.size());
    grid.in_chamber.resize(values.size());

    double max_sq = 0.0;
    for (double v : values) max_sq = std::max(max_sq, v * v);
    const double inv_max = max_sq > 0.0 ? 1.0 / max_sq : 1.0;

    const Eigen::MatrixXd& alphas = roots.matrix();
    for (std::size_t i = 0; i < values.size(); ++i) {
        grid.density[i] = values[i] * values[i] * inv_max;
        const Eigen::VectorXd proj = alphas * points[i];
        grid.in_chamber[i] = (proj.array() < 0.0).all() ? 1 : 0;
    }
    return grid;
}

}  // namespace kaleido
