#ifndef KALEIDO_STATES_HPP
#define KALEIDO_STATES_HPP

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kaleido/reflection_group.hpp"

namespace kaleido {

/// Incident wavevector. Units fix hbar^2/(2 mu) = 1, so the energy of
/// a scattering state is |k|^2 and the eigenvalue relation reads
/// -laplacian(psi) = |k|^2 psi.
struct Wavevector {
    Eigen::VectorXd k;
    double energy() const { return k.squaredNorm(); }
};

/// True iff alpha_i . k > 0 strictly for every simple root: the
/// condition for k to parametrize a scattering state.
bool in_scattering_cone(const RootSet& roots, const Eigen::VectorXd& k);

/// Bethe-type scattering eigenstate: the signed superposition of one
/// plane wave per group element,
///   psi_k(z) = const * sum_g (-1)^P(g) exp(i (g k) . z).
/// The |G| rotated wavevectors are precomputed at construction; the
/// summation order is the group's element order, fixed, so results are
/// bitwise reproducible and independent of batch partitioning.
class BetheState {
public:
    BetheState(const ReflectionGroup& group, Wavevector k,
               std::complex<double> normalization = 1.0);

    std::complex<double> eval(const Eigen::VectorXd& z) const;

    /// Pointwise evaluation over a batch; `threads` > 1 partitions the
    /// points (never the per-point sum), so output is identical for
    /// any worker count.
    std::vector<std::complex<double>> eval_batch(
        const std::vector<Eigen::VectorXd>& points, int threads = 1) const;

    const Eigen::VectorXd& k() const { return k_.k; }
    double energy() const { return k_.energy(); }
    const ReflectionGroup& group() const { return *group_; }

    /// sum_g |normalization|: the scale against which near-zero values
    /// of the sum are judged.
    double term_magnitude_sum() const;

    /// |psi(g z) - (-1)^P(g) psi(z)| / (|psi(z)| + eps) for the stored
    /// element with the given index.
    double symmetry_residual(int element_idx, const Eigen::VectorXd& z) const;

    /// Central-difference check of -laplacian(psi) = |k|^2 psi:
    /// |FD_laplacian(psi) + |k|^2 psi| / (|k|^2 |psi| + eps), O(h^2).
    double helmholtz_residual(const Eigen::VectorXd& z, double h) const;

private:
    const ReflectionGroup* group_;
    Wavevector k_;
    std::complex<double> norm_;
    Eigen::MatrixXd rotated_k_;   // row per element: g k
    std::vector<double> signs_;   // (-1)^P(g)
};

/// Reference evaluation of the same sum by a naive double loop over
/// the stored matrices (rotates k afresh at every call). Kept apart
/// from BetheState's precomputed path so the two can be checked
/// against each other.
std::complex<double> bethe_eval_reference(const ReflectionGroup& group,
                                          const Eigen::VectorXd& k,
                                          const Eigen::VectorXd& z,
                                          std::complex<double> normalization = 1.0);

/// Zero-energy eigenstate: the lowest-degree anti-invariant polynomial
///   psi_0(z) = const * prod_beta (beta . z),
/// one linear factor per mirror. Homogeneous of degree equal to the
/// mirror count and harmonic.
class AntiInvariantState {
public:
    explicit AntiInvariantState(const ReflectionGroup& group,
                                double normalization = 1.0);

    double eval(const Eigen::VectorXd& z) const;
    std::vector<double> eval_batch(const std::vector<Eigen::VectorXd>& points,
                                   int threads = 1) const;

    /// Number of linear factors (15 for H3, 60 for H4).
    int degree() const;

    const ReflectionGroup& group() const { return *group_; }

    struct LaplacianResult {
        double value;  // signed sum of the product-rule terms
        double scale;  // sum of their absolute values
    };

    /// Exact analytic Laplacian via the product rule,
    ///   sum_{j<l} 2 (beta_j . beta_l) prod_{m != j,l} (beta_m . z).
    /// Harmonicity means |value| / scale ~ rounding noise.
    LaplacianResult laplacian(const Eigen::VectorXd& z) const;

private:
    const ReflectionGroup* group_;
    double norm_;
};

/// |psi_0|^2 sampled on the unit sphere of the centre-of-mass
/// complement, normalized so the grid maximum is 1. For N = 4 the
/// relative space is 3-dimensional and the grid covers the full sphere
/// in (theta, phi); points are flagged inside/outside the physical
/// chamber.
struct DensityGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> theta;     // row-major, size n_theta * n_phi
    std::vector<double> phi;
    std::vector<double> density;
    std::vector<char> in_chamber;  // 0/1

    /// CSV with header "theta,phi,density,in_chamber"; angles in
    /// radians, 9 significant digits.
    void write_csv(std::ostream& os) const;
};

/// Build the angular density grid. resolution must lie in [16, 4096].
/// For a 4-dimensional relative space (five particles) a slice is
/// required: the first two hyperspherical angles are fixed at the
/// given values and the remaining angle sweeps a full circle
/// (resolution samples, emitted in the theta column).
DensityGrid angular_density_grid(
    const AntiInvariantState& state, const RootSet& roots, int resolution,
    std::optional<std::pair<double, double>> slice = std::nullopt,
    int threads = 1);

/// Orthonormal basis of the complement of e_com, as columns of an
/// N x (N-1) matrix. Deterministic (Householder of e_com).
Eigen::MatrixXd com_complement_basis(const Eigen::VectorXd& e_com);

}  // namespace kaleido

#endif  // KALEIDO_STATES_HPP
