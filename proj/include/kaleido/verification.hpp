#ifndef KALEIDO_VERIFICATION_HPP
#define KALEIDO_VERIFICATION_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kaleido/mass_spectrum.hpp"

namespace kaleido {

struct Check {
    std::string name;
    bool pass;
    double measured;
    double threshold;
};

struct VerificationReport {
    std::vector<Check> checks;

    bool overall() const;
    std::string to_json(const MassSpectrum& spectrum, std::uint64_t seed) const;
    std::string to_table() const;
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    int threads = 1;
    std::optional<Eigen::VectorXd> k;  // default: seeded scattering-cone vector
};

/// Run the full invariant suite for one mass spectrum: root-system
/// geometry, diagram inference, group closure and parity structure,
/// Dirichlet/equivariance/eigenvalue properties of the scattering
/// states, and harmonicity of the zero-energy state. Deterministic for
/// a given seed. Throws NotKaleidoscopicError (via diagram inference)
/// for spectra that do not generate a finite group.
VerificationReport run_verification(const MassSpectrum& spectrum,
                                    const VerifyOptions& options = {});

}  // namespace kaleido

#endif  // KALEIDO_VERIFICATION_HPP
