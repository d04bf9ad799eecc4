#ifndef KALEIDO_MASS_SPECTRUM_HPP
#define KALEIDO_MASS_SPECTRUM_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "kaleido/errors.hpp"

namespace kaleido {

enum class SpectrumLabel { H3, H4, Custom };
enum class Family { H3, H4 };
enum class WallEnd { LeftWall, RightWall };

std::string to_string(SpectrumLabel label);
std::string to_string(Family family);
std::string to_string(WallEnd end);

/// Ordered positive particle masses, m_1 ... m_N left to right on the
/// line (positions x_1 < x_2 < ... < x_N).
class MassSpectrum {
public:
    explicit MassSpectrum(std::vector<double> masses,
                          SpectrumLabel label = SpectrumLabel::Custom);

    int size() const { return static_cast<int>(masses_.size()); }

    /// Mass of particle i, 1-based like the particle labels.
    double mass(int i) const;

    const std::vector<double>& masses() const { return masses_; }
    SpectrumLabel label() const { return label_; }
    double total_mass() const;

    std::string to_json() const;
    static MassSpectrum from_json(const std::string& text);

private:
    std::vector<double> masses_;
    SpectrumLabel label_;
};

/// Lower endpoint 1/(5 - 2*sqrt(5)) shared by both family intervals.
double family_xi_min();

/// Icosahedral four-body mass family: masses (m1, m2, m3, m4) with
///   m1 = (xi+1)/((5-2*sqrt(5))*xi - 1) * m2,  m3 = xi*m2,
///   m4 = xi*(xi+1)/(3-xi) * m2.
/// Defined for xi strictly inside (1/(5-2*sqrt(5)), 3); at either
/// endpoint a mass diverges and DomainError names it.
MassSpectrum h3_family(double xi, double m2);

/// 600-cell five-body family: the four masses of h3_family plus
///   m5 = xi*(xi+1)/((3-xi)*(2-xi)) * m2,
/// for xi strictly inside (1/(5-2*sqrt(5)), 2).
MassSpectrum h4_family(double xi, double m2);

/// Reduced system at a divergent family endpoint: the infinitely heavy
/// particle becomes a hard wall at the origin and the finite masses
/// survive. For LeftWall the particles live on x > 0, for RightWall on
/// x < 0.
struct HalfLineSpectrum {
    MassSpectrum spectrum;
    double wall_position;  // always 0 in the co-moving frame
    WallEnd end;
};

HalfLineSpectrum limiting_spectrum(Family family, WallEnd end, double m2);

/// Mass-scaled Jacobi frame: z_i = sqrt(m_i/mu) x_i turns N particles
/// on a line into one N-dimensional particle of mass mu. The direction
/// e_com, with components sqrt(m_i/M), carries the centre-of-mass
/// motion and is fixed by every particle-exchange reflection.
class JacobiFrame {
public:
    /// mu defaults to m2, keeping z dimensionally tied to the family
    /// mass scale.
    explicit JacobiFrame(MassSpectrum spectrum);
    JacobiFrame(MassSpectrum spectrum, double mu);

    const MassSpectrum& spectrum() const { return spectrum_; }
    double mu() const { return mu_; }
    int dim() const { return spectrum_.size(); }
    const Eigen::VectorXd& e_com() const { return e_com_; }

    Eigen::VectorXd x_to_z(const Eigen::VectorXd& x) const;
    Eigen::VectorXd z_to_x(const Eigen::VectorXd& z) const;

    /// sum_i m_i x_i / M
    double center_of_mass(const Eigen::VectorXd& x) const;

private:
    void init();

    MassSpectrum spectrum_;
    double mu_;
    Eigen::VectorXd e_com_;
};

}  // namespace kaleido

#endif  // KALEIDO_MASS_SPECTRUM_HPP
