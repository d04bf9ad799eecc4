#include "kaleido/mass_spectrum.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "kaleido/json_text.hpp"

namespace kaleido {

namespace {

// All family constants derive from a runtime sqrt(5) so the algebraic
// identities between families, limits and dihedral angles hold to
// machine precision.
const double kSqrt5 = std::sqrt(5.0);

double xi_min() { return 1.0 / (5.0 - 2.0 * kSqrt5); }

void require_positive_scale(double m2) {
    if (!(m2 > 0.0) || !std::isfinite(m2)) {
        throw DomainError("mass scale m2 must be positive and finite");
    }
}

}  // namespace

std::string to_string(SpectrumLabel label) {
    switch (label) {
        case SpectrumLabel::H3: return "H3";
        case SpectrumLabel::H4: return "H4";
        default: return "Custom";
    }
}

std::string to_string(Family family) {
    return family == Family::H3 ? "H3" : "H4";
}

std::string to_string(WallEnd end) {
    return end == WallEnd::LeftWall ? "LeftWall" : "RightWall";
}

MassSpectrum::MassSpectrum(std::vector<double> masses, SpectrumLabel label)
    : masses_(std::move(masses)), label_(label) {
    if (masses_.size() < 2) {
        throw DomainError("a mass spectrum needs at least two particles");
    }
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        if (!(masses_[i] > 0.0) || !std::isfinite(masses_[i])) {
            throw DomainError("mass m" + std::to_string(i + 1) +
                              " must be positive and finite");
        }
    }
}

double MassSpectrum::mass(int i) const {
    if (i < 1 || i > size()) {
        throw std::out_of_range("particle index out of range");
    }
    return masses_[static_cast<std::size_t>(i - 1)];
}

double MassSpectrum::total_mass() const {
    double m = 0.0;
    for (double v : masses_) m += v;
    return m;
}

std::string MassSpectrum::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("label").value(to_string(label_));
    w.key("masses").begin_array();
    for (double m : masses_) w.value(m);
    w.end_array();
    w.end_object();
    return w.str();
}

MassSpectrum MassSpectrum::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_object() || !j.contains("masses") || !j["masses"].is_array()) {
        throw DomainError("mass spectrum JSON must be {\"label\":..,\"masses\":[..]}");
    }
    std::vector<double> masses;
    for (const auto& v : j["masses"]) {
        if (!v.is_number()) throw DomainError("masses must be numbers");
        masses.push_back(v.get<double>());
    }
    SpectrumLabel label = SpectrumLabel::Custom;
    if (j.contains("label") && j["label"].is_string()) {
        const std::string s = j["label"].get<std::string>();
        if (s == "H3") label = SpectrumLabel::H3;
        else if (s == "H4") label = SpectrumLabel::H4;
        else if (s == "Custom") label = SpectrumLabel::Custom;
        else throw DomainError("unknown spectrum label '" + s + "'");
    }
    return MassSpectrum(std::move(masses), label);
}

double family_xi_min() { return xi_min(); }

namespace {

// Shared closed forms of the family masses. h4 extends h3 with one
// more particle, so the first four masses coincide by construction.
double family_m1(double xi, double m2) {
    return (xi + 1.0) / ((5.0 - 2.0 * kSqrt5) * xi - 1.0) * m2;
}
double family_m4(double xi, double m2) {
    return xi * (xi + 1.0) / (3.0 - xi) * m2;
}
double family_m5(double xi, double m2) {
    return xi * (xi + 1.0) / ((3.0 - xi) * (2.0 - xi)) * m2;
}

}  // namespace

MassSpectrum h3_family(double xi, double m2) {
    require_positive_scale(m2);
    if (!std::isfinite(xi)) throw DomainError("xi must be finite");
    if (xi <= xi_min()) {
        throw DomainError("m1 diverges: xi must exceed 1/(5-2*sqrt(5)) ~ 1.8944272");
    }
    if (xi >= 3.0) {
        throw DomainError("m4 diverges: xi must stay below 3");
    }
    return MassSpectrum({family_m1(xi, m2), m2, xi * m2, family_m4(xi, m2)},
                        SpectrumLabel::H3);
}

MassSpectrum h4_family(double xi, double m2) {
    require_positive_scale(m2);
    if (!std::isfinite(xi)) throw DomainError("xi must be finite");
    if (xi <= xi_min()) {
        throw DomainError("m1 diverges: xi must exceed 1/(5-2*sqrt(5)) ~ 1.8944272");
    }
    if (xi >= 2.0) {
        throw DomainError("m5 diverges: xi must stay below 2");
    }
    return MassSpectrum({family_m1(xi, m2), m2, xi * m2, family_m4(xi, m2),
                         family_m5(xi, m2)},
                        SpectrumLabel::H4);
}

HalfLineSpectrum limiting_spectrum(Family family, WallEnd end, double m2) {
    require_positive_scale(m2);
    // Closed forms of the surviving masses at the divergent endpoints.
    const double m3_left = 1.0 / (5.0 - 2.0 * kSqrt5) * m2;
    const double m4_left = (2.5 + 11.0 / (2.0 * kSqrt5)) * m2;

    std::vector<double> masses;
    if (family == Family::H3) {
        if (end == WallEnd::LeftWall) {
            // m1 -> inf; particles 2,3,4 on x > 0.
            masses = {m2, m3_left, m4_left};
        } else {
            // m4 -> inf; particles 1,2,3 on x < 0.
            masses = {2.0 / (7.0 - 3.0 * kSqrt5) * m2, m2, 3.0 * m2};
        }
    } else {
        if (end == WallEnd::LeftWall) {
            // m1 -> inf; particles 2..5 on x > 0.
            masses = {m2, m3_left, m4_left, (47.0 + 21.0 * kSqrt5) / 2.0 * m2};
        } else {
            // m5 -> inf; particles 1..4 on x < 0.
            masses = {(27.0 + 12.0 * kSqrt5) * m2, m2, 2.0 * m2, 6.0 * m2};
        }
    }
    return HalfLineSpectrum{MassSpectrum(std::move(masses), SpectrumLabel::Custom),
                            0.0, end};
}

JacobiFrame::JacobiFrame(MassSpectrum spectrum)
    : spectrum_(std::move(spectrum)), mu_(spectrum_.mass(2)) {
    init();
}

JacobiFrame::JacobiFrame(MassSpectrum spectrum, double mu)
    : spectrum_(std::move(spectrum)), mu_(mu) {
    if (!(mu_ > 0.0) || !std::isfinite(mu_)) {
        throw DomainError("mass scale mu must be positive and finite");
    }
    init();
}

void JacobiFrame::init() {
    const int n = spectrum_.size();
    const double total = spectrum_.total_mass();
    e_com_.resize(n);
    for (int i = 0; i < n; ++i) {
        e_com_[i] = std::sqrt(spectrum_.masses()[i] / total);
    }
}

Eigen::VectorXd JacobiFrame::x_to_z(const Eigen::VectorXd& x) const {
    const int n = dim();
    Eigen::VectorXd z(n);
    for (int i = 0; i < n; ++i) {
        z[i] = std::sqrt(spectrum_.masses()[i] / mu_) * x[i];
    }
    return z;
}

Eigen::VectorXd JacobiFrame::z_to_x(const Eigen::VectorXd& z) const {
    const int n = dim();
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) {
        x[i] = std::sqrt(mu_ / spectrum_.masses()[i]) * z[i];
    }
    return x;
}

double JacobiFrame::center_of_mass(const Eigen::VectorXd& x) const {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += spectrum_.masses()[i] * x[i];
    return s / spectrum_.total_mass();
}

}  // namespace kaleido
