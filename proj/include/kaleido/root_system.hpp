#ifndef KALEIDO_ROOT_SYSTEM_HPP
#define KALEIDO_ROOT_SYSTEM_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kaleido/mass_spectrum.hpp"

namespace kaleido {

/// Unit outer normals of the particle-contact hyperplanes in the
/// mass-scaled coordinates,
///   alpha_i = sqrt(m_i/(m_{i-1}+m_i)) e_{i-1}
///           - sqrt(m_{i-1}/(m_{i-1}+m_i)) e_i,   i = 2..N.
/// Indices follow the particle labels: alpha(i) is the normal of the
/// contact plane between particles i-1 and i. A configuration with
/// x_1 < ... < x_N maps to z with alpha_i . z < 0 for all i (the
/// physical chamber).
class RootSet {
public:
    explicit RootSet(const JacobiFrame& frame);

    int dim() const { return static_cast<int>(roots_.cols()); }
    int count() const { return static_cast<int>(roots_.rows()); }

    /// Simple root alpha_i, i in [2, N]; throws std::out_of_range.
    Eigen::VectorXd alpha(int i) const;

    /// Rows alpha_2 ... alpha_N, an (N-1) x N matrix.
    const Eigen::MatrixXd& matrix() const { return roots_; }
    const Eigen::VectorXd& e_com() const { return e_com_; }

    /// Unit vector strictly inside the physical chamber
    /// (alpha_i . z0 < 0 for all i) and orthogonal to e_com. Built
    /// from the dual basis of the simple roots, so the inequalities
    /// hold exactly, not just generically.
    Eigen::VectorXd chamber_point() const;

    /// Wavevector with alpha_i . k = coeffs[i-2]; positive coefficients
    /// give a vector in the open scattering cone alpha_i . k > 0.
    Eigen::VectorXd chamber_wavevector(const Eigen::VectorXd& coeffs) const;

    std::string to_json() const;

private:
    Eigen::MatrixXd roots_;  // one row per simple root
    Eigen::VectorXd e_com_;
};

/// Angle between the contact plane of particles (i-1, i) and that of
/// (i, i+1):  arctan sqrt( m_mid (m_prev+m_mid+m_next) / (m_prev m_next) ).
double dihedral_angle(double m_prev, double m_mid, double m_next);

/// Angle between mirrors i and j measured from the root normals. Outer
/// normals of a wedge are mutually obtuse, so the mirror angle is the
/// acute representative of arccos(alpha_i . alpha_j). For j = i+1 this
/// agrees with dihedral_angle on the corresponding mass triple.
double angle_between_mirrors(const RootSet& roots, int i, int j);

/// Pairwise mirror-angle labels: m_ij = n encodes mirrors at pi/n.
/// n = 2 is a right angle (no edge in the diagram), n = 3 an unmarked
/// edge, larger n a labeled edge.
class CoxeterDiagram {
public:
    using LabelMap = std::map<std::pair<int, int>, int>;

    CoxeterDiagram(int n_vertices, LabelMap labels);

    int vertex_count() const { return n_vertices_; }

    /// Label m_ij for roots i, j in [2, N], i != j.
    int label(int i, int j) const;

    /// Labels along the chain: (m_23, m_34, ...).
    std::vector<int> chain_labels() const;

    /// One-line rendering of the chain labels, e.g. "5 — 3" for the
    /// icosahedral diagram.
    std::string to_text() const;

    std::string to_json() const;

    bool operator==(const CoxeterDiagram& other) const {
        return n_vertices_ == other.n_vertices_ && labels_ == other.labels_;
    }

private:
    int n_vertices_;
    LabelMap labels_;  // keyed by (i, j) with i < j, paper indices
};

/// Match every pairwise mirror angle to pi/n, n in [2, 64], within tol
/// (default 1e-9). Throws NotKaleidoscopicError if some angle is not a
/// pi/n angle: the mass spectrum does not generate a finite reflection
/// group.
CoxeterDiagram infer_diagram(const RootSet& roots, double tol = 1e-9);

}  // namespace kaleido

#endif  // KALEIDO_ROOT_SYSTEM_HPP
