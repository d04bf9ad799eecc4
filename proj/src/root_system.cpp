#include "kaleido/root_system.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kaleido/json_text.hpp"

namespace kaleido {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kMaxLabel = 64;
}  // namespace

RootSet::RootSet(const JacobiFrame& frame) : e_com_(frame.e_com()) {
    const int n = frame.dim();
    const auto& m = frame.spectrum().masses();
    roots_.setZero(n - 1, n);
    for (int i = 2; i <= n; ++i) {
        const double pair_mass = m[i - 2] + m[i - 1];
        roots_(i - 2, i - 2) = std::sqrt(m[i - 1] / pair_mass);
        roots_(i - 2, i - 1) = -std::sqrt(m[i - 2] / pair_mass);
    }
}

Eigen::VectorXd RootSet::alpha(int i) const {
    if (i < 2 || i > dim()) {
        throw std::out_of_range("simple-root index must lie in [2, N]");
    }
    return roots_.row(i - 2);
}

Eigen::VectorXd RootSet::chamber_point() const {
    // Dual basis: columns w_j of A^T (A A^T)^{-1} satisfy
    // alpha_i . w_j = delta_ij, so z0 = -sum_j w_j has alpha_i . z0 = -1
    // for every i and lies in the row space of A (orthogonal to e_com).
    const Eigen::MatrixXd gram = roots_ * roots_.transpose();
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(count());
    Eigen::VectorXd z0 = -roots_.transpose() * gram.ldlt().solve(ones);
    return z0 / z0.norm();
}

Eigen::VectorXd RootSet::chamber_wavevector(const Eigen::VectorXd& coeffs) const {
    if (coeffs.size() != count()) {
        throw DomainError("need one cone coefficient per simple root");
    }
    const Eigen::MatrixXd gram = roots_ * roots_.transpose();
    return roots_.transpose() * gram.ldlt().solve(coeffs);
}

std::string RootSet::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("dim").value(dim());
    w.key("simple_roots").begin_array();
    for (int r = 0; r < count(); ++r) {
        w.begin_array();
        for (int c = 0; c < dim(); ++c) w.value(roots_(r, c));
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

double dihedral_angle(double m_prev, double m_mid, double m_next) {
    for (double m : {m_prev, m_mid, m_next}) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw DomainError("dihedral_angle needs positive finite masses");
        }
    }
    return std::atan(
        std::sqrt(m_mid * (m_prev + m_mid + m_next) / (m_prev * m_next)));
}

double angle_between_mirrors(const RootSet& roots, int i, int j) {
    if (i == j) throw std::out_of_range("mirror indices must differ");
    const Eigen::VectorXd a = roots.alpha(i);
    const Eigen::VectorXd b = roots.alpha(j);
    const double dot = std::clamp(a.dot(b), -1.0, 1.0);
    const double between_normals = std::acos(dot);
    // Outer wedge normals are mutually obtuse; the mirror angle is the
    // acute supplement.
    return std::min(between_normals, kPi - between_normals);
}

CoxeterDiagram::CoxeterDiagram(int n_vertices, LabelMap labels)
    : n_vertices_(n_vertices), labels_(std::move(labels)) {}

int CoxeterDiagram::label(int i, int j) const {
    if (i == j) throw std::out_of_range("diagram label m_ii is undefined");
    auto key = std::minmax(i, j);
    auto it = labels_.find({key.first, key.second});
    if (it == labels_.end()) {
        throw std::out_of_range("diagram label index out of range");
    }
    return it->second;
}

std::vector<int> CoxeterDiagram::chain_labels() const {
    std::vector<int> chain;
    const int last = n_vertices_ + 1;  // largest root index
    for (int i = 2; i < last; ++i) chain.push_back(label(i, i + 1));
    return chain;
}

std::string CoxeterDiagram::to_text() const {
    std::string text;
    for (int l : chain_labels()) {
        if (!text.empty()) text += " — ";
        text += std::to_string(l);
    }
    return text;
}

std::string CoxeterDiagram::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("vertices").value(n_vertices_);
    w.key("labels").begin_array();
    for (const auto& [pair, m] : labels_) {
        w.begin_object();
        w.key("i").value(pair.first);
        w.key("j").value(pair.second);
        w.key("m").value(m);
        w.end_object();
    }
    w.end_array();
    w.key("text").value(to_text());
    w.end_object();
    return w.str();
}

CoxeterDiagram infer_diagram(const RootSet& roots, double tol) {
    if (!(tol > 0.0) || tol > 1e-3) {
        throw DomainError("diagram tolerance must lie in (0, 1e-3]");
    }
    const int n = roots.dim();
    CoxeterDiagram::LabelMap labels;
    for (int i = 2; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const double angle = angle_between_mirrors(roots, i, j);
            int best_n = 0;
            double best_err = tol;
            for (int cand = 2; cand <= kMaxLabel; ++cand) {
                const double err = std::abs(angle - kPi / cand);
                if (err < best_err) {
                    best_err = err;
                    best_n = cand;
                }
            }
            if (best_n == 0) {
                throw NotKaleidoscopicError(
                    "mirror pair (" + std::to_string(i) + ", " + std::to_string(j) +
                    ") meets at " + std::to_string(angle * 180.0 / kPi) +
                    " deg, not pi/n for any n in [2, " + std::to_string(kMaxLabel) +
                    "]: no finite reflection group");
            }
            labels[{i, j}] = best_n;
        }
    }
    return CoxeterDiagram(n - 1, std::move(labels));
}

}  // namespace kaleido
