#ifndef KALEIDO_REFLECTION_GROUP_HPP
#define KALEIDO_REFLECTION_GROUP_HPP

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kaleido/root_system.hpp"

namespace kaleido {

/// Householder reflection I - 2 beta beta^T about the hyperplane with
/// unit normal beta. DomainError if |beta| deviates from 1 by more
/// than 1e-10.
Eigen::MatrixXd reflection_matrix(const Eigen::VectorXd& beta);

struct GroupElement {
    Eigen::MatrixXd matrix;  // orthogonal, fixes e_com
    int parity;              // generator word length mod 2; matches sign of det
    int word_length;         // shortest generator word found during closure
};

/// Finite reflection group generated by the simple-root mirrors,
/// obtained by breadth-first closure over generator products.
/// Elements are stored in discovery order (identity first), so all
/// derived data is deterministic.
class ReflectionGroup {
public:
    static ReflectionGroup generate(const RootSet& roots, int max_order = 20000);

    int order() const { return static_cast<int>(elements_.size()); }
    int dim() const { return static_cast<int>(e_com_.size()); }

    const std::vector<GroupElement>& elements() const { return elements_; }
    const GroupElement& element(int idx) const { return elements_.at(idx); }
    const std::vector<Eigen::MatrixXd>& generators() const { return generators_; }

    /// One unit normal per pure reflection (det -1, trace N-2),
    /// oriented so that beta . z0 < 0 at the interior chamber point z0.
    const std::vector<Eigen::VectorXd>& positive_roots() const { return positive_roots_; }

    const Eigen::VectorXd& e_com() const { return e_com_; }
    const Eigen::VectorXd& chamber_point() const { return chamber_point_; }
    const Eigen::MatrixXd& simple_roots() const { return simple_roots_; }

    /// Index of the stored element entrywise-equal (1e-8) to m, if any.
    std::optional<int> find(const Eigen::MatrixXd& m) const;

    int even_count() const;
    int odd_count() const;

    /// { order, n_reflections, parity_counts } plus the diagram when
    /// provided; full matrix dump optional.
    std::string summary_json(const CoxeterDiagram* diagram = nullptr,
                             bool dump_matrices = false) const;

private:
    ReflectionGroup() = default;

    void extract_positive_roots();

    std::vector<GroupElement> elements_;
    std::vector<Eigen::MatrixXd> generators_;
    std::vector<Eigen::VectorXd> positive_roots_;
    Eigen::MatrixXd simple_roots_;
    Eigen::VectorXd e_com_;
    Eigen::VectorXd chamber_point_;

    // Dedup table: flattened matrices under a tolerance-aware
    // lexicographic order. Distinct elements of a finite reflection
    // group are far apart (>= 0.05 in some entry for H3/H4), closure
    // noise is <= 1e-12, so eps = 1e-6 separates cleanly.
    struct TolerantLess {
        bool operator()(const std::vector<double>& a,
                        const std::vector<double>& b) const {
            for (std::size_t i = 0; i < a.size(); ++i) {
                double d = a[i] - b[i];
                if (d < -kEps) return true;
                if (d > kEps) return false;
            }
            return false;
        }
        static constexpr double kEps = 1e-6;
    };
    std::map<std::vector<double>, int, TolerantLess> index_;
};

/// Contact-plane count N(N-1)/2 against the group's mirror count. The
/// two agree only for the symmetric group A_{N-1}; the mismatch for H3
/// and H4 is what rules out finite-strength contact interactions.
struct CountingReport {
    int contact_planes;
    int mirrors;
    bool equal;
};

CountingReport counting_check(const MassSpectrum& spectrum, const ReflectionGroup& group);

}  // namespace kaleido

#endif  // KALEIDO_REFLECTION_GROUP_HPP
