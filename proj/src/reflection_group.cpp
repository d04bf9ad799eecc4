#include "kaleido/reflection_group.hpp"

#include <cmath>
#include <deque>

#include "kaleido/json_text.hpp"

namespace kaleido {

namespace {

std::vector<double> flatten(const Eigen::MatrixXd& m) {
    std::vector<double> key(static_cast<std::size_t>(m.size()));
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) {
            key[static_cast<std::size_t>(r) * m.cols() + c] = m(r, c);
        }
    }
    return key;
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::MatrixXd reflection_matrix(const Eigen::VectorXd& beta) {
    if (std::abs(beta.norm() - 1.0) > 1e-10) {
        throw DomainError("reflection normal must be a unit vector");
    }
    const int n = static_cast<int>(beta.size());
    return Eigen::MatrixXd::Identity(n, n) - 2.0 * beta * beta.transpose();
}

ReflectionGroup ReflectionGroup::generate(const RootSet& roots, int max_order) {
    if (max_order < 1) throw DomainError("max_order must be positive");

    ReflectionGroup g;
    g.simple_roots_ = roots.matrix();
    g.e_com_ = roots.e_com();
    g.chamber_point_ = roots.chamber_point();

    const int n = roots.dim();
    for (int i = 2; i <= n; ++i) {
        g.generators_.push_back(reflection_matrix(roots.alpha(i)));
    }

    g.elements_.push_back({Eigen::MatrixXd::Identity(n, n), 0, 0});
    g.index_.emplace(flatten(g.elements_[0].matrix), 0);

    // Breadth-first closure: expanding in word-length order makes
    // word_length the true generator distance and keeps discovery
    // order deterministic.
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        const int idx = frontier.front();
        frontier.pop_front();
        for (const auto& gen : g.generators_) {
            const Eigen::MatrixXd product = g.elements_[idx].matrix * gen;
            const auto key = flatten(product);
            auto it = g.index_.find(key);
            if (it != g.index_.end()) {
                if (max_abs_diff(product, g.elements_[it->second].matrix) > 1e-8) {
                    throw std::logic_error(
                        "dedup table matched two group elements that differ "
                        "beyond tolerance");
                }
                continue;
            }
            if (static_cast<int>(g.elements_.size()) >= max_order) {
                throw ClosureOverflowError(
                    "group closure exceeded " + std::to_string(max_order) +
                    " elements; root set generates an infinite group");
            }
            GroupElement elem;
            elem.matrix = product;
            elem.parity = (g.elements_[idx].parity + 1) & 1;
            elem.word_length = g.elements_[idx].word_length + 1;

            const double det = product.determinant();
            const double expected = elem.parity ? -1.0 : 1.0;
            if (std::abs(det - expected) > 1e-6) {
                throw std::logic_error(
                    "element parity disagrees with its determinant; closure "
                    "aborted");
            }

            const int new_idx = static_cast<int>(g.elements_.size());
            g.elements_.push_back(std::move(elem));
            g.index_.emplace(std::move(key), new_idx);
            frontier.push_back(new_idx);
        }
    }

    g.extract_positive_roots();
    return g;
}

void ReflectionGroup::extract_positive_roots() {
    const int n = dim();
    for (const auto& elem : elements_) {
        if (elem.parity != 1) continue;
        if (std::abs(elem.matrix.trace() - (n - 2)) > 1e-6) continue;

        // (I - R)/2 equals beta beta^T for a pure reflection; its
        // largest column is a clean multiple of beta.
        const Eigen::MatrixXd projector =
            0.5 * (Eigen::MatrixXd::Identity(n, n) - elem.matrix);
        int best_col = 0;
        double best_norm = -1.0;
        for (int c = 0; c < n; ++c) {
            const double cn = projector.col(c).norm();
            if (cn > best_norm) {
                best_norm = cn;
                best_col = c;
            }
        }
        Eigen::VectorXd beta = projector.col(best_col) / best_norm;

        // Cone convention: orient each normal against the interior
        // chamber point so the product of (beta . z) has one sign on
        // the whole chamber.
        const double side = beta.dot(chamber_point_);
        if (std::abs(side) < 1e-12) {
            throw std::logic_error("chamber point lies on a mirror");
        }
        if (side > 0.0) beta = -beta;
        positive_roots_.push_back(std::move(beta));
    }
}

std::optional<int> ReflectionGroup::find(const Eigen::MatrixXd& m) const {
    auto it = index_.find(flatten(m));
    if (it == index_.end()) return std::nullopt;
    if (max_abs_diff(m, elements_[it->second].matrix) > 1e-8) return std::nullopt;
    return it->second;
}

int ReflectionGroup::even_count() const {
    int c = 0;
    for (const auto& e : elements_) c += (e.parity == 0);
    return c;
}

int ReflectionGroup::odd_count() const { return order() - even_count(); }

std::string ReflectionGroup::summary_json(const CoxeterDiagram* diagram,
                                          bool dump_matrices) const {
    JsonWriter w;
    w.begin_object();
    w.key("order").value(order());
    w.key("n_reflections").value(static_cast<int>(positive_roots_.size()));
    w.key("parity_counts").begin_object();
    w.key("even").value(even_count());
    w.key("odd").value(odd_count());
    w.end_object();
    if (diagram != nullptr) {
        w.key("diagram").raw(diagram->to_json());
    }
    if (dump_matrices) {
        w.key("elements").begin_array();
        for (const auto& e : elements_) {
            w.begin_object();
            w.key("parity").value(e.parity);
            w.key("word_length").value(e.word_length);
            w.key("matrix").begin_array();
            for (int r = 0; r < e.matrix.rows(); ++r) {
                w.begin_array();
                for (int c = 0; c < e.matrix.cols(); ++c) w.value(e.matrix(r, c));
                w.end_array();
            }
            w.end_array();
            w.end_object();
        }
        w.end_array();
    }
    w.end_object();
    return w.str();
}

CountingReport counting_check(const MassSpectrum& spectrum,
                              const ReflectionGroup& group) {
    const int n = spectrum.size();
    CountingReport report;
    report.contact_planes = n * (n - 1) / 2;
    report.mirrors = static_cast<int>(group.positive_roots().size());
    report.equal = (report.contact_planes == report.mirrors);
    return report;
}

}  // namespace kaleido
