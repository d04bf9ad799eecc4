#include "kaleido/verification.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <random>

#include "kaleido/json_text.hpp"
#include "kaleido/reflection_group.hpp"
#include "kaleido/root_system.hpp"
#include "kaleido/states.hpp"

namespace kaleido {

bool VerificationReport::overall() const {
    for (const auto& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

std::string VerificationReport::to_json(const MassSpectrum& spectrum,
                                        std::uint64_t seed) const {
    JsonWriter w;
    w.begin_object();
    w.key("spectrum").raw(spectrum.to_json());
    w.key("seed").value(static_cast<long long>(seed));
    w.key("overall").value(overall() ? "pass" : "fail");
    w.key("checks").begin_array();
    for (const auto& c : checks) {
        w.begin_object();
        w.key("name").value(c.name);
        w.key("status").value(c.pass ? "pass" : "fail");
        w.key("measured").value(c.measured);
        w.key("threshold").value(c.threshold);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string VerificationReport::to_table() const {
    std::string out;
    char line[160];
    std::snprintf(line, sizeof(line), "%-36s %-6s %13s %13s\n", "check", "status",
                  "measured", "threshold");
    out += line;
    for (const auto& c : checks) {
        std::snprintf(line, sizeof(line), "%-36s %-6s %13.4e %13.4e\n",
                      c.name.c_str(), c.pass ? "pass" : "FAIL", c.measured,
                      c.threshold);
        out += line;
    }
    out += "overall: ";
    out += overall() ? "pass" : "fail";
    out += '\n';
    return out;
}

namespace {

// Every check reduces to measured <= threshold: residual checks use the
// tolerance bound, counting checks use measured = number of failed
// sub-assertions with threshold 0.
Check make_check(std::string name, double measured, double threshold) {
    return Check{std::move(name), measured <= threshold, measured, threshold};
}

class Suite {
public:
    Suite(const MassSpectrum& spectrum, const VerifyOptions& options)
        : spectrum_(spectrum),
          options_(options),
          rng_(options.seed),
          frame_(spectrum),
          roots_(frame_),
          diagram_(infer_diagram(roots_)),
          group_(ReflectionGroup::generate(roots_)) {}

    VerificationReport run();

private:
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }
    double normal(double sigma) {
        return std::normal_distribution<double>(0.0, sigma)(rng_);
    }
    int uniform_index(int n) {
        return std::uniform_int_distribution<int>(0, n - 1)(rng_);
    }
    Eigen::VectorXd random_vector(int n, double sigma) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v[i] = normal(sigma);
        return v;
    }
    Eigen::VectorXd random_ordered_positions() {
        Eigen::VectorXd x(frame_.dim());
        for (int i = 0; i < x.size(); ++i) x[i] = uniform(-2.0, 2.0);
        std::sort(x.data(), x.data() + x.size());
        return x;
    }
    // The signed plane-wave sum is numerically supported only where
    // |k||z| clears the anti-invariant degree: every Taylor term below
    // degree |positive_roots| cancels by anti-invariant averaging, so
    // small wavevectors leave nothing but rounding noise. Scale k so
    // the sampled phases sit well above that crossover.
    double wavevector_scale() const {
        return static_cast<int>(group_.positive_roots().size()) > 20 ? 16.0
                                                                     : 6.0;
    }

    Eigen::VectorXd scattering_wavevector() {
        if (options_.k.has_value()) {
            if (!in_scattering_cone(roots_, *options_.k)) {
                throw DomainError(
                    "provided wavevector violates the scattering-cone "
                    "condition alpha_i . k > 0");
            }
            return *options_.k;
        }
        Eigen::VectorXd coeffs(roots_.count());
        for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = uniform(0.7, 1.7);
        Eigen::VectorXd k = roots_.chamber_wavevector(coeffs);
        return k * (wavevector_scale() / k.norm());
    }

    // Point on a radial shell with a guaranteed angular clearance from
    // every mirror. Relative residuals are meaningful only away from
    // the Dirichlet zeros, and the clearance survives both the group
    // action (g permutes mirrors) and e_com translations (beta is
    // orthogonal to e_com).
    Eigen::VectorXd generic_point(double clearance) {
        const int n = group_.dim();
        const Eigen::VectorXd& e_com = group_.e_com();
        for (int attempt = 0; attempt < 500; ++attempt) {
            Eigen::VectorXd u = random_vector(n, 1.0);
            u -= e_com.dot(u) * e_com;
            const double norm = u.norm();
            if (norm < 1e-8) continue;
            u /= norm;
            double min_dist = 2.0;
            for (const auto& beta : group_.positive_roots()) {
                min_dist = std::min(min_dist, std::abs(beta.dot(u)));
            }
            if (min_dist < clearance) continue;
            return uniform(1.8, 2.6) * u + uniform(-0.5, 0.5) * e_com;
        }
        // Chamber interior always clears every mirror.
        return 2.0 * group_.chamber_point();
    }

    double mirror_clearance() const {
        return static_cast<int>(group_.positive_roots().size()) > 20 ? 0.04
                                                                     : 0.05;
    }
    Eigen::VectorXd random_chamber_point() {
        Eigen::VectorXd coeffs(roots_.count());
        for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = uniform(0.2, 1.8);
        // alpha_i . z = -coeffs[i] < 0 by construction of the dual basis.
        Eigen::VectorXd z = -roots_.chamber_wavevector(coeffs);
        z += uniform(-1.0, 1.0) * roots_.e_com();
        return z;
    }

    void masses_checks(VerificationReport& report);
    void roots_checks(VerificationReport& report);
    void group_checks(VerificationReport& report);
    void states_checks(VerificationReport& report);

    const MassSpectrum& spectrum_;
    VerifyOptions options_;
    std::mt19937_64 rng_;
    JacobiFrame frame_;
    RootSet roots_;
    CoxeterDiagram diagram_;
    ReflectionGroup group_;
};

void Suite::masses_checks(VerificationReport& report) {
    double min_mass = spectrum_.masses()[0];
    for (double m : spectrum_.masses()) min_mass = std::min(min_mass, m);
    report.checks.push_back(
        make_check("masses_positive_finite", min_mass > 0.0 ? 0.0 : 1.0, 0.0));

    report.checks.push_back(make_check(
        "ecom_unit_norm", std::abs(frame_.e_com().norm() - 1.0), 1e-12));

    double roundtrip = 0.0;
    double com_identity = 0.0;
    const double mu_m = frame_.mu() * spectrum_.total_mass();
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::VectorXd x = random_vector(frame_.dim(), 1.0);
        const Eigen::VectorXd z = frame_.x_to_z(x);
        const Eigen::VectorXd back = frame_.z_to_x(z);
        roundtrip = std::max(roundtrip,
                             (back - x).norm() / std::max(x.norm(), 1e-30));
        double weighted = 0.0;
        for (int i = 0; i < x.size(); ++i) {
            weighted += spectrum_.masses()[static_cast<std::size_t>(i)] * x[i];
        }
        const double lhs = frame_.e_com().dot(z);
        const double rhs = weighted / std::sqrt(mu_m);
        com_identity = std::max(
            com_identity, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-30));
    }
    report.checks.push_back(make_check("jacobi_roundtrip", roundtrip, 1e-12));
    report.checks.push_back(
        make_check("com_projection_identity", com_identity, 1e-12));
}

void Suite::roots_checks(VerificationReport& report) {
    const int n = roots_.dim();

    double unit_dev = 0.0;
    double nonadj = 0.0;
    double ecom_dot = 0.0;
    for (int i = 2; i <= n; ++i) {
        unit_dev = std::max(unit_dev, std::abs(roots_.alpha(i).norm() - 1.0));
        ecom_dot = std::max(ecom_dot,
                            std::abs(roots_.alpha(i).dot(roots_.e_com())));
        for (int j = i + 2; j <= n; ++j) {
            nonadj = std::max(nonadj, std::abs(roots_.alpha(i).dot(roots_.alpha(j))));
        }
    }
    report.checks.push_back(make_check("simple_roots_unit_norm", unit_dev, 1e-12));
    report.checks.push_back(
        make_check("nonadjacent_roots_orthogonal", nonadj, 1e-12));
    report.checks.push_back(
        make_check("roots_orthogonal_to_ecom", ecom_dot, 1e-12));

    double chamber_max = -1.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::VectorXd z = frame_.x_to_z(random_ordered_positions());
        chamber_max = std::max(chamber_max, (roots_.matrix() * z).maxCoeff());
    }
    report.checks.push_back(make_check("chamber_condition", chamber_max, 0.0));

    double angle_dev = 0.0;
    for (int i = 2; i < n; ++i) {
        const double from_roots = angle_between_mirrors(roots_, i, i + 1);
        const double from_masses =
            dihedral_angle(spectrum_.mass(i - 1), spectrum_.mass(i),
                           spectrum_.mass(i + 1));
        angle_dev = std::max(angle_dev, std::abs(from_roots - from_masses));
    }
    report.checks.push_back(
        make_check("mirror_angles_match_mass_formula", angle_dev, 1e-10));

    if (spectrum_.label() != SpectrumLabel::Custom) {
        const std::vector<int> expected_chain =
            spectrum_.label() == SpectrumLabel::H3 ? std::vector<int>{5, 3}
                                                   : std::vector<int>{5, 3, 3};
        int mismatches = diagram_.chain_labels() == expected_chain ? 0 : 1;
        for (int i = 2; i <= n; ++i) {
            for (int j = i + 2; j <= n; ++j) {
                if (diagram_.label(i, j) != 2) ++mismatches;
            }
        }
        report.checks.push_back(
            make_check("diagram_labels", static_cast<double>(mismatches), 0.0));
    }
}

void Suite::group_checks(VerificationReport& report) {
    const int n = group_.dim();
    const bool family = spectrum_.label() != SpectrumLabel::Custom;
    const int expected_order = spectrum_.label() == SpectrumLabel::H3 ? 120 : 14400;
    const int expected_mirrors = spectrum_.label() == SpectrumLabel::H3 ? 15 : 60;

    if (family) {
        report.checks.push_back(make_check(
            "group_order", std::abs(group_.order() - expected_order), 0.0));
        report.checks.push_back(make_check(
            "pure_reflection_count",
            std::abs(static_cast<int>(group_.positive_roots().size()) -
                     expected_mirrors),
            0.0));
    }

    double ortho = 0.0;
    double fixes_ecom = 0.0;
    double det_dev = 0.0;
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
    for (const auto& e : group_.elements()) {
        ortho = std::max(
            ortho,
            (e.matrix.transpose() * e.matrix - identity).cwiseAbs().maxCoeff());
        fixes_ecom = std::max(
            fixes_ecom,
            (e.matrix * group_.e_com() - group_.e_com()).cwiseAbs().maxCoeff());
        const double expected_det = e.parity ? -1.0 : 1.0;
        det_dev = std::max(det_dev,
                           std::abs(e.matrix.determinant() - expected_det));
    }
    report.checks.push_back(make_check("group_orthogonality", ortho, 1e-10));
    report.checks.push_back(make_check("group_fixes_ecom", fixes_ecom, 1e-10));
    report.checks.push_back(
        make_check("parity_matches_determinant", det_dev, 1e-8));

    double closure_diff = 0.0;
    int closure_failures = 0;
    int parity_failures = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int a = uniform_index(group_.order());
        const int b = uniform_index(group_.order());
        const Eigen::MatrixXd product =
            group_.element(a).matrix * group_.element(b).matrix;
        const auto idx = group_.find(product);
        if (!idx.has_value()) {
            ++closure_failures;
            continue;
        }
        closure_diff = std::max(
            closure_diff,
            (product - group_.element(*idx).matrix).cwiseAbs().maxCoeff());
        const int expected_parity =
            group_.element(a).parity ^ group_.element(b).parity;
        if (group_.element(*idx).parity != expected_parity) ++parity_failures;
    }
    report.checks.push_back(make_check(
        "group_closed_under_products",
        closure_failures > 0 ? 1.0 + closure_failures : closure_diff, 1e-8));
    report.checks.push_back(make_check(
        "parity_homomorphism", static_cast<double>(parity_failures), 0.0));

    report.checks.push_back(make_check(
        "parity_balance",
        std::abs(group_.even_count() - group_.odd_count()), 0.0));

    double beta_ecom = 0.0;
    for (const auto& beta : group_.positive_roots()) {
        beta_ecom = std::max(beta_ecom, std::abs(beta.dot(group_.e_com())));
    }
    report.checks.push_back(
        make_check("positive_roots_orthogonal_to_ecom", beta_ecom, 1e-10));

    double simple_dist = 0.0;
    for (int i = 2; i <= n; ++i) {
        const Eigen::VectorXd alpha = roots_.alpha(i);
        double best = 2.0;
        for (const auto& beta : group_.positive_roots()) {
            best = std::min(best, std::min((beta - alpha).cwiseAbs().maxCoeff(),
                                           (beta + alpha).cwiseAbs().maxCoeff()));
        }
        simple_dist = std::max(simple_dist, best);
    }
    report.checks.push_back(
        make_check("simple_roots_among_positive_roots", simple_dist, 1e-8));

    int roundtrip_failures = 0;
    for (const auto& beta : group_.positive_roots()) {
        const auto idx = group_.find(reflection_matrix(beta));
        if (!idx.has_value() || group_.element(*idx).parity != 1) {
            ++roundtrip_failures;
        }
    }
    report.checks.push_back(make_check("reflection_normals_roundtrip",
                                       static_cast<double>(roundtrip_failures),
                                       0.0));

    if (family) {
        const CountingReport counting = counting_check(spectrum_, group_);
        const int expected_planes = n * (n - 1) / 2;
        int failed = 0;
        if (counting.contact_planes != expected_planes) ++failed;
        if (counting.mirrors != expected_mirrors) ++failed;
        if (counting.equal) ++failed;  // H3/H4 mirrors outnumber contacts
        report.checks.push_back(
            make_check("counting_check", static_cast<double>(failed), 0.0));
    }
}

void Suite::states_checks(VerificationReport& report) {
    const int n = group_.dim();
    const bool h4_sized = group_.order() > 1000;
    const double clearance = mirror_clearance();

    const Eigen::VectorXd k = scattering_wavevector();
    const BetheState psi(group_, Wavevector{k});
    const double term_sum = psi.term_magnitude_sum();

    {
        const BetheState zero_state(group_, Wavevector{Eigen::VectorXd::Zero(n)});
        double worst = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::VectorXd z = random_vector(n, 1.0);
            worst = std::max(worst, std::abs(zero_state.eval(z)) / term_sum);
        }
        report.checks.push_back(make_check("bethe_k_zero", worst, 1e-12));
    }

    {
        double worst = 0.0;
        std::vector<Eigen::VectorXd> points;
        for (const auto& beta : group_.positive_roots()) {
            for (int trial = 0; trial < 50; ++trial) {
                Eigen::VectorXd y = random_vector(n, 0.8);
                points.push_back(y - beta.dot(y) * beta);
            }
        }
        const auto values = psi.eval_batch(points, options_.threads);
        for (const auto& v : values) {
            worst = std::max(worst, std::abs(v) / term_sum);
        }
        report.checks.push_back(
            make_check("bethe_dirichlet_on_mirrors", worst, 1e-10));
    }

    {
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const int g = uniform_index(group_.order());
            const Eigen::VectorXd z = generic_point(clearance);
            worst = std::max(worst, psi.symmetry_residual(g, z));
        }
        report.checks.push_back(make_check("bethe_equivariance", worst, 1e-10));
    }

    {
        // Use a wavevector with a centre-of-mass component so the
        // translation picks up a genuine phase.
        const BetheState shifted(group_,
                                 Wavevector{k + 0.7 * group_.e_com()});
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::VectorXd z = generic_point(clearance);
            const double c = uniform(-1.0, 1.0);
            const std::complex<double> base = shifted.eval(z);
            const std::complex<double> moved =
                shifted.eval(z + c * group_.e_com());
            const double phase = c * shifted.k().dot(group_.e_com());
            const std::complex<double> expected =
                std::complex<double>(std::cos(phase), std::sin(phase)) * base;
            worst = std::max(worst,
                             std::abs(moved - expected) /
                                 (std::abs(base) + 1e-30 * term_sum));
        }
        report.checks.push_back(
            make_check("bethe_translation_phase", worst, 1e-10));
    }

    {
        std::vector<Eigen::VectorXd> points;
        const int count = 1000;
        points.reserve(count);
        for (int trial = 0; trial < count; ++trial) {
            points.push_back(generic_point(clearance));
        }
        const auto fast = psi.eval_batch(points, options_.threads);
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            const std::complex<double> slow =
                bethe_eval_reference(group_, k, points[static_cast<std::size_t>(i)]);
            const double denom =
                std::max(std::abs(fast[static_cast<std::size_t>(i)]),
                         std::abs(slow)) +
                1e-30 * term_sum;
            worst = std::max(
                worst, std::abs(fast[static_cast<std::size_t>(i)] - slow) / denom);
        }
        report.checks.push_back(
            make_check("bethe_oracle_equivalence", worst, 1e-12));
    }

    {
        double worst = 0.0;
        const int trials = h4_sized ? 10 : 20;
        const double h = h4_sized ? 4e-4 : 1e-3;
        for (int trial = 0; trial < trials; ++trial) {
            const Eigen::VectorXd z = random_chamber_point();
            worst = std::max(worst, psi.helmholtz_residual(z, h));
        }
        report.checks.push_back(
            make_check("bethe_helmholtz_residual", worst, 1e-5));
    }

    const AntiInvariantState psi0(group_);

    {
        double worst = 0.0;
        for (const auto& beta : group_.positive_roots()) {
            for (int trial = 0; trial < 10; ++trial) {
                Eigen::VectorXd y = random_vector(n, 1.0);
                const Eigen::VectorXd z = y - beta.dot(y) * beta;
                double others = 1.0;
                for (const auto& other : group_.positive_roots()) {
                    if (&other == &beta) continue;
                    others *= std::abs(other.dot(z));
                }
                const double denom = others * z.norm() + 1e-300;
                worst = std::max(worst, std::abs(psi0.eval(z)) / denom);
            }
        }
        report.checks.push_back(
            make_check("anti_invariant_zero_on_mirrors", worst, 1e-10));
    }

    {
        const int trials = h4_sized ? 20 : 100;
        double worst = 0.0;
        for (int trial = 0; trial < trials; ++trial) {
            Eigen::VectorXd z = random_vector(n, 1.0);
            z /= z.norm();
            const auto lap = psi0.laplacian(z);
            worst = std::max(worst, std::abs(lap.value) / (lap.scale + 1e-300));
        }
        report.checks.push_back(
            make_check("anti_invariant_harmonicity", worst, 1e-9));
    }

    {
        double worst = 0.0;
        const int sample = h4_sized ? 200 : group_.order();
        for (int trial = 0; trial < sample; ++trial) {
            const int g =
                h4_sized ? uniform_index(group_.order()) : trial;
            const Eigen::VectorXd z = generic_point(clearance);
            const double base = psi0.eval(z);
            const double moved = psi0.eval(group_.element(g).matrix * z);
            const double expected =
                (group_.element(g).parity ? -1.0 : 1.0) * base;
            worst = std::max(worst, std::abs(moved - expected) /
                                        (std::abs(base) + 1e-300));
        }
        report.checks.push_back(
            make_check("anti_invariant_equivariance", worst, 1e-10));
    }

    {
        // Homogeneity degree from a log-log slope fit.
        const Eigen::VectorXd z = random_chamber_point();
        const int samples = 7;
        double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double lambda =
                0.5 * std::pow(4.0, static_cast<double>(s) / (samples - 1));
            const double x = std::log(lambda);
            const double y = std::log(std::abs(psi0.eval(lambda * z)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope =
            (samples * sxy - sx * sy) / (samples * sxx - sx * sx);
        report.checks.push_back(make_check(
            "anti_invariant_homogeneity",
            std::abs(slope - psi0.degree()), 1e-9));
    }

    {
        int sign_changes = 0;
        double first = 0.0;
        for (int trial = 0; trial < 50; ++trial) {
            const double v = psi0.eval(random_chamber_point());
            if (trial == 0) {
                first = v;
            } else if (v * first <= 0.0) {
                ++sign_changes;
            }
        }
        report.checks.push_back(make_check(
            "anti_invariant_chamber_sign", static_cast<double>(sign_changes),
            0.0));
    }
}

VerificationReport Suite::run() {
    VerificationReport report;
    masses_checks(report);
    roots_checks(report);
    group_checks(report);
    states_checks(report);
    return report;
}

}  // namespace

VerificationReport run_verification(const MassSpectrum& spectrum,
                                    const VerifyOptions& options) {
    Suite suite(spectrum, options);
    return suite.run();
}

}  // namespace kaleido
