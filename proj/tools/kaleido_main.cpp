// Command-line front end: mass families, root systems and Coxeter
// diagrams, reflection-group generation, the machine-verification
// suite, and angular density export.
//
// Exit codes: 0 ok, 1 verification failure, 2 domain/usage error,
// 3 non-kaleidoscopic spectrum or closure overflow.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kaleido/errors.hpp"
#include "kaleido/json_text.hpp"
#include "kaleido/mass_spectrum.hpp"
#include "kaleido/reflection_group.hpp"
#include "kaleido/root_system.hpp"
#include "kaleido/states.hpp"
#include "kaleido/verification.hpp"

namespace {

using namespace kaleido;

std::vector<double> parse_number_list(const std::string& text,
                                      const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError(what + ": '" + item + "' is not a number");
        }
    }
    if (values.empty()) throw DomainError(what + ": empty list");
    return values;
}

struct SpectrumSource {
    std::string family;
    double xi = 0.0;
    bool have_xi = false;
    double m2 = 1.0;
    std::string masses_json_path;

    void attach(CLI::App* cmd, bool family_only = false) {
        auto* fam = cmd->add_option("--family", family,
                                    "mass family, h3 or h4")
                        ->check(CLI::IsMember({"h3", "h4"}));
        auto* xi_opt =
            cmd->add_option("--xi", xi, "dimensionless family parameter");
        xi_opt->each([this](const std::string&) { have_xi = true; });
        cmd->add_option("--m2", m2, "mass scale m2 (default 1)");
        if (!family_only) {
            auto* path = cmd->add_option("--masses-json", masses_json_path,
                                         "path to a custom spectrum JSON")
                             ->excludes(fam)
                             ->excludes(xi_opt);
            (void)path;
        }
    }

    MassSpectrum resolve() const {
        if (!masses_json_path.empty()) {
            std::ifstream in(masses_json_path);
            if (!in) {
                throw DomainError("cannot open '" + masses_json_path + "'");
            }
            std::stringstream buf;
            buf << in.rdbuf();
            return MassSpectrum::from_json(buf.str());
        }
        if (family.empty()) {
            throw DomainError("need --family/--xi or --masses-json");
        }
        if (!have_xi) throw DomainError("--family needs --xi");
        return family == "h3" ? h3_family(xi, m2) : h4_family(xi, m2);
    }
};

void cmd_family(const SpectrumSource& src) {
    std::cout << src.resolve().to_json() << "\n";
}

void cmd_limits(const std::string& family, const std::string& end, double m2) {
    const Family fam = family == "h3" ? Family::H3 : Family::H4;
    const WallEnd wall =
        end == "left" ? WallEnd::LeftWall : WallEnd::RightWall;
    const HalfLineSpectrum limit = limiting_spectrum(fam, wall, m2);
    JsonWriter w;
    w.begin_object();
    w.key("family").value(to_string(fam));
    w.key("end").value(to_string(wall));
    w.key("wall_position").value(limit.wall_position);
    w.key("particles_side").value(wall == WallEnd::LeftWall ? "x>0" : "x<0");
    w.key("spectrum").raw(limit.spectrum.to_json());
    w.end_object();
    std::cout << w.str() << "\n";
}

void cmd_roots(const SpectrumSource& src, double mu) {
    const MassSpectrum spectrum = src.resolve();
    const JacobiFrame frame =
        mu > 0.0 ? JacobiFrame(spectrum, mu) : JacobiFrame(spectrum);
    const RootSet roots(frame);
    const CoxeterDiagram diagram = infer_diagram(roots);
    JsonWriter w;
    w.begin_object();
    w.key("spectrum").raw(spectrum.to_json());
    w.key("roots").raw(roots.to_json());
    w.key("diagram").raw(diagram.to_json());
    w.end_object();
    std::cout << w.str() << "\n";
}

void cmd_group(const SpectrumSource& src, int max_order, bool dump_matrices) {
    const MassSpectrum spectrum = src.resolve();
    const JacobiFrame frame(spectrum);
    const RootSet roots(frame);
    // Gate on diagram inference: it reports *which* mirror pair is off,
    // which beats watching the closure overflow.
    const CoxeterDiagram diagram = infer_diagram(roots);
    const ReflectionGroup group = ReflectionGroup::generate(roots, max_order);
    const CountingReport counting = counting_check(spectrum, group);

    JsonWriter w;
    w.begin_object();
    w.key("order").value(group.order());
    w.key("n_reflections")
        .value(static_cast<int>(group.positive_roots().size()));
    w.key("parity_counts").begin_object();
    w.key("even").value(group.even_count());
    w.key("odd").value(group.odd_count());
    w.end_object();
    w.key("diagram").raw(diagram.to_json());
    w.key("counting_check").begin_object();
    w.key("contact_planes").value(counting.contact_planes);
    w.key("mirrors").value(counting.mirrors);
    w.key("equal").value(counting.equal);
    w.end_object();
    if (dump_matrices) {
        w.key("group").raw(group.summary_json(nullptr, true));
    }
    w.end_object();
    std::cout << w.str() << "\n";
}

int cmd_verify(const SpectrumSource& src, std::uint64_t seed, int threads,
               const std::string& k_text) {
    const MassSpectrum spectrum = src.resolve();
    VerifyOptions options;
    options.seed = seed;
    options.threads = threads;
    if (!k_text.empty()) {
        const std::vector<double> values = parse_number_list(k_text, "--k");
        if (static_cast<int>(values.size()) != spectrum.size()) {
            throw DomainError("--k needs exactly N components");
        }
        Eigen::VectorXd k(spectrum.size());
        for (int i = 0; i < k.size(); ++i)
            k[i] = values[static_cast<std::size_t>(i)];
        options.k = k;
    }
    const VerificationReport report = run_verification(spectrum, options);
    std::cout << report.to_json(spectrum, seed) << "\n";
    std::cerr << report.to_table();
    return report.overall() ? 0 : 1;
}

void cmd_density(const SpectrumSource& src, int resolution,
                 const std::string& slice_text, const std::string& output,
                 int threads) {
    const MassSpectrum spectrum = src.resolve();
    const JacobiFrame frame(spectrum);
    const RootSet roots(frame);
    infer_diagram(roots);
    const ReflectionGroup group = ReflectionGroup::generate(roots);
    const AntiInvariantState state(group);

    std::optional<std::pair<double, double>> slice;
    if (!slice_text.empty()) {
        const std::vector<double> values =
            parse_number_list(slice_text, "--slice");
        if (values.size() != 2) {
            throw DomainError("--slice needs two angles, e.g. --slice 1.2,0.7");
        }
        slice = std::make_pair(values[0], values[1]);
    }

    const DensityGrid grid =
        angular_density_grid(state, roots, resolution, slice, threads);

    std::ofstream out(output);
    if (!out) throw DomainError("cannot write '" + output + "'");
    grid.write_csv(out);
    std::cerr << "wrote " << grid.density.size() << " grid points to " << output
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exactly solvable four- and five-body hard-core systems from the "
        "icosahedral (H3) and 600-cell (H4) reflection groups"};
    app.require_subcommand(1);

    int exit_code = 0;

    auto* family_cmd =
        app.add_subcommand("family", "print a family mass spectrum as JSON");
    auto family_src = std::make_shared<SpectrumSource>();
    family_src->attach(family_cmd, /*family_only=*/true);
    family_cmd->callback([family_src] { cmd_family(*family_src); });

    auto* limits_cmd = app.add_subcommand(
        "limits", "print the half-line limiting spectrum of a family");
    auto limits_family = std::make_shared<std::string>();
    auto limits_end = std::make_shared<std::string>();
    auto limits_m2 = std::make_shared<double>(1.0);
    limits_cmd->add_option("--family", *limits_family, "h3 or h4")
        ->required()
        ->check(CLI::IsMember({"h3", "h4"}));
    limits_cmd->add_option("--end", *limits_end, "left or right wall")
        ->required()
        ->check(CLI::IsMember({"left", "right"}));
    limits_cmd->add_option("--m2", *limits_m2, "mass scale m2 (default 1)");
    limits_cmd->callback([limits_family, limits_end, limits_m2] {
        cmd_limits(*limits_family, *limits_end, *limits_m2);
    });

    auto* roots_cmd = app.add_subcommand(
        "roots", "print simple roots and the inferred Coxeter diagram");
    auto roots_src = std::make_shared<SpectrumSource>();
    auto roots_mu = std::make_shared<double>(0.0);
    roots_src->attach(roots_cmd);
    roots_cmd->add_option("--mu", *roots_mu,
                          "Jacobi mass scale (default: m2)");
    roots_cmd->callback(
        [roots_src, roots_mu] { cmd_roots(*roots_src, *roots_mu); });

    auto* group_cmd = app.add_subcommand(
        "group", "generate the reflection group and print its summary");
    auto group_src = std::make_shared<SpectrumSource>();
    auto group_max = std::make_shared<int>(20000);
    auto group_dump = std::make_shared<bool>(false);
    group_src->attach(group_cmd);
    group_cmd->add_option("--max-order", *group_max,
                          "element budget for the closure (default 20000)");
    group_cmd->add_flag("--dump-matrices", *group_dump,
                        "include all element matrices in the output");
    group_cmd->callback([group_src, group_max, group_dump] {
        cmd_group(*group_src, *group_max, *group_dump);
    });

    auto* verify_cmd = app.add_subcommand(
        "verify", "run the full solvability verification suite");
    auto verify_src = std::make_shared<SpectrumSource>();
    auto verify_seed = std::make_shared<std::uint64_t>(42);
    auto verify_threads = std::make_shared<int>(1);
    auto verify_k = std::make_shared<std::string>();
    verify_src->attach(verify_cmd);
    verify_cmd->add_option("--seed", *verify_seed,
                           "RNG seed for the randomized checks (default 42)");
    verify_cmd->add_option("--threads", *verify_threads,
                           "worker threads for batch evaluation (default 1)");
    verify_cmd->add_option(
        "--k", *verify_k,
        "incident wavevector, comma-separated (default: derived from seed)");
    verify_cmd->callback([&exit_code, verify_src, verify_seed, verify_threads,
                          verify_k] {
        exit_code =
            cmd_verify(*verify_src, *verify_seed, *verify_threads, *verify_k);
    });

    auto* density_cmd = app.add_subcommand(
        "density", "export the zero-energy angular density grid as CSV");
    auto density_src = std::make_shared<SpectrumSource>();
    auto density_res = std::make_shared<int>(256);
    auto density_slice = std::make_shared<std::string>();
    auto density_out = std::make_shared<std::string>();
    auto density_threads = std::make_shared<int>(1);
    density_src->attach(density_cmd);
    density_cmd->add_option("--resolution", *density_res,
                            "grid resolution in [16, 4096] (default 256)");
    density_cmd->add_option(
        "--slice", *density_slice,
        "two fixed hypersphere angles for five-body spectra, e.g. 1.2,0.7");
    density_cmd->add_option("--output", *density_out, "output CSV path")
        ->required();
    density_cmd->add_option("--threads", *density_threads,
                            "worker threads (default 1)");
    density_cmd->callback(
        [density_src, density_res, density_slice, density_out, density_threads] {
            cmd_density(*density_src, *density_res, *density_slice,
                        *density_out, *density_threads);
        });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const kaleido::NotKaleidoscopicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const kaleido::ClosureOverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const kaleido::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return exit_code;
}
