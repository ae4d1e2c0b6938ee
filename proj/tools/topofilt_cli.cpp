// topofilt: run LTI filters as sheaves over line complexes.
//
// Exit codes: 0 success, 1 verification failure or tolerance breach,
// 2 parse/I/O error, 3 shape or precondition error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topofilt/topofilt.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kParse = 2;
constexpr int kShape = 3;

int exit_code_for(topofilt::Errc code) {
    using topofilt::Errc;
    switch (code) {
    case Errc::ParseError:
    case Errc::InvalidCoefficient:
    case Errc::EmptyFilter:
    case Errc::DegenerateFilter:
    case Errc::InvalidSignal:
    case Errc::InvalidMetric:
        return kParse;
    default:
        return kShape;
    }
}

topofilt::SheafDiagram<double> load_diagram(const std::string& path) {
    return topofilt::polezero_maps(topofilt::io::read_coefficients(path));
}

void print_report(const topofilt::ViolationReport<double>& report) {
    for (const auto& v : report.violations) {
        std::cout << "violation e" << v.edge << ' ' << (v.side == topofilt::Side::Left ? "left" : "right")
                  << " max_abs_residual " << topofilt::io::format_number(v.max_abs_residual) << " residual";
        for (const double r : v.residual) {
            std::cout << ' ' << topofilt::io::format_number(r);
        }
        std::cout << '\n';
    }
}

struct RunOptions {
    std::string filter;
    std::string input;
    std::string output;
    std::string init;
    std::string emit_section;
    double tol = 0.0;
};

int cmd_run(const RunOptions& opt) {
    const auto diagram = load_diagram(opt.filter);
    const auto input = topofilt::io::read_signal(opt.input);
    std::optional<std::vector<double>> init;
    if (!opt.init.empty()) {
        init = topofilt::io::read_signal(opt.init);
    }
    const auto result = init ? topofilt::run_filter<double>(diagram, input, std::span<const double>(*init))
                             : topofilt::run_filter<double>(diagram, input);
    topofilt::io::write_signal(opt.output, result.output);
    if (!opt.emit_section.empty()) {
        topofilt::io::write_section(opt.emit_section, result.section);
    }
    const auto report = topofilt::verify_section(diagram, result.section, opt.tol);
    if (!report.consistent()) {
        print_report(report);
        return kFailed;
    }
    return kOk;
}

int cmd_impulse(const std::string& filter, std::size_t length, const std::string& output) {
    const auto diagram = load_diagram(filter);
    topofilt::io::write_signal(output, topofilt::impulse_response(diagram, length));
    return kOk;
}

int cmd_verify(const std::string& filter, const std::string& section_path, double tol) {
    const auto diagram = load_diagram(filter);
    const auto section = topofilt::io::read_section(section_path);
    const auto report = topofilt::verify_section(diagram, section, tol);
    if (report.consistent()) {
        std::cout << "consistent\n";
        return kOk;
    }
    print_report(report);
    std::cout << "inconsistent: " << report.violations.size() << " violation(s)\n";
    return kFailed;
}

int cmd_compare(const std::string& filter, const std::string& input_path, const std::string& against, double rel_tol,
                double abs_tol) {
    const auto coeffs = topofilt::io::read_coefficients(filter);
    const auto input = topofilt::io::read_signal(input_path);
    const bool want_oracle = against == "oracle" || against == "both";
    const bool want_state_space = against == "statespace" || against == "both";
    // Build the state-space model first so a NoState precondition fails before any output.
    std::optional<topofilt::StateSpaceModel<double>> model;
    if (want_state_space) {
        model = topofilt::state_space(coeffs);
    }
    const auto sheaf = topofilt::run_filter<double>(topofilt::polezero_maps(coeffs), input).output;
    bool ok = true;
    auto report = [&](const char* name, const std::vector<double>& reference) {
        const auto dev = topofilt::compare<double>(sheaf, reference, rel_tol, abs_tol);
        std::cout << name << " max_abs " << topofilt::io::format_number(dev.max_abs) << " max_rel "
                  << topofilt::io::format_number(dev.max_rel) << ' ' << (dev.passed ? "pass" : "FAIL") << '\n';
        ok = ok && dev.passed;
    };
    if (want_oracle) {
        report("oracle", topofilt::direct_form_oracle<double>(coeffs, input));
    }
    if (model) {
        report("statespace", topofilt::run_state_space<double>(*model, input));
    }
    return ok ? kOk : kFailed;
}

int cmd_info(const std::string& filter) {
    topofilt::io::describe(std::cout, load_diagram(filter));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical LTI filters realized as sheaves over line complexes"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Run a filter over a signal");
    run->add_option("filter", run_opt.filter, "Coefficient file")->required();
    run->add_option("input", run_opt.input, "Input signal CSV")->required();
    run->add_option("output", run_opt.output, "Output signal CSV")->required();
    run->add_option("--init", run_opt.init, "Initial state CSV (N+1 values)");
    run->add_option("--emit-section", run_opt.emit_section, "Write the state section to this file");
    run->add_option("--tol", run_opt.tol, "Tolerance for the self-check of the produced section");

    std::string imp_filter;
    std::string imp_output;
    std::size_t imp_length = 0;
    auto* impulse = app.add_subcommand("impulse", "Write the impulse response");
    impulse->add_option("filter", imp_filter, "Coefficient file")->required();
    impulse->add_option("length", imp_length, "Number of samples")->required()->check(CLI::PositiveNumber);
    impulse->add_option("output", imp_output, "Output signal CSV")->required();

    std::string ver_filter;
    std::string ver_section;
    double ver_tol = 1e-9;
    auto* verify = app.add_subcommand("verify", "Check a section against the gluing conditions");
    verify->add_option("filter", ver_filter, "Coefficient file")->required();
    verify->add_option("section", ver_section, "Section file")->required();
    verify->add_option("--tol", ver_tol, "Absolute tolerance on the infinity norm")->capture_default_str();

    std::string cmp_filter;
    std::string cmp_input;
    std::string cmp_against = "oracle";
    double cmp_rel = 1e-9;
    double cmp_abs = 0.0;
    auto* cmp = app.add_subcommand("compare", "Compare the sheaf run against classical evaluations");
    cmp->add_option("filter", cmp_filter, "Coefficient file")->required();
    cmp->add_option("input", cmp_input, "Input signal CSV")->required();
    cmp->add_option("--against", cmp_against, "Reference path")
        ->check(CLI::IsMember({"oracle", "statespace", "both"}))
        ->capture_default_str();
    cmp->add_option("--rel-tol", cmp_rel, "Peak-relative tolerance")->capture_default_str();
    cmp->add_option("--abs-tol", cmp_abs, "Absolute tolerance")->capture_default_str();

    std::string info_filter;
    auto* info = app.add_subcommand("info", "Print stalk dimensions and sheaf maps");
    info->add_option("filter", info_filter, "Coefficient file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kParse;
    }

    try {
        if (*run) {
            return cmd_run(run_opt);
        }
        if (*impulse) {
            return cmd_impulse(imp_filter, imp_length, imp_output);
        }
        if (*verify) {
            return cmd_verify(ver_filter, ver_section, ver_tol);
        }
        if (*cmp) {
            return cmd_compare(cmp_filter, cmp_input, cmp_against, cmp_rel, cmp_abs);
        }
        if (*info) {
            return cmd_info(info_filter);
        }
    } catch (const topofilt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    }
    return kOk;
}
