#pragma once

// Command line front end: argument parsing with CLI11, output redirection, and
// the mapping from errors to exit codes.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sweep.hpp"

namespace xyzmps {

namespace detail {

inline Sign parse_sign(const std::string& s)
{
    if (s == "1" || s == "+1" || s == "+") return Sign::Plus;
    if (s == "-1" || s == "-") return Sign::Minus;
    throw CLI::ValidationError("sign", "expected +1 or -1, got '" + s + "'");
}

struct CommandOptions {
    SweepConfig config;
    std::string epsilon = "+1";
    std::string eta = "+1";
    int n = 0;
    std::string nList;
    std::string output;
};

inline CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description, CommandOptions& o,
                             bool withCheck)
{
    CLI::App* sub = app.add_subcommand(name, description);
    std::string rings;
    for (int N : o.config.NList) rings += (rings.empty() ? "" : ",") + std::to_string(N);
    sub->add_option("--epsilon", o.epsilon, "sign of the field term, +1 or -1")->capture_default_str();
    sub->add_option("--eta", o.eta, "model class sign, +1 or -1")->capture_default_str();
    sub->add_option("--j", o.config.J, "isotropic coupling J >= 0")->capture_default_str();
    auto* nOpt = sub->add_option("--n", o.n, "single ring size");
    sub->add_option("--n-list", o.nList, "comma-separated ring sizes (default " + rings + ")")->excludes(nOpt);
    sub->add_option("--g-min", o.config.gMin, "first grid value of g")->capture_default_str();
    sub->add_option("--g-max", o.config.gMax, "last grid value of g")->capture_default_str();
    sub->add_option("--g-steps", o.config.gSteps, "number of grid points, endpoints included")->capture_default_str();
    sub->add_option("--output", o.output, "write results to this file instead of standard output");
    sub->add_option("--tolerance", o.config.tolerance, "absolute tolerance of every check")->capture_default_str();
    sub->add_option("--workers", o.config.workers, "size of the worker pool")->capture_default_str();
    if (withCheck) sub->add_flag("--check", o.config.check, "cross-check closed forms against the built state for N <= 10");
    return sub;
}

inline std::vector<int> parse_int_list(const std::string& csv)
{
    std::vector<int> out;
    std::stringstream ss(csv);
    for (std::string cell; std::getline(ss, cell, ',');) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(cell, &used);
        } catch (const std::exception&) {
            throw InvalidInput("bad ring size '" + cell + "' in --n-list");
        }
        if (used != cell.size()) throw InvalidInput("bad ring size '" + cell + "' in --n-list");
        out.push_back(v);
    }
    if (out.empty()) throw InvalidInput("--n-list is empty");
    return out;
}

inline void finalize(CommandOptions& o)
{
    o.config.epsilon = parse_sign(o.epsilon);
    o.config.eta = parse_sign(o.eta);
    if (o.n != 0) o.config.NList = {o.n};
    if (!o.nList.empty()) o.config.NList = parse_int_list(o.nList);
}

} // namespace detail

/// args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact matrix-product ground states of XYZ rings in a field: checks, sweeps and figure tables"};
    app.set_config("--config", "", "read options from a TOML/INI file; command line flags take precedence");
    app.require_subcommand(1);

    detail::CommandOptions verify, sweep, fig1, fig2, ed;
    verify.config.NList = {6};
    sweep.config.NList = {8};
    sweep.config.gMin = 0.0;
    sweep.config.gSteps = 21;
    fig1.config.NList = kFigure1Rings;
    fig1.config.gMin = 0.0;
    fig1.config.gMax = 3.0;
    fig1.config.gSteps = 61;
    fig2.config.NList = kFigure2Rings;
    fig2.config.gMin = -3.0;
    fig2.config.gMax = 3.0;
    fig2.config.gSteps = 121;
    ed.config.NList = {6};

    auto* verifyCmd = detail::add_command(app, "verify", "run every check on the grid and report JSON lines", verify, false);
    auto* sweepCmd = detail::add_command(app, "sweep", "closed-form observables on a (g, N) grid as CSV", sweep, true);
    auto* fig1Cmd = detail::add_command(app, "figure1", "scaled concurrence N C(g/N, N) per ring size as CSV", fig1, false);
    auto* fig2Cmd = detail::add_command(app, "figure2", "magnetization along x versus g as CSV", fig2, false);
    auto* edCmd = detail::add_command(app, "ed-compare", "exact diagonalization against the exact ground energy", ed, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalidInput;
    }

    detail::CommandOptions* chosen = nullptr;
    if (verifyCmd->parsed()) chosen = &verify;
    if (sweepCmd->parsed()) chosen = &sweep;
    if (fig1Cmd->parsed()) chosen = &fig1;
    if (fig2Cmd->parsed()) chosen = &fig2;
    if (edCmd->parsed()) chosen = &ed;

    try {
        detail::finalize(*chosen);
        std::ofstream file;
        if (!chosen->output.empty()) {
            file.open(chosen->output, std::ios::binary | std::ios::trunc);
            if (!file) throw InvalidInput("cannot open output file '" + chosen->output + "'");
        }
        std::ostream& sink = chosen->output.empty() ? out : file;
        const SweepConfig& c = chosen->config;

        int code = kExitOk;
        if (chosen == &verify) code = cmd_verify(c, sink, err);
        if (chosen == &sweep) code = cmd_sweep(c, sink, err);
        if (chosen == &fig1) code = cmd_figure1(c, sink);
        if (chosen == &fig2) code = cmd_figure2(c, sink);
        if (chosen == &ed) code = cmd_ed_compare(c, sink, err);
        sink.flush();
        if (!sink) throw InvalidInput("failed writing output");
        return code;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const SingularParameter& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCheckFailed;
    }
}

} // namespace xyzmps
