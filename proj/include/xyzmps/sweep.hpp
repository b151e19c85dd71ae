#pragma once

// Grid sweeps, figure tables, and the verification driver behind the command
// line tool. Every command writes to a caller-supplied stream and returns an
// exit code: 0 success, 1 a check failed, 2 invalid input.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "xyzmps.hpp"

namespace xyzmps {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidInput = 2 };

struct SweepConfig {
    Sign epsilon = Sign::Plus;
    Sign eta = Sign::Plus;
    double J = 1.0;
    std::vector<int> NList{6};
    double gMin = -2.0;
    double gMax = 2.0;
    /// Number of grid points, endpoints included.
    int gSteps = 9;
    double tolerance = 1e-10;
    bool check = false;
    int workers = 1;

    void validate() const
    {
        if (gSteps < 1) throw InvalidInput("g-steps must be at least 1");
        if (!std::isfinite(gMin) || !std::isfinite(gMax)) throw InvalidInput("g range must be finite");
        if (gMin > gMax) throw InvalidInput("g-min must not exceed g-max");
        if (!std::isfinite(J) || J < 0.0) throw InvalidInput("J must be non-negative");
        if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
        if (workers < 1) throw InvalidInput("workers must be at least 1");
        if (NList.empty()) throw InvalidInput("at least one ring size is required");
        for (int N : NList)
            if (N < 3) throw InvalidInput("ring sizes must be at least 3");
    }

    void require_even_rings_for_eta_minus() const
    {
        if (eta != Sign::Minus) return;
        for (int N : NList)
            if (N % 2 != 0)
                throw InvalidInput("eta = -1 ground state requires even N, got N = " + std::to_string(N));
    }

    void require_max_ring(int cap) const
    {
        for (int N : NList)
            if (N > cap) throw InvalidInput("N = " + std::to_string(N) + " exceeds the cap of " + std::to_string(cap));
    }

    ModelParams params(double g, int N) const { return ModelParams{epsilon, eta, g, J, N}; }
};

/// g_k = (gMin (n-1-k) + gMax k) / (n-1); integer-valued endpoints give exact
/// interior points such as 0 and -1 whenever the spacing allows.
inline std::vector<double> g_grid(const SweepConfig& c)
{
    if (c.gSteps == 1) return {c.gMin};
    std::vector<double> out(c.gSteps);
    const double n = c.gSteps - 1;
    for (int k = 0; k < c.gSteps; ++k) out[k] = (c.gMin * (n - k) + c.gMax * k) / n;
    return out;
}

/// 15 significant digits, '.' decimal separator regardless of locale.
inline std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    std::string s(buf);
    std::replace(s.begin(), s.end(), ',', '.');
    return s;
}

inline std::string csv_row(std::initializer_list<std::string> fields)
{
    std::string line;
    for (const auto& f : fields) {
        if (!line.empty()) line += ',';
        line += f;
    }
    return line + '\n';
}

inline std::string csv_row(const std::vector<double>& values)
{
    std::string line;
    for (double v : values) {
        if (!line.empty()) line += ',';
        line += format_number(v);
    }
    return line + '\n';
}

/// Runs job(0..count-1) on at most `workers` threads and returns the results in
/// index order. The first exception thrown by any job is rethrown.
template <class Result>
std::vector<Result> run_ordered(std::size_t count, int workers, const std::function<Result(std::size_t)>& job)
{
    std::vector<std::optional<Result>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i].emplace(job(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), std::max<std::size_t>(count, 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < n; ++w) pool.emplace_back(worker);
        worker();
    }
    std::vector<Result> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------- sweep

struct SweepRow {
    double g = 0.0;
    int N = 0;
    double u = kNaN, mx = kNaN, Gx = kNaN, Gy = kNaN, Gz = kNaN, C = kNaN;
    std::vector<std::string> mismatches;
};

/// Closed-form row. For eta = -1 the correlators are those of nearest
/// neighbours (second spin on site 2). Fields stay NaN where u is singular.
inline SweepRow sweep_row(const SweepConfig& c, double g, int N)
{
    SweepRow row;
    row.g = g;
    row.N = N;
    if (g != -1.0) {
        const Correlators corr = correlations(c.eta, g, N, 2);
        row.u = u_param(g);
        row.mx = magnetization_x(c.epsilon, g, N);
        row.Gx = corr.Gx;
        row.Gy = corr.Gy;
        row.Gz = corr.Gz;
    }
    row.C = concurrence_closed(g, N);

    if (c.check && N <= 10) {
        const ModelParams p = c.params(g, N);
        const MpsTensors t = mps_matrices(p);
        const PureState s = build_state(t, N).state;
        auto compare = [&](const char* name, double closed, double direct) {
            if (std::isnan(closed)) return;
            if (std::abs(closed - direct) > c.tolerance * std::max(1.0, std::abs(direct)))
                row.mismatches.push_back(std::string(name) + ": closed form " + format_number(closed) + " vs direct " +
                                         format_number(direct));
        };
        compare("mx", row.mx, expectation_one_point(t, sigma_x(), 1, N).real());
        compare("Gx", row.Gx, expectation_two_point(t, sigma_x(), sigma_x(), 2, N).real());
        compare("Gy", row.Gy, expectation_two_point(t, sigma_y(), sigma_y(), 2, N).real());
        compare("Gz", row.Gz, expectation_two_point(t, sigma_z(), sigma_z(), 2, N).real());
        compare("C", row.C, wootters_concurrence(PairDensityMatrix(partial_trace_pair(s, 1, 2))).C);
    }
    return row;
}

inline int cmd_sweep(const SweepConfig& c, std::ostream& out, std::ostream& err)
{
    c.validate();
    c.require_even_rings_for_eta_minus();

    std::vector<std::pair<double, int>> points;
    for (double g : g_grid(c))
        for (int N : c.NList) points.emplace_back(g, N);

    const auto rows = run_ordered<SweepRow>(points.size(), c.workers,
                                            [&](std::size_t i) { return sweep_row(c, points[i].first, points[i].second); });

    out << "g,N,u,mx,Gx,Gy,Gz,C\n";
    int failures = 0;
    for (const SweepRow& r : rows) {
        out << format_number(r.g) << ',' << r.N << ','
            << csv_row({format_number(r.u), format_number(r.mx), format_number(r.Gx), format_number(r.Gy),
                        format_number(r.Gz), format_number(r.C)});
        for (const auto& m : r.mismatches) {
            err << "check failed at g = " << format_number(r.g) << ", N = " << r.N << ": " << m << '\n';
            ++failures;
        }
    }
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- figures

inline const std::vector<int> kFigure1Rings{6, 7, 8, 9, 10, 20, 30, 40, 50};
inline const std::vector<int> kFigure2Rings{6, 10, 20, 50};

/// Columns g, N*C(g/N, N) for each ring, and the large-N limit.
inline int cmd_figure1(const SweepConfig& c, std::ostream& out)
{
    c.validate();
    out << "g";
    for (int N : c.NList) out << ",N" << N;
    out << ",scaling_limit\n";
    const std::vector<double> grid = g_grid(c);
    const auto rows = run_ordered<std::vector<double>>(grid.size(), c.workers, [&](std::size_t i) {
        const double g = grid[i];
        std::vector<double> row{g};
        for (int N : c.NList) row.push_back(N * concurrence_closed(g / N, N));
        row.push_back(scaling_limit(g));
        return row;
    });
    for (const auto& r : rows) out << csv_row(r);
    return kExitOk;
}

/// Finite-N magnetization, its N -> infinity limit, and the reciprocal
/// expression in a separate column.
inline int cmd_figure2(const SweepConfig& c, std::ostream& out)
{
    c.validate();
    out << "g";
    for (int N : c.NList) out << ",mx_N" << N;
    out << ",mx_limit,mx_reciprocal\n";
    const std::vector<double> grid = g_grid(c);
    const auto rows = run_ordered<std::vector<double>>(grid.size(), c.workers, [&](std::size_t i) {
        const double g = grid[i];
        std::vector<double> row{g};
        for (int N : c.NList) row.push_back(g == -1.0 ? kNaN : magnetization_x(c.epsilon, g, N));
        if (g == 0.0) {
            // Both one-sided limits equal eps; only the slope jumps.
            row.push_back(value(c.epsilon));
        } else {
            row.push_back(g == -1.0 ? kNaN : thermodynamic_magnetization(c.epsilon, g));
        }
        row.push_back(reciprocal_thermodynamic_magnetization(c.epsilon, g));
        return row;
    });
    for (const auto& r : rows) out << csv_row(r);
    return kExitOk;
}

// ---------------------------------------------------------------- ed-compare

struct EdRow {
    double g = 0.0;
    int N = 0;
    double energy = 0.0;
    double expected = 0.0;
    double residual = 0.0;
    double overlap = 0.0;
    int degeneracy = 0;
    bool passed = false;
};

inline EdRow ed_row(const SweepConfig& c, double g, int N)
{
    const ModelParams p = c.params(g, N);
    const SpectrumResult spec = dense_spectrum(assemble_chain_H(p, HamiltonianForm::Xyz));
    const MatX Hp = assemble_chain_H(p, HamiltonianForm::Projector);
    const GroundMembership m = ground_membership(Hp, explicit_ground_state(p));
    EdRow r;
    r.g = g;
    r.N = N;
    r.energy = spec.eigenvalues(0);
    r.expected = -N * bond_constant(p);
    r.residual = (Hp * explicit_ground_state(p).amplitudes).norm();
    r.overlap = m.overlapWithGroundSpace;
    r.degeneracy = spec.groundSpaceDim;
    const double tol = c.tolerance;
    r.passed = std::abs(r.energy - r.expected) <= tol * std::max(1.0, std::abs(r.expected)) && r.residual <= tol &&
               r.overlap >= 1.0 - tol;
    return r;
}

inline int cmd_ed_compare(const SweepConfig& c, std::ostream& out, std::ostream& err)
{
    c.validate();
    c.require_max_ring(kMaxDenseSites);
    c.require_even_rings_for_eta_minus();

    std::vector<std::pair<double, int>> points;
    for (double g : g_grid(c))
        for (int N : c.NList) points.emplace_back(g, N);
    const auto rows =
        run_ordered<EdRow>(points.size(), c.workers, [&](std::size_t i) { return ed_row(c, points[i].first, points[i].second); });

    out << "epsilon,eta,J,g,N,ed_energy,expected_energy,residual,overlap,degeneracy,passed\n";
    int failures = 0;
    for (const EdRow& r : rows) {
        out << static_cast<int>(c.epsilon) << ',' << static_cast<int>(c.eta) << ',' << format_number(c.J) << ','
            << format_number(r.g) << ',' << r.N << ',' << format_number(r.energy) << ',' << format_number(r.expected)
            << ',' << format_number(r.residual) << ',' << format_number(r.overlap) << ',' << r.degeneracy << ','
            << (r.passed ? "true" : "false") << '\n';
        if (!r.passed) {
            err << "ed-compare failed at g = " << format_number(r.g) << ", N = " << r.N << '\n';
            ++failures;
        }
    }
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- verify

/// Every operation the verification run must exercise.
inline const std::vector<std::string> kAllOperations{
    "couplings_from_params", "mps_matrices", "check_symmetries",
    "amplitude", "build_state", "transfer_matrix", "transfer_with_operator",
    "expectation_one_point", "expectation_two_point", "explicit_ground_state", "bell_pair_matrices",
    "null_space_k2", "e_vectors", "local_h", "pauli_decompose", "assemble_chain_H",
    "u_param", "magnetization_x", "correlations", "thermodynamic_magnetization", "thermodynamic_correlations",
    "pair_density", "wootters_concurrence", "concurrence_closed", "scaled_concurrence_curve", "scaling_limit",
    "dense_spectrum", "ground_membership", "ground_degeneracy_scan",
    "cmd_verify", "cmd_sweep", "cmd_figure1", "cmd_figure2", "cmd_ed_compare",
};

using Json = nlohmann::ordered_json;

/// Accumulates one JSON record per check.
class CheckLog {
public:
    void pass_or_fail(const std::string& name, std::initializer_list<const char*> ops, Json params, double error,
                      double tolerance)
    {
        for (const char* op : ops) covered_.insert(op);
        Json r;
        r["check"] = name;
        r["ops"] = std::vector<std::string>(ops.begin(), ops.end());
        r["params"] = std::move(params);
        r["error"] = error;
        r["tolerance"] = tolerance;
        r["status"] = error <= tolerance ? "pass" : "fail";
        records_.push_back(std::move(r));
    }

    void skip(const std::string& name, Json params, const std::string& reason)
    {
        Json r;
        r["check"] = name;
        r["params"] = std::move(params);
        r["status"] = "skip";
        r["reason"] = reason;
        records_.push_back(std::move(r));
    }

    void info(const std::string& name, std::initializer_list<const char*> ops, Json data)
    {
        for (const char* op : ops) covered_.insert(op);
        Json r;
        r["check"] = name;
        r["ops"] = std::vector<std::string>(ops.begin(), ops.end());
        r["data"] = std::move(data);
        r["status"] = "info";
        records_.push_back(std::move(r));
    }

    void merge(CheckLog&& other)
    {
        covered_.merge(other.covered_);
        for (auto& r : other.records_) records_.push_back(std::move(r));
    }

    const std::vector<Json>& records() const { return records_; }
    const std::set<std::string>& covered() const { return covered_; }

private:
    std::vector<Json> records_;
    std::set<std::string> covered_;
};

namespace detail {

inline double max_abs(const MatX& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Json params_json(const ModelParams& p)
{
    return Json{{"epsilon", static_cast<int>(p.epsilon)}, {"eta", static_cast<int>(p.eta)}, {"J", p.J}, {"g", p.g}, {"N", p.N}};
}

/// Checks at one grid point; N is the configured ring size.
inline CheckLog verify_point(const SweepConfig& c, double g, int N)
{
    CheckLog log;
    const double tol = c.tolerance;
    const ModelParams p = c.params(g, N);
    const Json pj = params_json(p);
    const double eta = value(p.eta);
    const bool singular = g == -1.0;

    // Couplings and local Hamiltonian.
    const Couplings k = couplings_from_params(p);
    const PauliCoefficients pc = pauli_decompose(local_h(p).H2);
    {
        double err = std::max({std::abs(pc.at(Pauli::X, Pauli::X) - k.Jx), std::abs(pc.at(Pauli::Y, Pauli::Y) - k.Jy),
                               std::abs(pc.at(Pauli::Z, Pauli::Z) - k.Jz), std::abs(pc.at(Pauli::X, Pauli::I) - k.B / 2.0),
                               std::abs(pc.at(Pauli::I, Pauli::X) - k.B / 2.0)});
        for (Pauli a : kPaulis)
            for (Pauli b : kPaulis) {
                const bool family = (a == b && a != Pauli::I) || (a == Pauli::X && b == Pauli::I) ||
                                    (a == Pauli::I && b == Pauli::X) || (a == Pauli::I && b == Pauli::I);
                if (!family) err = std::max(err, std::abs(pc.at(a, b)));
            }
        log.pass_or_fail("coupling_recovery", {"couplings_from_params", "local_h", "pauli_decompose"}, pj, err, tol);
    }

    // Tensors and their symmetries.
    const MpsTensors t = mps_matrices(p);
    {
        const SymmetryReport s = check_symmetries(t, p.epsilon);
        const bool ok = s.spinFlip && s.timeReversal && s.parity.value_or(true);
        log.pass_or_fail("tensor_symmetries", {"mps_matrices", "check_symmetries"}, pj, ok ? 0.0 : 1.0, tol);
    }

    // Two-site null space.
    {
        const NullSpaceProblem ns = null_space_k2(t);
        const EVectors e = e_vectors(p);
        const std::vector<Vec4> ev{e.e1, e.e2};
        const double err = ns.solutions.size() == 2 ? max_abs(span_projector(ns.solutions) - span_projector(ev)) : 1.0;
        log.pass_or_fail("null_space_matches_e_vectors", {"null_space_k2", "e_vectors"}, pj, err, tol);
    }

    // Transfer spectrum against 2(eta +- g), 2(1 +- g).
    const TransferMatrix tm = transfer_matrix(t);
    {
        std::vector<double> want{2 * (eta + g), 2 * (eta - g), 2 * (1 + g), 2 * (1 - g)};
        std::vector<double> got;
        for (Eigen::Index i = 0; i < 4; ++i) got.push_back(tm.eigenvalues()(i).real());
        std::sort(want.begin(), want.end());
        std::sort(got.begin(), got.end());
        double err = 0.0;
        for (int i = 0; i < 4; ++i) err = std::max(err, std::abs(want[i] - got[i]));
        log.pass_or_fail("transfer_spectrum", {"transfer_matrix"}, pj, err, tol * std::max(1.0, 4.0 * (1 + std::abs(g))));
    }

    const bool stateExists = !(p.eta == Sign::Minus && N % 2 != 0);
    if (!stateExists) {
        log.skip("ground_state", pj, "eta = -1 state vanishes on odd rings");
        return log;
    }

    // Trace-formula state versus explicit closed-form state.
    const BuiltState built = build_state(t, N);
    {
        std::vector<int> bits(N, 0);
        for (int s = 0; s < N; s += 3) bits[s] = 1;
        const Complex direct = amplitude(t, bits) / std::sqrt(built.Z);
        const Complex stored = built.state.amplitudes(static_cast<Eigen::Index>(index_of_bits(bits)));
        const double err = std::max(std::abs(direct - stored), std::abs(built.Z - built.ZTransfer) / built.Z);
        log.pass_or_fail("amplitude_and_normalization", {"amplitude", "build_state"}, pj, err, tol);
    }
    const PureState explicitState = explicit_ground_state(p);
    log.pass_or_fail("trace_state_equals_explicit_state", {"explicit_ground_state"}, pj,
                     1.0 - overlap_magnitude(built.state, explicitState), tol);

    // Pair matrices.
    {
        const auto phi = bell_pair_matrices(t);
        double err = (phi[0] + phi[1] - std::sqrt(2.0) * t.A0 * t.A0).norm();
        err = std::max(err, (phi[2] + phi[3] - std::sqrt(2.0) * t.A0 * t.A1).norm());
        if (p.eta == Sign::Minus)
            for (const Mat2& a : phi)
                for (const Mat2& b : phi) err = std::max(err, (a * b - b * a).norm());
        log.pass_or_fail("bell_pair_matrices", {"bell_pair_matrices"}, pj, err, tol * (1.0 + g * g));
    }

    // Direct expectations on the dense state versus transfer-matrix expectations.
    const Complex mxDirect = dense_expectation(built.state, sigma_x(), 1);
    const Complex mxTransfer = expectation_one_point(t, sigma_x(), 1, N);
    log.pass_or_fail("one_point_transfer_vs_dense", {"expectation_one_point", "transfer_with_operator"}, pj,
                     std::abs(mxDirect - mxTransfer), tol);
    const std::array<Mat2, 3> paulis{sigma_x(), sigma_y(), sigma_z()};
    std::array<std::vector<double>, 3> G;
    {
        double err = 0.0;
        for (int r = 2; r <= N; ++r)
            for (int a = 0; a < 3; ++a) {
                const Complex tr = expectation_two_point(t, paulis[a], paulis[a], r, N);
                err = std::max(err, std::abs(tr - dense_expectation(built.state, paulis[a], 1, paulis[a], r)));
                G[a].push_back(tr.real());
            }
        log.pass_or_fail("two_point_transfer_vs_dense", {"expectation_two_point"}, pj, err, tol);
    }

    // Closed forms.
    if (singular) {
        log.skip("closed_form_correlators", pj, "singular parameter");
    } else {
        double err = std::abs(magnetization_x(p.epsilon, g, N) - mxTransfer.real());
        for (int r = 2; r <= N; ++r) {
            const Correlators cf = correlations(p.eta, g, N, r);
            err = std::max({err, std::abs(cf.Gx - G[0][r - 2]), std::abs(cf.Gy - G[1][r - 2]), std::abs(cf.Gz - G[2][r - 2])});
        }
        log.pass_or_fail("closed_form_correlators", {"magnetization_x", "correlations"}, pj, err, tol);

        const ObservableRecord o = observables(p.epsilon, g, N);
        const double ident = std::max(std::abs(o.Gx + o.Gy + o.Gz - 1.0), std::abs((1 - o.Gz) * (1 - o.Gy) - o.mx * o.mx));
        log.pass_or_fail("correlator_identities", {"u_param", "correlations"}, pj, ident, tol);
    }

    // Pair entanglement.
    if (N >= 4) {
        double err = 0.0, distErr = 0.0, closedErr = 0.0;
        const double c12 = wootters_concurrence(pair_density(p, 1, 2)).C;
        for (int j = 2; j <= N; ++j) {
            const PairDensityMatrix rho = pair_density(p, 1, j);
            err = std::max(err, max_abs(rho.matrix() - partial_trace_pair(built.state, 1, j)));
            distErr = std::max(distErr, std::abs(wootters_concurrence(rho).C - c12));
        }
        closedErr = std::abs(c12 - concurrence_closed(g, N));
        log.pass_or_fail("pair_density_vs_partial_trace", {"pair_density"}, pj, err, tol);
        log.pass_or_fail("concurrence_distance_independent", {"wootters_concurrence"}, pj, distErr, tol);
        log.pass_or_fail("concurrence_closed_vs_wootters", {"concurrence_closed", "wootters_concurrence"}, pj, closedErr, tol);
    }

    // Hamiltonians and exact diagonalization.
    if (N <= kMaxDenseSites) {
        const MatX Hp = assemble_chain_H(p, HamiltonianForm::Projector);
        const MatX H1 = assemble_chain_H(p, HamiltonianForm::Xyz);
        const double scale = std::max(1.0, max_abs(H1));
        log.pass_or_fail("projector_annihilates_state", {"assemble_chain_H"}, pj, (Hp * built.state.amplitudes).norm(), tol * scale);
        const double shift = static_cast<double>(N) * bond_constant(p);
        log.pass_or_fail("xyz_equals_shifted_projector", {"assemble_chain_H"}, pj,
                         max_abs(H1 - (Hp - shift * MatX::Identity(H1.rows(), H1.cols()))), tol * scale);
        const SpectrumResult spec = dense_spectrum(H1);
        log.pass_or_fail("ed_ground_energy", {"dense_spectrum"}, pj, std::abs(spec.eigenvalues(0) + shift), tol * scale);
        const GroundMembership m = ground_membership(H1, built.state, spec);
        log.pass_or_fail("state_in_ground_space", {"ground_membership"}, pj, 1.0 - m.overlapWithGroundSpace, tol);

        ModelParams flipped = p;
        flipped.epsilon = flip(p.epsilon);
        const auto zs = sigma_z_unitaries(N);
        log.pass_or_fail("epsilon_map", {"assemble_chain_H"}, pj,
                         max_abs(assemble_chain_H(flipped, HamiltonianForm::Xyz) - conjugate_by_site_unitaries(H1, zs)),
                         tol * scale);
        if (N % 2 == 0) {
            ModelParams plus = p, minus = p;
            plus.eta = Sign::Plus;
            minus.eta = Sign::Minus;
            const MatX rotated = conjugate_by_site_unitaries(assemble_chain_H(plus, HamiltonianForm::Xyz), eta_rotation_unitaries(N));
            log.pass_or_fail("eta_map", {"assemble_chain_H"}, pj, max_abs(assemble_chain_H(minus, HamiltonianForm::Xyz) - rotated),
                             tol * scale);
        }
    }
    return log;
}

/// Checks that do not depend on the grid point.
inline CheckLog verify_global(const SweepConfig& c)
{
    CheckLog log;
    const double tol = c.tolerance;

    // det(M) against 16 b^2 c^2 (a-d)^2 (a+d)^2 for reproducible random tensors.
    {
        std::mt19937_64 rng(20240607);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        double err = 0.0;
        for (int trial = 0; trial < 20; ++trial) {
            const double a = dist(rng), b = dist(rng), cc = dist(rng), d = dist(rng);
            const GeneralForm f{a, b, cc, d};
            const double closed = 16.0 * b * b * cc * cc * (a - d) * (a - d) * (a + d) * (a + d);
            const Complex numeric = null_space_k2(general_tensors(f, c.epsilon)).M.determinant();
            const double scale = std::max(1e-300, std::abs(closed));
            err = std::max({err, std::abs(numeric - closed) / scale, std::abs(null_space_determinant(f) - closed) / scale});
        }
        log.pass_or_fail("null_space_determinant", {"null_space_k2"}, Json::object(), err, tol);
    }

    // Worked point g = 1/3, N = 4, where u = 1/2.
    {
        const double g = 1.0 / 3.0;
        const Correlators cf = correlations(g, 4);
        const double err = std::max({std::abs(u_param(g) - 0.5), std::abs(magnetization_x(c.epsilon, g, 4) - value(c.epsilon) * 10.0 / 17.0),
                                     std::abs(cf.Gx - 8.0 / 17.0), std::abs(cf.Gy + 3.0 / 17.0), std::abs(cf.Gz - 12.0 / 17.0)});
        log.pass_or_fail("worked_point", {"u_param", "magnetization_x", "correlations"}, Json{{"g", g}, {"N", 4}}, err, tol);
    }

    // Large-N convergence towards the thermodynamic limit, away from g = 0.
    for (double g : {-2.0, -0.5, 0.5, 2.0}) {
        const Correlators lim = thermodynamic_correlations(g);
        const Correlators fin = correlations(g, 4000);
        const double err = std::max({std::abs(magnetization_x(c.epsilon, g, 4000) - thermodynamic_magnetization(c.epsilon, g)),
                                     std::abs(lim.Gx - fin.Gx), std::abs(lim.Gy - fin.Gy), std::abs(lim.Gz - fin.Gz)});
        log.pass_or_fail("thermodynamic_limit", {"thermodynamic_magnetization", "thermodynamic_correlations"},
                         Json{{"g", g}, {"N", 4000}}, err, tol);
    }
    {
        const DiscontinuityReport d = thermodynamic_discontinuity(c.epsilon);
        log.info("g0_discontinuity", {"thermodynamic_magnetization", "thermodynamic_correlations"},
                 Json{{"mx_left", d.mxLeft},
                      {"mx_right", d.mxRight},
                      {"dmx_left", d.dmxLeft},
                      {"dmx_right", d.dmxRight},
                      {"reciprocal_at_0.5", reciprocal_thermodynamic_magnetization(c.epsilon, 0.5)},
                      {"limit_at_0.5", thermodynamic_magnetization(c.epsilon, 0.5)}});
    }

    // Scaling of the concurrence.
    {
        const std::vector<double> grid{0.5, 1.0, 2.0};
        const auto curve = scaled_concurrence_curve(10000, grid);
        double err = 0.0;
        for (const auto& [g, v] : curve) err = std::max(err, std::abs(v - scaling_limit(g)) / scaling_limit(g));
        log.pass_or_fail("scaled_concurrence_limit", {"scaled_concurrence_curve", "scaling_limit"}, Json{{"N", 10000}}, err, 1e-3);
    }

    // Ground-space dimension along a short grid.
    {
        const int N = std::min(c.NList.front(), 8);
        ModelParams p = c.params(0.5, N % 2 == 0 ? N : N + 1);
        const std::vector<double> grid{-0.5, 0.5, 1.5};
        const auto scan = ground_degeneracy_scan(p, grid);
        int worst = 0;
        for (const auto& [g, dim] : scan) worst = std::max(worst, std::abs(dim - 2));
        log.pass_or_fail("ground_degeneracy_scan", {"ground_degeneracy_scan"}, Json{{"N", p.N}}, worst, 0.0);
    }
    return log;
}

/// Runs the other commands on small configurations and checks their output.
inline CheckLog verify_commands(const SweepConfig& c)
{
    CheckLog log;
    std::ostringstream sink, errs;

    SweepConfig s = c;
    s.NList = {8};
    s.eta = Sign::Plus;
    s.gMin = 0.0;
    s.gMax = 2.0;
    s.gSteps = 5;
    s.check = true;
    std::ostringstream sweepOut;
    const int sweepCode = cmd_sweep(s, sweepOut, errs);
    log.pass_or_fail("cmd_sweep_cross_check", {"cmd_sweep"}, Json{{"N", 8}}, sweepCode == kExitOk ? 0.0 : 1.0, 0.0);

    SweepConfig f1 = c;
    f1.NList = kFigure1Rings;
    f1.gMin = 0.0;
    f1.gMax = 2.0;
    f1.gSteps = 5;
    std::ostringstream fig1;
    cmd_figure1(f1, fig1);
    {
        // Rows after the header: columns must decrease with N for g > 0 and vanish at g = 0.
        std::istringstream in(fig1.str());
        std::string line;
        std::getline(in, line);
        double bad = 0.0;
        while (std::getline(in, line)) {
            std::vector<double> v;
            std::stringstream ls(line);
            for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
            if (v[0] == 0.0) {
                for (double x : v) bad = std::max(bad, std::abs(x));
            } else {
                for (std::size_t i = 2; i + 1 < v.size(); ++i) bad = std::max(bad, v[i] - v[i - 1] > 0 ? 1.0 : 0.0);
            }
        }
        log.pass_or_fail("cmd_figure1_ordering", {"cmd_figure1"}, Json::object(), bad, 0.0);
    }

    SweepConfig f2 = c;
    f2.NList = kFigure2Rings;
    f2.gMin = -1.0;
    f2.gMax = 1.0;
    f2.gSteps = 5;
    std::ostringstream fig2;
    cmd_figure2(f2, fig2);
    {
        // Middle row is g = 0, where every finite-N column equals eps.
        std::istringstream in(fig2.str());
        std::string line;
        for (int i = 0; i < 4; ++i) std::getline(in, line);
        std::stringstream ls(line);
        std::vector<double> v;
        for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
        double err = std::abs(v[0]);
        for (std::size_t i = 1; i <= kFigure2Rings.size(); ++i) err = std::max(err, std::abs(v[i] - value(c.epsilon)));
        log.pass_or_fail("cmd_figure2_g0_row", {"cmd_figure2"}, Json::object(), err, c.tolerance);
    }

    SweepConfig ed = c;
    ed.NList = {4};
    ed.gMin = -0.5;
    ed.gMax = 1.5;
    ed.gSteps = 3;
    const int edCode = cmd_ed_compare(ed, sink, errs);
    log.pass_or_fail("cmd_ed_compare", {"cmd_ed_compare"}, Json{{"N", 4}}, edCode == kExitOk ? 0.0 : 1.0, 0.0);
    return log;
}

} // namespace detail

/// JSON lines to `out`, a short human-readable summary to `err`.
inline int cmd_verify(const SweepConfig& c, std::ostream& out, std::ostream& err)
{
    c.validate();
    c.require_max_ring(kMaxDenseSites);
    c.require_even_rings_for_eta_minus();

    std::vector<std::pair<double, int>> points;
    for (double g : g_grid(c))
        for (int N : c.NList) points.emplace_back(g, N);

    // Jobs: one per grid point, then the global and command checks.
    const std::size_t count = points.size() + 2;
    auto logs = run_ordered<CheckLog>(count, c.workers, [&](std::size_t i) {
        if (i < points.size()) return detail::verify_point(c, points[i].first, points[i].second);
        return i == points.size() ? detail::verify_global(c) : detail::verify_commands(c);
    });

    CheckLog all;
    for (auto& l : logs) all.merge(std::move(l));
    all.info("cmd_verify", {"cmd_verify"}, Json{{"grid_points", points.size()}});

    std::vector<std::string> missing;
    for (const auto& op : kAllOperations)
        if (!all.covered().contains(op)) missing.push_back(op);

    int passed = 0, failed = 0, skipped = 0;
    for (const Json& r : all.records()) {
        out << r.dump() << '\n';
        const std::string status = r["status"];
        if (status == "pass") ++passed;
        if (status == "fail") {
            ++failed;
            err << "FAIL " << r["check"].get<std::string>() << ' ' << r["params"].dump() << " error " << r["error"].dump() << '\n';
        }
        if (status == "skip") ++skipped;
    }
    Json coverage;
    coverage["check"] = "coverage";
    coverage["required"] = kAllOperations.size();
    coverage["covered"] = std::vector<std::string>(all.covered().begin(), all.covered().end());
    coverage["missing"] = missing;
    coverage["status"] = missing.empty() ? "pass" : "fail";
    out << coverage.dump() << '\n';

    err << "verify: " << passed << " passed, " << failed << " failed, " << skipped << " skipped; coverage "
        << all.covered().size() << '/' << kAllOperations.size() << " operations\n";
    return failed == 0 && missing.empty() ? kExitOk : kExitCheckFailed;
}

} // namespace xyzmps
