#include "mwent/cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <json.hpp>

#include "mwent/errors.h"
#include "mwent/measures.h"
#include "mwent/state_io.h"

namespace mwent::cli {

namespace {

std::string decimal(double value) {
    std::string text = fmt::format("{:.12g}", value);
    if (text.find_first_of(".eEn") == std::string::npos) text += ".0";
    return text;
}

const char *bound_name(BoundConstant c) { return c == BoundConstant::paper ? "paper" : "tight"; }

/// Writes to `path`, or to `fallback` when the path is empty.
template <typename Writer>
void emit(const std::string &path, std::ostream &fallback, Writer &&write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError(fmt::format("cannot open '{}' for writing", path));
    write(file);
    file.flush();
    if (!file) throw IoError(fmt::format("failed writing '{}'", path));
}

}  // namespace

int cmd_sweep(const SweepCommand &command, std::ostream &out, std::ostream &err) {
    try {
        for (int n : command.config.atoms_per_trap) {
            if (n > kDefaultMaxAtoms && !command.allow_large_n) {
                err << fmt::format("error: {} atoms per trap exceeds {}; pass --allow-large-n to override\n", n,
                                   kDefaultMaxAtoms);
                return kValidationFailure;
            }
        }
        SweepConfig config = command.config;
        if (config.r_values.empty()) config.r_values = default_r_values();
        config.validate();

        const SweepResult result = run_sweep(config);
        emit(command.out_path, out, [&](std::ostream &stream) {
            if (command.format == OutputFormat::json) {
                write_json(stream, result.rows);
            } else {
                std::string comment;
                if (command.timestamp) {
                    comment = fmt::format("mwent sweep generated {:%Y-%m-%dT%H:%M:%SZ}",
                                          fmt::gmtime(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now())));
                }
                write_csv(stream, result.rows, comment);
            }
        });
        if (!result.infeasible.empty()) {
            for (const auto &[n, r] : result.infeasible) {
                err << fmt::format("error: N = {}, r = {}: target error {} not reachable below nmax {}\n", n, r,
                                   config.target_error, config.nmax_cap);
            }
            return kBudgetInfeasible;
        }
        return kSuccess;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
}

int cmd_measure(const MeasureCommand &command, std::ostream &out, std::ostream &err) {
    std::optional<PureState> loaded;
    try {
        loaded = read_state_file(command.state_path);
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const ParseError &e) {
        err << fmt::format("error: {}: {}\n", command.state_path, e.what());
        return kParseFailure;
    } catch (const DomainError &e) {
        err << fmt::format("error: {}: {}\n", command.state_path, e.what());
        return kParseFailure;
    }

    const double norm_sq = loaded->norm_squared();
    if (!(std::abs(norm_sq - 1.0) <= 1e-6)) {
        err << fmt::format("error: state norm^2 = {:.12g} is not 1 within 1e-6\n", norm_sq);
        return kValidationFailure;
    }
    if (loaded->mode_count() < 2) {
        err << "error: M-way entanglement needs at least two modes\n";
        return kValidationFailure;
    }
    // Remove the residual normalisation error before analysis.
    std::vector<BasisTerm> terms = loaded->terms();
    for (auto &t : terms) t.amplitude /= std::sqrt(norm_sq);
    const PureState state(loaded->mode_register(), std::move(terms));

    MeasureOptions options;
    options.tolerance = command.tolerance;
    options.bound_constant = command.bound_constant;
    options.with_entropies = true;
    MeasureReport report;
    try {
        report = check_definition_1(state, options);
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    const std::size_t m = state.mode_count();
    const auto offending = report.offending_splits();

    if (command.format == OutputFormat::json) {
        nlohmann::json doc;
        doc["modes"] = m;
        doc["terms"] = state.term_count();
        doc["tolerance"] = report.tolerance;
        doc["m_way_entangled"] = report.is_m_way_entangled;
        doc["e_mbe"] = report.s_all_min ? nlohmann::json(*report.s_all_min) : nlohmann::json(nullptr);
        doc["e_mbe_lower_bound"] = report.e_mbe_lower_bound;
        doc["bound"] = bound_name(report.bound_constant);
        doc["splits"] = nlohmann::json::array();
        for (const auto &rec : report.per_split) {
            doc["splits"].push_back({{"split", rec.split.label()},
                                     {"purity", rec.purity},
                                     {"linear_entropy", rec.linear_entropy},
                                     {"entropy", rec.entropy ? nlohmann::json(*rec.entropy) : nlohmann::json(nullptr)}});
        }
        doc["offending_splits"] = nlohmann::json::array();
        for (const auto &s : offending) doc["offending_splits"].push_back(s.label());
        out << doc.dump(2) << '\n';
        return kSuccess;
    }

    out << fmt::format("state: {} modes, {} terms\n", m, state.term_count());
    out << fmt::format("{:<16} {:>20} {:>20} {:>20}\n", "split", "purity", "linear_entropy", "entropy_bits");
    for (const auto &rec : report.per_split) {
        out << fmt::format("{:<16} {:>20.12g} {:>20.12g} {:>20}\n", rec.split.label(), rec.purity, rec.linear_entropy,
                           rec.entropy ? fmt::format("{:.12g}", *rec.entropy) : std::string("n/a"));
    }
    out << fmt::format("{}-way entangled: {}\n", m, report.is_m_way_entangled ? "true" : "false");
    if (!offending.empty()) {
        std::vector<std::string> labels;
        for (const auto &s : offending) labels.push_back(s.label());
        out << fmt::format("offending splits: {}\n", fmt::join(labels, " "));
    }
    if (report.s_all_min) {
        out << fmt::format("E_MBE = {}\n", decimal(*report.s_all_min));
    } else {
        out << "E_MBE = n/a (reduced states too large to diagonalise)\n";
    }
    out << fmt::format("E_MBE lower bound ({}) = {}\n", bound_name(report.bound_constant),
                       decimal(report.e_mbe_lower_bound));
    out << fmt::format("tolerance = {:.3g}\n", report.tolerance);
    return kSuccess;
}

int cmd_plotscript(const std::string &results_path, const std::string &out_path, std::ostream &out, std::ostream &err) {
    std::vector<SweepRow> rows;
    try {
        std::ifstream in(results_path);
        if (!in) throw IoError(fmt::format("cannot open '{}'", results_path));
        rows = read_sweep_csv(in);
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    } catch (const ParseError &e) {
        err << fmt::format("error: {}: {}\n", results_path, e.what());
        return kParseFailure;
    }
    try {
        const std::string script = make_plot_script(rows);
        emit(out_path, out, [&](std::ostream &stream) { stream << script; });
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kIoFailure;
    }
    return kSuccess;
}

}  // namespace mwent::cli
