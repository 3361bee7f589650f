#include "mwent/sweep.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "mwent/com_reduction.h"
#include "mwent/errors.h"
#include "mwent/split.h"
#include "mwent/states.h"
#include "mwent/truncation.h"

namespace mwent {

void SweepConfig::validate() const {
    if (atoms_per_trap.empty()) throw DomainError("sweep needs at least one atom count");
    for (int n : atoms_per_trap) {
        if (n < 1) throw DomainError(fmt::format("atoms per trap must be >= 1, got {}", n));
    }
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        if (!std::isfinite(r_values[i]) || r_values[i] < 0.0) {
            throw DomainError(fmt::format("r values must be finite and non-negative, got {}", r_values[i]));
        }
        if (i > 0 && !(r_values[i] > r_values[i - 1])) throw DomainError("r values must be strictly increasing");
    }
    if (!(target_error > 0.0)) throw DomainError("target error must be positive");
    if (nmax_override && *nmax_override < 0) throw DomainError("nmax must be non-negative");
    if (nmax_cap < 0) throw DomainError("nmax cap must be non-negative");
}

std::vector<double> default_r_values() {
    std::vector<double> r;
    for (int k = 0; k <= 15; ++k) r.push_back(k / 10.0);
    return r;
}

std::string atom_label(std::size_t atoms_per_trap, const std::vector<std::size_t> &traced_modes) {
    std::string label;
    for (auto m : traced_modes) {
        label += m < atoms_per_trap ? fmt::format("a{}", m + 1) : fmt::format("b{}", m - atoms_per_trap + 1);
    }
    return label;
}

std::string cut_label(int traced_first, int traced_second) { return fmt::format("T{}V{}", traced_first, traced_second); }

namespace {

struct PointTask {
    int atoms = 0;
    double r = 0.0;
};

SweepRow evaluate_point(const SweepConfig &config, const PointTask &task) {
    const int n = task.atoms;
    const double r = task.r;
    const auto classes = symmetry_classes(n);
    const PurityProbe probe = [&](int nmax) {
        std::vector<double> out;
        out.reserve(classes.size());
        for (const auto &cut : classes) out.push_back(com_purity({r, n, nmax}, cut));
        return out;
    };

    SweepRow row;
    row.r = r;
    row.atoms_per_trap = n;
    if (config.nmax_override) {
        row.nmax = *config.nmax_override;
        row.convergence_gap = convergence_gap(probe, row.nmax);
    } else {
        TruncationBudget budget{config.target_error, config.nmax_cap};
        row.nmax = select_nmax(r, budget, probe).nmax;
        row.convergence_gap = convergence_gap(probe, row.nmax);
        // The recorded certificate must sit well inside the budget.
        while (row.convergence_gap >= config.target_error / 2.0) {
            if (++row.nmax > config.nmax_cap) {
                throw BudgetInfeasible(fmt::format("r = {}: convergence certificate not met below nmax cap {}", r,
                                                   config.nmax_cap),
                                       r);
            }
            row.convergence_gap = convergence_gap(probe, row.nmax);
        }
    }
    row.tail = tail_weight(r, row.nmax);

    if (config.use_symmetry) {
        for (const auto &cut : classes) {
            row.split_labels.push_back(cut_label(cut.first, cut.second));
            row.purities.push_back(com_purity({r, n, row.nmax}, cut));
        }
    } else {
        const PureState state = build_psi_cm({r, n, row.nmax});
        for (const auto &split : enumerate_splits(state.mode_register(), false)) {
            std::vector<std::size_t> traced(split.traced_modes().begin(), split.traced_modes().end());
            row.split_labels.push_back(atom_label(static_cast<std::size_t>(n), traced));
            row.purities.push_back(purity(state, split));
        }
    }

    const double max_purity = *std::ranges::max_element(row.purities);
    row.s_l_min = 1.0 - max_purity;
    row.e_mbe_lower_bound = std::max(0.0, entropy_lower_bound(row.s_l_min, config.bound_constant));
    // Covers both the purities and the bound derived from them.
    const double purity_error = purity_error_estimate(row.tail, row.convergence_gap);
    row.truncation_error = std::max(purity_error, entropy_lower_bound(purity_error, config.bound_constant));
    return row;
}

}  // namespace

SweepResult run_sweep(const SweepConfig &input) {
    SweepConfig config = input;
    if (config.r_values.empty()) config.r_values = default_r_values();
    config.validate();

    std::vector<PointTask> tasks;
    for (int n : config.atoms_per_trap) {
        for (double r : config.r_values) tasks.push_back({n, r});
    }
    std::ranges::sort(tasks, [](const PointTask &a, const PointTask &b) {
        return std::pair{a.atoms, a.r} < std::pair{b.atoms, b.r};
    });

    std::vector<std::optional<SweepRow>> rows(tasks.size());
    std::vector<bool> infeasible(tasks.size(), false);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                rows[i] = evaluate_point(config, tasks[i]);
            } catch (const BudgetInfeasible &) {
                infeasible[i] = true;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const auto threads = static_cast<std::size_t>(std::max(1, config.threads));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < std::min(threads, tasks.size()); ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    SweepResult result;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (rows[i]) {
            result.rows.push_back(std::move(*rows[i]));
        } else if (infeasible[i]) {
            result.infeasible.emplace_back(tasks[i].atoms, tasks[i].r);
        }
    }
    return result;
}

void write_csv(std::ostream &out, const std::vector<SweepRow> &rows, const std::string &comment) {
    if (!comment.empty()) out << "# " << comment << '\n';
    out << kCsvHeader << '\n';
    for (const auto &row : rows) {
        std::vector<std::string> purities;
        purities.reserve(row.purities.size());
        for (double p : row.purities) purities.push_back(fmt::format("{:.12g}", p));
        out << fmt::format("{:.12g},{},{},{:.12g},{},{},{:.12g},{:.12g},{:.12g},{:.12g}\n", row.r, row.atoms_per_trap,
                           row.nmax, row.tail, fmt::join(row.split_labels, ";"), fmt::join(purities, ";"),
                           row.s_l_min, row.e_mbe_lower_bound, row.truncation_error, row.convergence_gap);
    }
}

void write_json(std::ostream &out, const std::vector<SweepRow> &rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto &row : rows) {
        doc.push_back({{"r", row.r},
                       {"n_atoms", row.atoms_per_trap},
                       {"nmax", row.nmax},
                       {"tail", row.tail},
                       {"split_class", row.split_labels},
                       {"purity", row.purities},
                       {"s_l_min", row.s_l_min},
                       {"e_mbe_lower_bound", row.e_mbe_lower_bound},
                       {"truncation_error", row.truncation_error},
                       {"convergence_gap", row.convergence_gap}});
    }
    out << doc.dump(2) << '\n';
}

namespace {

std::vector<std::string> split_on(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, sep)) out.push_back(field);
    if (!text.empty() && text.back() == sep) out.emplace_back();
    return out;
}

template <typename T>
T parse_field(const std::string &token, std::size_t line, const char *name) {
    T value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(fmt::format("line {}: bad {} '{}'", line, name, token), line);
    }
    return value;
}

}  // namespace

std::vector<SweepRow> read_sweep_csv(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!have_header) {
            if (line != kCsvHeader) throw ParseError(fmt::format("line {}: not a sweep results header", line_no), line_no);
            have_header = true;
            continue;
        }
        auto fields = split_on(line, ',');
        if (fields.size() != 10) {
            throw ParseError(fmt::format("line {}: expected 10 fields, got {}", line_no, fields.size()), line_no);
        }
        SweepRow row;
        row.r = parse_field<double>(fields[0], line_no, "r");
        row.atoms_per_trap = parse_field<int>(fields[1], line_no, "n_atoms");
        row.nmax = parse_field<int>(fields[2], line_no, "nmax");
        row.tail = parse_field<double>(fields[3], line_no, "tail");
        row.split_labels = split_on(fields[4], ';');
        for (const auto &p : split_on(fields[5], ';')) row.purities.push_back(parse_field<double>(p, line_no, "purity"));
        if (row.split_labels.size() != row.purities.size()) {
            throw ParseError(fmt::format("line {}: {} split classes but {} purities", line_no, row.split_labels.size(),
                                         row.purities.size()),
                             line_no);
        }
        row.s_l_min = parse_field<double>(fields[6], line_no, "s_l_min");
        row.e_mbe_lower_bound = parse_field<double>(fields[7], line_no, "e_mbe_lower_bound");
        row.truncation_error = parse_field<double>(fields[8], line_no, "truncation_error");
        row.convergence_gap = parse_field<double>(fields[9], line_no, "convergence_gap");
        rows.push_back(std::move(row));
    }
    if (!have_header) throw ParseError("no sweep results header found", line_no);
    if (rows.empty()) throw ParseError("sweep results contain no data rows", line_no);
    return rows;
}

std::string make_plot_script(const std::vector<SweepRow> &rows) {
    std::map<int, std::vector<std::pair<double, double>>> curves;
    for (const auto &row : rows) curves[row.atoms_per_trap].emplace_back(row.r, row.e_mbe_lower_bound);

    std::string script =
        "#!/usr/bin/env python3\n"
        "# Lower bound on the entanglement of minimum bipartite entropy against r.\n"
        "# Generated by `mwent plotscript`; points are joined by straight lines.\n"
        "import sys\n\n"
        "import matplotlib\n"
        "matplotlib.use(\"Agg\")\n"
        "import matplotlib.pyplot as plt\n\n"
        "curves = {\n";
    for (auto &[n, points] : curves) {
        std::ranges::sort(points);
        std::vector<std::string> rs;
        std::vector<std::string> bounds;
        for (const auto &[r, b] : points) {
            rs.push_back(fmt::format("{:.12g}", r));
            bounds.push_back(fmt::format("{:.12g}", b));
        }
        script += fmt::format("    {}: ([{}], [{}]),\n", n, fmt::join(rs, ", "), fmt::join(bounds, ", "));
    }
    script +=
        "}\n\n"
        "fig, ax = plt.subplots(figsize=(6, 4))\n"
        "for n, (r, bound) in sorted(curves.items()):\n"
        "    ax.plot(r, bound, marker=\"o\", markersize=3, label=f\"N = {n} ({2 * n}-way)\")\n"
        "ax.set_xlabel(\"r\")\n"
        "ax.set_ylabel(\"lower bound on E_MBE (bits)\")\n"
        "ax.legend()\n"
        "fig.tight_layout()\n"
        "out = sys.argv[1] if len(sys.argv) > 1 else \"e_mbe_lower_bound.png\"\n"
        "fig.savefig(out, dpi=150)\n";
    return script;
}

}  // namespace mwent
