#include "mwent/state_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

#include "mwent/errors.h"

namespace mwent {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

template <typename T>
bool parse_number(std::string_view token, T &value) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

bool skippable(std::string_view line) {
    auto tokens = split_ws(line);
    return tokens.empty() || tokens.front().starts_with('#');
}

}  // namespace

void write_state(std::ostream &out, const PureState &state) {
    const auto &reg = state.mode_register();
    out << fmt::format("modes={} cutoff={}\n", reg.mode_count(), reg.local_cutoff());
    for (std::size_t i = 0; i < state.term_count(); ++i) {
        auto a = state.amplitude(i);
        out << fmt::format("{} {:.17g} {:.17g}\n", fmt::join(state.occupation(i), " "), a.real(), a.imag());
    }
}

PureState read_state(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t modes = 0;
    int cutoff = -1;
    bool have_header = false;

    while (!have_header && std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto tokens = split_ws(line);
        for (auto token : tokens) {
            if (token.starts_with("modes=")) {
                if (!parse_number(token.substr(6), modes) || modes == 0) {
                    throw ParseError(fmt::format("line {}: bad mode count '{}'", line_no, token), line_no);
                }
            } else if (token.starts_with("cutoff=")) {
                if (!parse_number(token.substr(7), cutoff) || cutoff < 0) {
                    throw ParseError(fmt::format("line {}: bad cutoff '{}'", line_no, token), line_no);
                }
            } else {
                throw ParseError(fmt::format("line {}: unexpected header token '{}'", line_no, token), line_no);
            }
        }
        if (modes == 0 || cutoff < 0) {
            throw ParseError(fmt::format("line {}: header must read 'modes=<F> cutoff=<c>'", line_no), line_no);
        }
        have_header = true;
    }
    if (!have_header) throw ParseError("missing 'modes=<F> cutoff=<c>' header", line_no == 0 ? 1 : line_no);

    const auto reg = ModeRegister::flat(modes, cutoff);
    std::vector<count_t> occupations;
    std::vector<Amplitude> amplitudes;
    std::map<std::vector<count_t>, std::size_t> seen;
    std::vector<count_t> key(modes);
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto tokens = split_ws(line);
        if (tokens.size() != modes + 2) {
            throw ParseError(fmt::format("line {}: expected {} occupations and 2 amplitude parts, got {} fields",
                                         line_no, modes, tokens.size()),
                             line_no);
        }
        for (std::size_t m = 0; m < modes; ++m) {
            unsigned value = 0;
            if (!parse_number(tokens[m], value) || value > static_cast<unsigned>(cutoff)) {
                throw ParseError(fmt::format("line {}: occupation '{}' is not an integer in [0, {}]", line_no,
                                             tokens[m], cutoff),
                                 line_no);
            }
            key[m] = static_cast<count_t>(value);
        }
        double re = 0.0;
        double im = 0.0;
        if (!parse_number(tokens[modes], re) || !parse_number(tokens[modes + 1], im)) {
            throw ParseError(fmt::format("line {}: amplitude is not a pair of decimal numbers", line_no), line_no);
        }
        auto [it, inserted] = seen.emplace(key, line_no);
        if (!inserted) {
            throw ParseError(fmt::format("line {}: basis vector {} already given on line {}", line_no,
                                         OccupationVector(key).to_string(), it->second),
                             line_no);
        }
        occupations.insert(occupations.end(), key.begin(), key.end());
        amplitudes.emplace_back(re, im);
    }
    return PureState(reg, std::move(occupations), std::move(amplitudes));
}

void write_state_file(const std::string &path, const PureState &state) {
    std::ofstream out(path);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
    write_state(out, state);
    if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

PureState read_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path));
    return read_state(in);
}

}  // namespace mwent
