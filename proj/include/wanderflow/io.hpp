#pragma once

#include "wanderflow/foliation.hpp"
#include "wanderflow/lineflow.hpp"
#include "wanderflow/numflow.hpp"

#include <optional>
#include <string>

namespace wanderflow {

struct ParseError : error {
    ParseError(const std::string& file, int line, const std::string& what)
        : error(file + ":" + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

FoliationModel parse_fol(const std::string& text, const std::string& filename = "<input>");
FoliationModel load_fol(const std::string& path);
// Canonical text: parse(print(m)) == m.
std::string print_fol(const FoliationModel& m);

struct LinFile {
    std::optional<LineFlowSpec> spec;
    std::optional<RecursiveSpec> rec;
};

LinFile parse_lin(const std::string& text, const std::string& filename = "<input>");
LinFile load_lin(const std::string& path);
std::string print_lin(const LinFile& f);

RecursiveSpec parse_rec_term(const std::string& term);
std::string print_rec_term(const RecursiveSpec& spec);

// CSV with a header row, '.' decimal separator and '\n' line endings.
std::string trajectory_csv(const Trajectory& traj);
std::string link_csv(const LinkWitness& w);

}  // namespace wanderflow
