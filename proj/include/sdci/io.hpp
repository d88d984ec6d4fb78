#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sdci/bivariate.hpp"
#include "sdci/selection.hpp"
#include "sdci/simulation.hpp"

namespace sdci {

// Numbers in shortest exact round-trip form; infinities as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);
// Inverse of format_double. Throws ParseError naming the field and line.
double parse_double(const std::string& s, const std::string& field, std::size_t line);

std::vector<std::string> split_csv_line(const std::string& line);

// Header "id,estimate[,sd]". Blank lines and lines starting with '#' are skipped.
std::vector<Unit> read_units_csv(std::istream& in);

// Header "id,n10,n11,n12,n20,n21,n22" (row 1 controls, row 2 cases).
std::vector<Table2x3> read_gwas_csv(std::istream& in);

// id,selected,decision,lower,upper,lower_closed,upper_closed,adjusted_alpha; the
// manifest (if non-empty) is written first as a '#' comment line.
void write_selection_csv(std::ostream& out, const SelectionResult& res, const std::string& manifest = "");
std::vector<UnitResult> read_selection_csv(std::istream& in);

// Flat "key = value" lines, '#' comments.
std::map<std::string, std::string> read_key_values(std::istream& in);
SimConfig sim_config_from_key_values(const std::map<std::string, std::string>& kv);
SimConfig parse_sim_config(std::istream& in);
// Every effective setting of the config, as strings, for the run manifest.
std::map<std::string, std::string> sim_config_echo(const SimConfig& c);

}  // namespace sdci
