#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sinhreg/bench.hpp"

namespace sinhreg::cli {

using KeyValues = std::map<std::string, std::string>;

// Flat "key = value" text; '#' starts a comment, blank lines are ignored.
// Duplicate keys and malformed lines are configuration errors.
KeyValues parse_key_values(std::string_view text, std::string_view origin);
KeyValues read_config_file(const std::string& path);

// "pi/2", "5pi/6", "2*pi/3", "pi", "0.75pi" or a plain decimal.
double parse_delta(std::string_view text);
std::vector<double> parse_delta_list(std::string_view text);

// "6,9,12" or an inclusive range "first:last[:step]".
std::vector<int> parse_int_list(std::string_view text);

bool parse_bool(std::string_view text);

// Overwrites the ExperimentConfig fields named in `kv`. Unknown keys are errors.
void apply_config(const KeyValues& kv, ExperimentConfig& config);

}  // namespace sinhreg::cli
