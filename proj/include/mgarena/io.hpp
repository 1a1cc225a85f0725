#pragma once

#include <string>
#include <vector>

#include "mgarena/analysis.hpp"
#include "mgarena/game.hpp"

namespace mgarena {

enum class Format { Csv, Json };

Format parse_format(const std::string& name);

// "0.5" or an inclusive decimal grid "start:stop:step". Grid points are formed in exact
// decimal arithmetic and rounded once, so 0.35:0.65:0.05 hits 0.65 exactly. Throws ConfigError.
std::vector<double> parse_decimal_grid(const std::string& text);

// Header `model,L,p,n,bond,mean,stderr,count,seed`; rows in key order; floats with 17 digits.
std::string stats_to_csv(std::vector<EnsembleStat> stats);
std::vector<EnsembleStat> stats_from_csv(const std::string& text);

std::string stats_to_json(std::vector<EnsembleStat> stats, const std::vector<GameConfig>& configs);
void stats_from_json(const std::string& text, std::vector<EnsembleStat>& stats, std::vector<GameConfig>& configs);

// Writes to a temporary sibling and renames it into place; throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

void export_stats(const std::vector<EnsembleStat>& stats, const std::vector<GameConfig>& configs,
                  const std::string& path, Format format);
// Reads a file written by export_stats; the format follows the extension (.json or csv otherwise).
std::vector<EnsembleStat> import_stats(const std::string& path);

}  // namespace mgarena
