#pragma once

// File writers for the command-line tool. Data files are byte-deterministic
// for a given configuration; run provenance lives in a sidecar next to the
// data, never inside it.

#include "salemca/analysis.hpp"
#include "salemca/engine.hpp"
#include "salemca/salem.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace salemca::formats {

std::string counts_csv(const CountSeries& counts);

// x_num,x_den,f_num,f_den over all k-bit dyadics in ascending order,
// endpoints included. The two producers emit the identical format so a
// rule's table can be diffed against a singular-function sample directly.
std::string table_csv(const FunctionTable& table);
std::string salem_csv(const SalemParams& params, int k);

std::string reports_json(const std::vector<ClassificationReport>& reports);

// Plain PBM (P1), one pixel per cell, row 0 = lowest coordinate.
std::string pattern_pbm(const Grid2D& grid);

std::string sidecar_json(const std::string& command_line);

// Writes via a temp file in the same directory plus rename.
void atomic_write(const std::filesystem::path& path, const std::string& contents);
void write_with_sidecar(const std::filesystem::path& path, const std::string& contents,
                        const std::string& command_line);

}  // namespace salemca::formats
