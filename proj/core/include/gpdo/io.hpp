#pragma once
//
// Config ingestion and on-disk formats.
//
// Config JSON: {"backend": "affine"|"cyclic", "grid": {...}, "tolerances": {...}, "seed": n}.
// Grid keys mirror GridConfig: N, h_b, r, b_halfwidth, j_min, j_max, s_top,
// s_nodes, lattice_ny, lattice_nx. Missing keys keep their defaults.
//

#include "gpdo/expcalc.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace gpdo {

struct RunConfig {
    GridConfig grid;
    std::map<std::string, double> tolerances;  // overrides, keyed by check name
    std::uint64_t seed = 0;
    std::string source_text;                   // the document as read, echoed into reports
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical JSON dump of a grid config; doubles round-trip exactly.
std::string grid_config_json(const GridConfig& config);

/// Writes next to the target and renames over it, so readers never see a
/// partial file.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// RepOperator: row,col,re,im.
void write_csv(std::ostream& out, const RepOperator& T);
RepOperator read_rep_csv(std::istream& in, Eigen::Index dim);

// OperatorField: manifest.json plus dual_<xi>.csv per dual point.
void write_field(const std::filesystem::path& dir, const OperatorField& F);
OperatorField read_field(const std::filesystem::path& dir, const ModelPtr& model);

// Symbol: manifest.json (grid, dual points, stored nodes) plus
// node_<i>_dual_<xi>.csv for every stored node.
void write_symbol(const std::filesystem::path& dir, const Symbol& A);
Symbol read_symbol(const std::filesystem::path& dir, const ModelPtr& model);

// ScalarSymbol: lattice.json plus one CSV with columns b,a,eta,chi,re,im.
void write_scalar_symbol(const std::filesystem::path& dir, const ScalarSymbol& B);

} // namespace gpdo
