#pragma once

/// Serialization of a finished study: a fixed set of CSV tables plus one
/// JSON document. All output is deterministic — byte-identical across runs
/// on the same inputs and configuration.

#include <filesystem>
#include <string>
#include <vector>

#include "asylecon/study.hpp"

namespace asylecon::pipeline {

struct EmitOptions {
    bool csv = false;  // default-constructed options emit only the JSON bundle
};

/// Writes the study's outputs into `out_dir` (created if absent) and returns
/// the paths written. The study.json bundle is always written; the CSV
/// tables are added when `options.csv` is set. CSV files start with a
/// "# config <digest>" comment line tying them to the configuration that
/// produced them:
///   table1.csv   elasticity model per country, sorted by mean elasticity
///   table2.csv   smoothed elasticity excerpt over the excerpt window
///   tableA1.csv  per-capita applications relative to the baseline
///   tableA2.csv  smoothed ratio paths relative to the baseline
///   tableA3a.csv unit roots, cointegration and causality
///   tableA3b.csv the same with the GLS-demeaned unit-root variant
///   tableA4.csv  elasticity paths relative to the baseline
///   study.json   the full report
std::vector<std::filesystem::path> emit_study(const StudyReport& study,
                                              const std::filesystem::path& out_dir,
                                              const EmitOptions& options = {});

/// The study.json text for `study` (nulls for unavailable numbers).
std::string study_to_json(const StudyReport& study);

/// A parsed CSV table, used to diff emitted tables in tests.
struct CsvTable {
    std::string config_digest;  // from the leading comment line, if any
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_table_csv(const std::filesystem::path& path);

}  // namespace asylecon::pipeline
