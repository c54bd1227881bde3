#pragma once

#include <string>

#include "tgs/diagnostics.hpp"

namespace tgs {

// CSV with the fixed 13-column header, one row per record, 17 significant
// digits — byte-identical across runs of the same configuration.
std::string diagnostics_csv(const DiagnosticsSeries& series);
void write_diagnostics_csv(const DiagnosticsSeries& series, const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace tgs
