#pragma once

#include <ostream>
#include <string>

#include "primstab/scans.hpp"

namespace primstab {

enum class OutputFormat { jsonl, csv };
OutputFormat parse_format(const std::string& s);

// One line per class with columns p, q, len, tr, tl, ratio, flags; the
// aggregate line comes last.
void write_bowditch(const BowditchReport& r, OutputFormat f, std::ostream& os);
void write_ps(const PsReport& r, OutputFormat f, std::ostream& os);

}  // namespace primstab
