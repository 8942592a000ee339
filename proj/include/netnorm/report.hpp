#pragma once

#include "netnorm/network.hpp"
#include "netnorm/randomization.hpp"
#include "netnorm/simulation.hpp"
#include "netnorm/statistics.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace netnorm {

/** Shortest decimal string that parses back to exactly this double */
std::string format_number(scalar_t value);

/** Fixed-precision decimal for aligned human-readable tables */
std::string format_fixed(scalar_t value, int digits);

enum class report_format { text, csv, json };

report_format format_from_name(const std::string &name);

/** One row per statistic, mirroring the p-value tables of the write-ups */
void write_battery(std::ostream &out, const std::vector<test_report> &reports,
                   report_format format, bool include_reference = false);

void write_summary(std::ostream &out, const descriptive_summary &summary, report_format format);

/** Trial-level rows of a power study */
void write_study_rows(std::ostream &out, const study_table &table);

/** Per-statistic study summary (text or JSON) */
void write_study_summary(std::ostream &out, const study_table &table, report_format format);

void write_diagnostics(std::ostream &out, const population_diagnostics_t &diagnostics,
                       report_format format);

}  // namespace netnorm
