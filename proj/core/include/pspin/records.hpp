#pragma once

#include "pspin/experiments.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace pspin {

/// Fixed float formatting for persisted records: 17 significant digits,
/// scientific. All output files are reproducible byte-for-byte.
std::string format_number(double v);

std::string variant_name(const ModelVariant& v);
std::string ansatz_name(AnsatzKind k);
std::optional<AnsatzKind> parse_ansatz_name(const std::string& name);

/// Resolved-parameter echo written as leading '#' comment lines.
using ConfigEcho = std::map<std::string, std::string>;
void write_config_echo(std::ostream& os, const ConfigEcho& echo);

/// Trajectory table, header "t,lambda,pgs".
void write_trajectory(std::ostream& os, const RunRecord& rec);

/// One-line-per-run summary table.
void write_summary_header(std::ostream& os);
void write_summary_row(std::ostream& os, const RunRecord& rec,
                       std::optional<double> min_gap = std::nullopt);

/// Fit table, header "phi,gamma,residual,n_lo,n_hi".
void write_fit(std::ostream& os, const FitResult& fit);

/// Histogram table, header "bin_lo,bin_hi,count".
void write_histogram(std::ostream& os, const Histogram& hist);

}  // namespace pspin
