#pragma once

#include <string>

#include "jumpact/estimator.hpp"

namespace jumpact {

// Read one numeric column from a comma-separated file with a header row.
// Values must parse as finite decimals; errors carry 1-based line numbers.
std::vector<double> read_csv_column(const std::string& file,
                                    const std::string& column);

// Write "index,logprice" rows with full round-trip precision.
void write_path_csv(const std::string& file, const LogPricePath& path);

}  // namespace jumpact
