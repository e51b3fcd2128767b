#pragma once

#include "vanopt/valuation.hpp"

#include <string>
#include <vector>

namespace vanopt {

/// One contract-file line; rate and volatility are required columns because
/// the shipped fixtures carry placeholder values for them.
struct ContractFileRow {
    std::string label;
    std::string expiration_date;  // ISO-8601 or empty
    std::string initial_date;     // ISO-8601 or empty
    double spot = 0.0;
    double strike = 0.0;
    int market_days = 0;
    double market_price = -1.0;  // < 0 means absent
    std::string style = "European";
    double rate = 0.0;
    double volatility = 0.0;

    ContractSpec to_spec(int days_per_year) const;
};

struct RunConfig {
    DEConfig de;
    AwsConfig aws;
    PathConfig paths;
    BinomialConfig binomial;
    int days_per_year = 252;
    std::string extraction_strategy = "expected-discounted";
    std::string out_dir = "out";
};

std::vector<ContractFileRow> load_contract_rows(const std::string& path);
void save_contract_rows(const std::vector<ContractFileRow>& rows,
                        const std::string& path);
std::vector<ContractSpec> load_contracts(const std::string& path,
                                         int days_per_year = 252);
void save_contracts(const std::vector<ContractSpec>& specs,
                    const std::string& path);

/// Flat key-value config ("key = value" lines, '#' comments); absent keys
/// fall back to the defaults above.
RunConfig load_config(const std::string& path);

void export_pareto_csv(const std::vector<ParetoPoint>& front,
                       const std::string& path);
void export_report_csv(const std::vector<ComparisonRow>& rows,
                       const std::string& path);

}  // namespace vanopt
