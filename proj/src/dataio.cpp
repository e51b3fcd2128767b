#include "vanopt/dataio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vanopt {
namespace {

const char* kContractHeader =
    "label,expiration_date,initial_date,spot,strike,market_days,"
    "market_price,style,rate,volatility";

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

double parse_double(const std::string& cell, int line_no, const char* field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument("trailing text");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": field '" + field + "' is not a number: '" +
                                    cell + "'");
    }
}

int parse_int(const std::string& cell, int line_no, const char* field) {
    const double v = parse_double(cell, line_no, field);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": field '" + field + "' must be an integer");
    return i;
}

/// Shortest round-trip, locale-independent number cell.
std::string num_cell(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? num_cell(*v) : "";
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write to '" + path + "'");
    return out;
}

}  // namespace

ContractSpec ContractFileRow::to_spec(int days_per_year) const {
    ContractSpec spec;
    spec.label = initial_date.empty() ? label : label + " " + initial_date;
    spec.spot = spot;
    spec.strike = strike;
    spec.maturity_days = market_days;
    spec.days_per_year = days_per_year;
    spec.rate = rate;
    spec.volatility = volatility;
    spec.style = style_from_string(style);
    spec.market_price = market_price;
    return spec;
}

std::vector<ContractFileRow> load_contract_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open contract file '" + path + "'");

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("'" + path + "' is empty");
    if (trim(line) != kContractHeader)
        throw std::runtime_error("'" + path +
                                 "': header mismatch; expected: " +
                                 kContractHeader);

    std::vector<ContractFileRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 10)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected 10 columns, got " +
                                     std::to_string(cells.size()));
        ContractFileRow row;
        row.label = cells[0];
        row.expiration_date = cells[1];
        row.initial_date = cells[2];
        row.spot = parse_double(cells[3], line_no, "spot");
        row.strike = parse_double(cells[4], line_no, "strike");
        row.market_days = parse_int(cells[5], line_no, "market_days");
        row.market_price =
            cells[6].empty() ? -1.0 : parse_double(cells[6], line_no, "market_price");
        row.style = cells[7];
        row.rate = parse_double(cells[8], line_no, "rate");
        row.volatility = parse_double(cells[9], line_no, "volatility");
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ContractSpec> load_contracts(const std::string& path,
                                         int days_per_year) {
    const auto rows = load_contract_rows(path);
    std::vector<ContractSpec> specs;
    specs.reserve(rows.size());
    int line_no = 1;
    for (const auto& row : rows) {
        ++line_no;
        ContractSpec spec = row.to_spec(days_per_year);
        try {
            spec.validate();
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
        specs.push_back(std::move(spec));
    }
    return specs;
}

void save_contract_rows(const std::vector<ContractFileRow>& rows,
                        const std::string& path) {
    auto out = open_out(path);
    out << kContractHeader << "\n";
    for (const auto& r : rows) {
        out << r.label << "," << r.expiration_date << "," << r.initial_date
            << "," << num_cell(r.spot) << "," << num_cell(r.strike) << ","
            << r.market_days << ","
            << (r.market_price >= 0.0 ? num_cell(r.market_price) : std::string())
            << "," << r.style << "," << num_cell(r.rate) << ","
            << num_cell(r.volatility) << "\n";
    }
}

void save_contracts(const std::vector<ContractSpec>& specs,
                    const std::string& path) {
    std::vector<ContractFileRow> rows;
    rows.reserve(specs.size());
    for (const auto& s : specs) {
        ContractFileRow r;
        r.label = s.label;
        r.spot = s.spot;
        r.strike = s.strike;
        r.market_days = s.maturity_days;
        r.market_price = s.has_market_price() ? s.market_price : -1.0;
        r.style = to_string(s.style);
        r.rate = s.rate;
        r.volatility = s.volatility;
        rows.push_back(std::move(r));
    }
    save_contract_rows(rows, path);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");

    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));

        auto as_double = [&] { return parse_double(value, line_no, key.c_str()); };
        auto as_int = [&] { return parse_int(value, line_no, key.c_str()); };

        if (key == "population_size") cfg.de.population_size = as_int();
        else if (key == "max_iterations") cfg.de.max_iterations = as_int();
        else if (key == "scale_factor") cfg.de.scale_factor = as_double();
        else if (key == "crossover_prob") cfg.de.crossover_prob = as_double();
        else if (key == "seed") cfg.de.seed = static_cast<std::uint64_t>(as_double());
        else if (key == "initial_weight_count") cfg.aws.initial_weight_count = as_int();
        else if (key == "delta") cfg.aws.delta = as_double();
        else if (key == "max_refinement_rounds") cfg.aws.max_refinement_rounds = as_int();
        else if (key == "segment_gap_threshold") cfg.aws.segment_gap_threshold = as_double();
        else if (key == "mc_paths_inner") cfg.aws.mc_paths_inner = as_int();
        else if (key == "mc_paths_report") cfg.aws.mc_paths_report = as_int();
        else if (key == "num_paths") cfg.paths.num_paths = as_int();
        else if (key == "num_steps") cfg.paths.num_steps = as_int();
        else if (key == "binomial_steps") cfg.binomial.steps = as_int();
        else if (key == "days_per_year") cfg.days_per_year = as_int();
        else if (key == "extraction_strategy") cfg.extraction_strategy = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else
            throw std::runtime_error(path + ": line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
    }

    // surface range problems at load time, naming the key via the message
    cfg.de.bounds = {{0.0, 1.0}};  // placeholder; real bounds come per contract
    cfg.de.validate();
    cfg.de.bounds.clear();
    cfg.aws.validate();
    cfg.paths.validate();
    cfg.binomial.validate();
    if (cfg.days_per_year < 1)
        throw std::runtime_error(path + ": days_per_year must be >= 1");
    return cfg;
}

void export_pareto_csv(const std::vector<ParetoPoint>& front,
                       const std::string& path) {
    if (front.empty())
        throw std::invalid_argument("export_pareto_csv: empty front");
    std::vector<ParetoPoint> sorted = front;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ParetoPoint& a, const ParetoPoint& b) {
                         return a.objectives.payoff > b.objectives.payoff;
                     });
    auto out = open_out(path);
    out << "exercise_time,asset_value,payoff,probability,payoff_norm,"
           "probability_norm,w1,w2\n";
    for (const auto& p : sorted) {
        out << num_cell(p.candidate.time) << "," << num_cell(p.candidate.asset_value)
            << "," << num_cell(p.objectives.payoff) << ","
            << num_cell(p.objectives.probability) << "," << num_cell(p.normalized[0])
            << "," << num_cell(p.normalized[1]) << "," << num_cell(p.weight.w1)
            << "," << num_cell(p.weight.w2) << "\n";
    }
}

void export_report_csv(const std::vector<ComparisonRow>& rows,
                       const std::string& path) {
    auto out = open_out(path);
    out << "label,market_price,bs_price,binomial_price,de_price,cmde_price,"
           "bs_abs_err,bs_pct_err,binomial_abs_err,binomial_pct_err,"
           "de_abs_err,de_pct_err,cmde_abs_err,cmde_pct_err\n";
    for (const auto& r : rows) {
        out << r.label << "," << opt_cell(r.market_price) << ","
            << opt_cell(r.bs_price) << "," << opt_cell(r.binomial_price) << ","
            << opt_cell(r.de_price) << "," << opt_cell(r.cmde_price) << ","
            << opt_cell(r.bs_abs_err) << "," << opt_cell(r.bs_pct_err) << ","
            << opt_cell(r.binomial_abs_err) << "," << opt_cell(r.binomial_pct_err)
            << "," << opt_cell(r.de_abs_err) << "," << opt_cell(r.de_pct_err)
            << "," << opt_cell(r.cmde_abs_err) << "," << opt_cell(r.cmde_pct_err)
            << "\n";
    }
}

}  // namespace vanopt
