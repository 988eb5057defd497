#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "strata/conserved.hpp"
#include "strata/poisson.hpp"

namespace strata {

// Insertion-ordered JSON so emitted documents are byte-stable.
using ojson = nlohmann::ordered_json;

// Polynomials serialize as term lists [e1, e2, "num", "den"] in the canonical
// graded order; coefficients as decimal strings to keep them exact.
ojson to_json(const BiPoly& p);
ojson to_json(const RatBi& q);
ojson to_json(const RadicalPoly& rp);
ojson to_json(const JetExpr& e);
ojson to_json(const ConservedDensity& d);
ojson to_json(const PoissonOperator& P);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

// Minimal CSV accumulator: fixed column set, row-major append, LF line ends.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& cells);
    const std::string& str() const { return buf_; }

private:
    std::size_t ncols_;
    std::string buf_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace strata
