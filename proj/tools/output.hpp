#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace clamped::cli {

using Cell = std::variant<double, long long, bool, std::string>;

struct Record {
    std::vector<std::pair<std::string, Cell>> fields;

    Record& add(std::string key, Cell value) {
        fields.emplace_back(std::move(key), std::move(value));
        return *this;
    }
};

struct Report {
    std::string command;
    Record inputs;
    std::vector<Record> rows;
    Record residuals;
    Record meta;
    bool single = false;  // JSON "values" is one object rather than a list
};

// Decimal notation with `digits` significant digits; exponent form when
// |x| < 1e-3 or |x| > 1e6.  Independent of the C++ locale.
std::string format_number(double x, int digits);

void write_csv(const Report& r, int digits, std::ostream& out);
void write_json(const Report& r, int digits, std::ostream& out);

}  // namespace clamped::cli
