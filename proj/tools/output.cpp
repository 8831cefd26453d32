#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace clamped::cli {

std::string format_number(double x, int digits) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    double ax = std::fabs(x);
    if (ax < 1e-3 || ax > 1e6) {
        std::snprintf(buf, sizeof buf, "%.*e", digits - 1, x);
        return buf;
    }
    int mag = static_cast<int>(std::floor(std::log10(ax)));
    int decimals = std::max(0, digits - 1 - mag);
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s = buf;
    // trailing zeros after the point carry no digits
    if (s.find('.') != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    return s;
}

namespace {

std::string cell_text(const Cell& c, int digits) {
    if (auto d = std::get_if<double>(&c)) return format_number(*d, digits);
    if (auto i = std::get_if<long long>(&c)) return std::to_string(*i);
    if (auto b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return std::get<std::string>(c);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

std::string json_cell(const Cell& c, int digits) {
    if (auto d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return "null";
        return format_number(*d, digits);
    }
    if (std::holds_alternative<std::string>(c)) return json_string(std::get<std::string>(c));
    return cell_text(c, digits);
}

void json_object(const Record& r, int digits, int indent, std::ostream& out) {
    std::string pad(indent + 2, ' ');
    if (r.fields.empty()) {
        out << "{}";
        return;
    }
    out << "{\n";
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
        out << pad << json_string(r.fields[i].first) << ": " << json_cell(r.fields[i].second, digits);
        out << (i + 1 < r.fields.size() ? ",\n" : "\n");
    }
    out << std::string(indent, ' ') << "}";
}

}  // namespace

void write_csv(const Report& r, int digits, std::ostream& out) {
    if (r.rows.empty()) return;
    const auto& head = r.rows.front().fields;
    for (std::size_t i = 0; i < head.size(); ++i) out << (i ? "," : "") << head[i].first;
    out << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.fields.size(); ++i) out << (i ? "," : "") << cell_text(row.fields[i].second, digits);
        out << '\n';
    }
}

void write_json(const Report& r, int digits, std::ostream& out) {
    out << "{\n  \"inputs\": ";
    json_object(r.inputs, digits, 2, out);
    out << ",\n  \"values\": ";
    if (r.single && r.rows.size() == 1) {
        json_object(r.rows.front(), digits, 2, out);
    } else {
        out << "[";
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            out << (i ? ",\n    " : "\n    ");
            json_object(r.rows[i], digits, 4, out);
        }
        out << (r.rows.empty() ? "]" : "\n  ]");
    }
    out << ",\n  \"residuals\": ";
    json_object(r.residuals, digits, 2, out);
    out << ",\n  \"meta\": ";
    Record meta = r.meta;
    meta.fields.insert(meta.fields.begin(), {"command", r.command});
    json_object(meta, digits, 2, out);
    out << "\n}\n";
}

}  // namespace clamped::cli
