#include "strata/serialize.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace strata {

namespace {

ojson terms_json(const BiPoly& p) {
    ojson arr = ojson::array();
    for (const auto& [e, c] : p.terms())
        arr.push_back(ojson::array({e.a, e.b, c.num_str(), c.den_str()}));
    return arr;
}

const char* gen_name(RadGen g) { return g == RadGen::uv_disc ? "uv-disc" : "xs-rho"; }

ojson op_entry_json(const OpEntry& en) {
    ojson o;
    o["a"] = to_json(en.a);
    o["b1"] = to_json(en.b1);
    o["b2"] = to_json(en.b2);
    return o;
}

}  // namespace

ojson to_json(const BiPoly& p) {
    ojson o;
    o["vars"] = to_string(p.vars());
    o["terms"] = terms_json(p);
    return o;
}

ojson to_json(const RatBi& q) {
    if (q.is_polynomial()) return to_json(q.as_poly());
    ojson o;
    o["vars"] = to_string(q.vars());
    o["num"] = terms_json(q.num());
    o["den"] = terms_json(q.den());
    return o;
}

ojson to_json(const RadicalPoly& rp) {
    ojson o;
    o["generator"] = gen_name(rp.gen());
    o["vars"] = to_string(radical_vars(rp.gen()));
    ojson parts = ojson::array();
    for (const auto& [half_pow, poly] : rp.parts())
        parts.push_back(ojson::array({half_pow, terms_json(poly)}));
    o["half_power_parts"] = parts;
    return o;
}

ojson to_json(const JetExpr& e) {
    ojson o;
    o["vars"] = to_string(e.vars());
    ojson arr = ojson::array();
    for (const auto& [m, c] : e.terms())
        arr.push_back(ojson::array(
            {m.e1, m.e2, m.d1, m.d2, m.dd1, m.dd2, m.lg, c.num_str(), c.den_str()}));
    o["terms"] = arr;
    return o;
}

ojson to_json(const ConservedDensity& d) {
    ojson o;
    o["family"] = to_string(d.family);
    o["index"] = d.index;
    o["vars"] = to_string(d.vars);
    switch (d.family) {
        case Family::poly:
            o["f0"] = terms_json(d.f0);
            if (d.deformed) o["f1"] = terms_json(d.f1);
            break;
        case Family::alg:
            o["radical"] = to_json(d.rad);
            break;
        case Family::toda:
            o["plain"] = terms_json(d.plain);
            o["log_coeff"] = terms_json(d.log_coeff);
            break;
    }
    return o;
}

ojson to_json(const PoissonOperator& P) {
    ojson o;
    o["vars"] = to_string(P.vars);
    ojson rows = ojson::array();
    for (int i = 0; i < 2; ++i) {
        ojson row = ojson::array();
        for (int j = 0; j < 2; ++j) row.push_back(op_entry_json(P.e[i][j]));
        rows.push_back(row);
    }
    o["entries"] = rows;
    return o;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : ncols_(columns.size()) {
    if (columns.empty()) throw std::invalid_argument("CsvWriter: no columns");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += columns[i];
    }
    buf_ += '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += format_double(values[i]);
    }
    buf_ += '\n';
}

void CsvWriter::raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != ncols_) throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buf_ += ',';
        buf_ += cells[i];
    }
    buf_ += '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace strata
