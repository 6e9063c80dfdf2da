// Copyright 2026 The mubtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON documents exchanged by the command-line tool.
//
// Conventions: complex numbers are [re, im]; matrices are row-major nested
// arrays; grids over (a, α) are nested as [a][α]. Every document carries
// "schema", "schema_version", "tool_version" and "invocation". Floating-point
// values are written with 17 significant digits.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mubtomo/core.hpp"
#include "mubtomo/mub.hpp"
#include "mubtomo/qubit_sic.hpp"
#include "mubtomo/report.hpp"
#include "mubtomo/sim.hpp"
#include "mubtomo/starprod.hpp"
#include "mubtomo/tomography.hpp"

namespace mubtomo::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kToolVersion = "0.1.0";

namespace schema {
inline constexpr const char *kMubSet = "mubtomo.mubset";
inline constexpr const char *kState = "mubtomo.state";
inline constexpr const char *kTomogram = "mubtomo.tomogram";
inline constexpr const char *kSimulation = "mubtomo.simulation";
inline constexpr const char *kVerification = "mubtomo.verification";
inline constexpr const char *kMubSymbol = "mubtomo.mub_symbol";
inline constexpr const char *kSicSymbol = "mubtomo.sic_symbol";
inline constexpr const char *kJob = "mubtomo.job";
}  // namespace schema

// ---------------------------------------------------------------------------
// Writing

namespace detail {

inline void write_number(std::ostream &out, const Json &v) {
    if (v.is_number_float()) {
        double x = v.get<double>();
        if (!std::isfinite(x)) {
            out << "null";
            return;
        }
        if (x == 0) {
            x = 0;  // drop the sign of negative zero
        }
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        out << buf;
    } else {
        out << v.dump();
    }
}

inline bool is_flat(const Json &v) {
    for (const auto &e : v) {
        if (e.is_object()) {
            return false;
        }
        if (e.is_array()) {
            for (const auto &inner : e) {
                if (!inner.is_primitive()) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline void write_value(std::ostream &out, const Json &v, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (v.is_object()) {
        if (v.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) {
                out << ",\n";
            }
            first = false;
            out << pad_in << Json(it.key()).dump() << ": ";
            write_value(out, it.value(), indent + 1);
        }
        out << "\n" << pad << "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out << "[]";
            return;
        }
        // Arrays of scalars or of complex pairs stay on one line.
        if (is_flat(v)) {
            out << "[";
            bool first = true;
            for (const auto &e : v) {
                if (!first) {
                    out << ", ";
                }
                first = false;
                write_value(out, e, indent + 1);
            }
            out << "]";
            return;
        }
        out << "[\n";
        bool first = true;
        for (const auto &e : v) {
            if (!first) {
                out << ",\n";
            }
            first = false;
            out << pad_in;
            write_value(out, e, indent + 1);
        }
        out << "\n" << pad << "]";
    } else if (v.is_number()) {
        write_number(out, v);
    } else {
        out << v.dump();
    }
}

}  // namespace detail

inline std::string to_text(const Json &doc) {
    std::ostringstream out;
    detail::write_value(out, doc, 0);
    out << "\n";
    return out.str();
}

/// Writes to `path`, or to `stdout_stream` when path is "-".
inline void write_document(const Json &doc, const std::string &path, std::ostream &stdout_stream = std::cout) {
    const std::string text = to_text(doc);
    if (path == "-") {
        stdout_stream << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ParseError("cannot open '" + path + "' for writing");
    }
    f << text;
    if (!f) {
        throw ParseError("failed writing '" + path + "'");
    }
}

// ---------------------------------------------------------------------------
// Reading

inline Json read_document(const std::string &path, std::istream &stdin_stream = std::cin) {
    std::string text;
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(stdin_stream), std::istreambuf_iterator<char>());
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) {
            throw ParseError("cannot open '" + path + "'");
        }
        text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError("'" + path + "' is not valid JSON: " + e.what());
    }
}

namespace detail {

[[noreturn]] inline void fail(const std::string &where, const std::string &what) {
    throw ParseError(where + ": " + what);
}

inline const Json &member(const Json &obj, const char *key, const std::string &where) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

inline double as_double(const Json &v, const std::string &where) {
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    return v.get<double>();
}

inline std::uint64_t as_uint(const Json &v, const std::string &where) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
        fail(where, "expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
}

inline const Json &as_array(const Json &v, std::size_t expected, const std::string &where) {
    if (!v.is_array()) {
        fail(where, "expected an array");
    }
    if (v.size() != expected) {
        fail(where, "expected " + std::to_string(expected) + " elements, got " + std::to_string(v.size()));
    }
    return v;
}

inline void check_schema(const Json &doc, const char *expected, const std::string &where) {
    auto it = doc.find("schema");
    if (it != doc.end() && (!it->is_string() || it->get<std::string>() != expected)) {
        fail(where, std::string("schema is not '") + expected + "'");
    }
}

}  // namespace detail

inline Json complex_to_json(Complex c) {
    return Json::array({c.real(), c.imag()});
}

/// Accepts [re, im] or a bare real number.
inline Complex complex_from_json(const Json &v, const std::string &where) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    detail::fail(where, "expected a complex number [re, im]");
}

inline Json matrix_to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline ComplexMatrix matrix_from_json(const Json &v, std::size_t d, const std::string &where) {
    detail::as_array(v, d, where);
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::string row_where = where + "[" + std::to_string(i) + "]";
        detail::as_array(v[i], d, row_where);
        for (std::size_t j = 0; j < d; ++j) {
            m(i, j) = complex_from_json(v[i][j], row_where + "[" + std::to_string(j) + "]");
        }
    }
    return m;
}

/// Standard header for every document.
inline Json header(const char *schema_name, const std::vector<std::string> &invocation) {
    Json doc;
    doc["schema"] = schema_name;
    doc["schema_version"] = kSchemaVersion;
    doc["tool_version"] = kToolVersion;
    doc["invocation"] = invocation;
    return doc;
}

inline std::size_t read_dim(const Json &doc, const std::string &where) {
    std::uint64_t d = detail::as_uint(detail::member(doc, "dim", where), where + ".dim");
    if (d == 0 || d > 4096) {
        detail::fail(where, "dim out of range");
    }
    return static_cast<std::size_t>(d);
}

// MubSet -------------------------------------------------------------------

inline Json mubset_to_json(const MubSet &set, const std::vector<std::string> &invocation) {
    Json doc = header(schema::kMubSet, invocation);
    doc["dim"] = set.dim();
    Json bases = Json::array();
    for (const auto &basis : set.bases()) {
        Json b = Json::array();
        for (const auto &ket : basis) {
            Json k = Json::array();
            for (const auto &c : ket) {
                k.push_back(complex_to_json(c));
            }
            b.push_back(std::move(k));
        }
        bases.push_back(std::move(b));
    }
    doc["bases"] = std::move(bases);
    return doc;
}

inline MubSet mubset_from_json(const Json &doc, const std::string &where = "mubset") {
    detail::check_schema(doc, schema::kMubSet, where);
    const std::size_t d = read_dim(doc, where);
    const Json &bases = detail::as_array(detail::member(doc, "bases", where), d + 1, where + ".bases");
    std::vector<std::vector<Ket>> out(d + 1, std::vector<Ket>(d, Ket(d)));
    for (std::size_t a = 0; a <= d; ++a) {
        const std::string wa = where + ".bases[" + std::to_string(a) + "]";
        detail::as_array(bases[a], d, wa);
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            const std::string wk = wa + "[" + std::to_string(alpha) + "]";
            detail::as_array(bases[a][alpha], d, wk);
            for (std::size_t k = 0; k < d; ++k) {
                out[a][alpha][k] = complex_from_json(bases[a][alpha][k], wk + "[" + std::to_string(k) + "]");
            }
        }
    }
    return MubSet(d, std::move(out));
}

// States -------------------------------------------------------------------

inline Json state_to_json(const ComplexMatrix &rho, const std::vector<std::string> &invocation) {
    Json doc = header(schema::kState, invocation);
    doc["dim"] = rho.rows();
    doc["matrix"] = matrix_to_json(rho);
    return doc;
}

/// Reads "matrix" (a density matrix) or "ket" (a pure state, normalized here).
inline ComplexMatrix state_matrix_from_json(const Json &doc, const std::string &where = "state") {
    detail::check_schema(doc, schema::kState, where);
    const std::size_t d = read_dim(doc, where);
    const bool has_matrix = doc.contains("matrix");
    const bool has_ket = doc.contains("ket");
    if (has_matrix == has_ket) {
        detail::fail(where, "exactly one of 'matrix' or 'ket' is required");
    }
    if (has_matrix) {
        return matrix_from_json(doc["matrix"], d, where + ".matrix");
    }
    const Json &k = detail::as_array(doc["ket"], d, where + ".ket");
    std::vector<Complex> v(d);
    double n = 0;
    for (std::size_t i = 0; i < d; ++i) {
        v[i] = complex_from_json(k[i], where + ".ket[" + std::to_string(i) + "]");
        n += std::norm(v[i]);
    }
    if (!(n > 0)) {
        detail::fail(where, "ket has zero norm");
    }
    for (auto &c : v) {
        c /= std::sqrt(n);
    }
    return outer(v);
}

// Tomograms ----------------------------------------------------------------

inline Json real_grid_to_json(std::size_t d, const std::vector<double> &values) {
    Json rows = Json::array();
    for (std::size_t a = 0; a <= d; ++a) {
        Json row = Json::array();
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            row.push_back(values[a * d + alpha]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Json tomogram_to_json(const Tomogram &t, const std::vector<std::string> &invocation) {
    Json doc = header(schema::kTomogram, invocation);
    doc["dim"] = t.dim();
    doc["probs"] = real_grid_to_json(t.dim(), t.probs());
    return doc;
}

inline Tomogram tomogram_from_json(const Json &doc, const std::string &where = "tomogram") {
    detail::check_schema(doc, schema::kTomogram, where);
    const std::size_t d = read_dim(doc, where);
    const Json &probs = detail::as_array(detail::member(doc, "probs", where), d + 1, where + ".probs");
    std::vector<double> p(grid_size(d));
    for (std::size_t a = 0; a <= d; ++a) {
        const std::string wa = where + ".probs[" + std::to_string(a) + "]";
        detail::as_array(probs[a], d, wa);
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            p[a * d + alpha] = detail::as_double(probs[a][alpha], wa + "[" + std::to_string(alpha) + "]");
        }
    }
    return Tomogram(d, std::move(p));
}

// Symbols ------------------------------------------------------------------

inline Json mub_symbol_to_json(const MubSymbol &s, const std::vector<std::string> &invocation) {
    Json doc = header(schema::kMubSymbol, invocation);
    doc["dim"] = s.dim();
    doc["kind"] = to_string(s.kind());
    Json rows = Json::array();
    for (std::size_t a = 0; a <= s.dim(); ++a) {
        Json row = Json::array();
        for (std::size_t alpha = 0; alpha < s.dim(); ++alpha) {
            row.push_back(complex_to_json(s(a, alpha)));
        }
        rows.push_back(std::move(row));
    }
    doc["values"] = std::move(rows);
    return doc;
}

inline MubSymbol mub_symbol_from_json(const Json &doc, const std::string &where = "mub_symbol") {
    detail::check_schema(doc, schema::kMubSymbol, where);
    const std::size_t d = read_dim(doc, where);
    SymbolKind kind = SymbolKind::Ordinary;
    if (doc.contains("kind")) {
        const Json &k = doc["kind"];
        if (k == "ordinary") {
            kind = SymbolKind::Ordinary;
        } else if (k == "dual") {
            kind = SymbolKind::Dual;
        } else {
            detail::fail(where, "kind must be 'ordinary' or 'dual'");
        }
    }
    const Json &rows = detail::as_array(detail::member(doc, "values", where), d + 1, where + ".values");
    std::vector<Complex> v(grid_size(d));
    for (std::size_t a = 0; a <= d; ++a) {
        const std::string wa = where + ".values[" + std::to_string(a) + "]";
        detail::as_array(rows[a], d, wa);
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            v[a * d + alpha] = complex_from_json(rows[a][alpha], wa + "[" + std::to_string(alpha) + "]");
        }
    }
    return MubSymbol(d, std::move(v), kind);
}

inline Json sic_symbol_to_json(const qubit::SicSymbol &s, const std::vector<std::string> &invocation) {
    Json doc = header(schema::kSicSymbol, invocation);
    doc["dim"] = 2;
    Json values = Json::array();
    for (const auto &c : s) {
        values.push_back(complex_to_json(c));
    }
    doc["values"] = std::move(values);
    return doc;
}

inline qubit::SicSymbol sic_symbol_from_json(const Json &doc, const std::string &where = "sic_symbol") {
    detail::check_schema(doc, schema::kSicSymbol, where);
    if (doc.contains("dim") && read_dim(doc, where) != 2) {
        detail::fail(where, "SIC symbols are defined for d = 2 only");
    }
    const Json &values = detail::as_array(detail::member(doc, "values", where), 4, where + ".values");
    qubit::SicSymbol out;
    for (std::size_t k = 0; k < 4; ++k) {
        out[k] = complex_from_json(values[k], where + ".values[" + std::to_string(k) + "]");
    }
    return out;
}

// Reports ------------------------------------------------------------------

inline Json check_to_json(const CheckResult &r) {
    Json j;
    j["name"] = r.name;
    j["passed"] = r.passed();
    j["max_violation"] = r.max_violation;
    j["tolerance"] = r.tolerance;
    j["argmax"] = r.argmax;
    j["tuple_count"] = r.tuple_count;
    j["sampled"] = r.sampled;
    return j;
}

inline Json record_to_json(const MeasurementRecord &rec) {
    Json j;
    j["dim"] = rec.dim;
    j["seed"] = rec.seed;
    j["shots_per_basis"] = rec.shots_per_basis;
    Json rows = Json::array();
    for (std::size_t a = 0; a <= rec.dim; ++a) {
        Json row = Json::array();
        for (std::size_t alpha = 0; alpha < rec.dim; ++alpha) {
            row.push_back(rec(a, alpha));
        }
        rows.push_back(std::move(row));
    }
    j["counts"] = std::move(rows);
    return j;
}

inline MeasurementRecord record_from_json(const Json &j, const std::string &where = "record") {
    MeasurementRecord rec;
    rec.dim = read_dim(j, where);
    rec.seed = detail::as_uint(detail::member(j, "seed", where), where + ".seed");
    rec.shots_per_basis = detail::as_uint(detail::member(j, "shots_per_basis", where), where + ".shots_per_basis");
    const Json &rows = detail::as_array(detail::member(j, "counts", where), rec.dim + 1, where + ".counts");
    rec.counts.resize(grid_size(rec.dim));
    for (std::size_t a = 0; a <= rec.dim; ++a) {
        const std::string wa = where + ".counts[" + std::to_string(a) + "]";
        detail::as_array(rows[a], rec.dim, wa);
        for (std::size_t alpha = 0; alpha < rec.dim; ++alpha) {
            rec.counts[a * rec.dim + alpha] = detail::as_uint(rows[a][alpha], wa + "[" + std::to_string(alpha) + "]");
        }
    }
    try {
        rec.validate();
    } catch (const ShapeError &e) {
        detail::fail(where, e.what());
    }
    return rec;
}

}  // namespace mubtomo::io
