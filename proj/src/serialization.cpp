#include "transpec/serialization.hpp"

#include "transpec/builtins.hpp"
#include "transpec/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace transpec {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw ValidationError(std::string("field '") + what + "' must be a number");
    return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string("field '") + what + "' must be an array");
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(number(x, what));
    return v;
}

std::vector<cplx> complex_values(const json& j) {
    if (!j.is_array()) throw ValidationError("field 'values' must be an array");
    std::vector<cplx> v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(complex_from_json(x));
    return v;
}

std::vector<double> split_numbers(const std::string& line) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        std::size_t idx = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &idx);
        } catch (const std::exception&) {
            throw ValidationError("CSV: bad number '" + cell + "'");
        }
        while (idx < cell.size() && std::isspace(static_cast<unsigned char>(cell[idx]))) ++idx;
        if (idx != cell.size()) throw ValidationError("CSV: bad number '" + cell + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<std::vector<double>> read_rows(std::istream& in, std::size_t columns, bool header) {
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first && header) {
            first = false;
            continue;
        }
        first = false;
        auto r = split_numbers(line);
        if (columns != 0 && r.size() != columns)
            throw ValidationError("CSV: expected " + std::to_string(columns) + " columns, got " + std::to_string(r.size()));
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ValidationError("complex value must be a number or [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const PiecewiseConstant& f) {
    json values = json::array();
    for (cplx v : f.values()) values.push_back(to_json(v));
    return {{"breakpoints", std::vector<double>(f.breakpoints().begin(), f.breakpoints().end())}, {"values", values}};
}

PiecewiseConstant piecewise_from_json(const json& j) {
    return PiecewiseConstant(numbers(field(j, "breakpoints"), "breakpoints"), complex_values(field(j, "values")));
}

LineFunction function_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw ValidationError("field 'kind' must be a string");
    const auto k = kind.get<std::string>();
    if (k == "piecewise") return piecewise_from_json(j);
    if (k == "samples")
        return SampledLineFunction(number(field(j, "window_start"), "window_start"), number(field(j, "step"), "step"),
                                   complex_values(field(j, "values")));
    if (k == "builtin") {
        const json& name = field(j, "name");
        if (!name.is_string()) throw ValidationError("field 'name' must be a string");
        return builtin_function(name.get<std::string>());
    }
    throw ValidationError("unknown function kind '" + k + "'");
}

std::vector<LineFunction> family_from_json(const json& j) {
    std::vector<LineFunction> out;
    if (j.is_array()) {
        for (const auto& x : j) out.push_back(function_from_json(x));
        if (out.empty()) throw ValidationError("empty function family");
    } else {
        out.push_back(function_from_json(j));
    }
    return out;
}

json to_json(const PeriodicDensity& p) {
    return {{"n_grid", p.n_grid()}, {"tail_bound", p.tail_bound()}, {"values", p.values()}};
}

json to_json(const FrameReport& r) {
    return {{"verdict", std::string(to_string(r.verdict))},
            {"A", r.lower_bound},
            {"B", r.upper_bound},
            {"support_mass", r.support_mass},
            {"tol", r.tol},
            {"support_tol", r.support_tol}};
}

FrameReport frame_report_from_json(const json& j) {
    FrameReport r;
    const json& v = field(j, "verdict");
    if (!v.is_string()) throw ValidationError("field 'verdict' must be a string");
    const auto verdict = parse_verdict(v.get<std::string>());
    if (!verdict) throw ValidationError("unknown verdict '" + v.get<std::string>() + "'");
    r.verdict = *verdict;
    r.lower_bound = number(field(j, "A"), "A");
    r.upper_bound = number(field(j, "B"), "B");
    r.support_mass = number(field(j, "support_mass"), "support_mass");
    r.tol = number(field(j, "tol"), "tol");
    r.support_tol = j.contains("support_tol") ? number(j.at("support_tol"), "support_tol") : r.tol * r.tol;
    if (r.lower_bound > r.upper_bound) throw ValidationError("frame report: A exceeds B");
    if (r.support_mass < 0.0 || r.support_mass > 1.0) throw ValidationError("frame report: support_mass outside [0,1]");
    return r;
}

json to_json(const CoefficientSequence& c) {
    json values = json::array();
    for (cplx v : c.values()) values.push_back(to_json(v));
    return {{"k_min", c.k_min()}, {"k_max", c.k_max()}, {"values", values}};
}

json to_json(const GridSet& s) {
    json runs = json::array();
    for (const Interval& r : s.runs()) runs.push_back({r.lo, r.hi});
    return {{"n_grid", s.n_grid()}, {"measure", s.measure()}, {"intervals", runs}};
}

json to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json to_json(const MatrixDensityGrid& p) {
    json mats = json::array();
    for (const auto& m : p.matrices()) mats.push_back(to_json(m));
    return {{"n_family", p.n_family()}, {"n_grid", p.n_grid()}, {"matrices", mats}};
}

json to_json(const CyclicDecomposition& d) {
    std::vector<std::size_t> histogram;
    for (int m : d.multiplicity) {
        if (static_cast<std::size_t>(m) >= histogram.size()) histogram.resize(static_cast<std::size_t>(m) + 1, 0);
        ++histogram[static_cast<std::size_t>(m)];
    }
    json supports = json::array();
    for (const auto& s : d.supports) supports.push_back(to_json(s));
    return {{"multiplicity_histogram", histogram}, {"supports", supports}};
}

std::string format_number(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void write_samples_csv(std::ostream& out, const SampledLineFunction& f) {
    out << "x,re,im\n";
    for (std::size_t j = 0; j < f.size(); ++j) {
        const double x = f.window_start() + f.step() * static_cast<double>(j);
        out << format_number(x) << ',' << format_number(f.values()[j].real()) << ',' << format_number(f.values()[j].imag())
            << '\n';
    }
}

SampledLineFunction read_samples_csv(std::istream& in) {
    const auto rows = read_rows(in, 3, true);
    if (rows.size() < 2) throw ValidationError("samples CSV: need at least two rows");
    const double step = rows[1][0] - rows[0][0];
    if (!(step > 0.0)) throw ValidationError("samples CSV: x must increase");
    std::vector<cplx> v;
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const double expect = rows[0][0] + step * static_cast<double>(j);
        if (std::abs(rows[j][0] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
            throw ValidationError("samples CSV: x must be uniformly spaced");
        v.emplace_back(rows[j][1], rows[j][2]);
    }
    return SampledLineFunction(rows[0][0], step, std::move(v));
}

void write_density_csv(std::ostream& out, const PeriodicDensity& p) {
    out << "x,p\n";
    for (std::size_t j = 0; j < p.n_grid(); ++j) out << format_number(p.x(j)) << ',' << format_number(p[j]) << '\n';
}

PeriodicDensity read_density_csv(std::istream& in) {
    const auto rows = read_rows(in, 2, true);
    if (rows.empty()) throw ValidationError("density CSV: no rows");
    std::vector<double> v;
    const double n = static_cast<double>(rows.size());
    for (std::size_t j = 0; j < rows.size(); ++j) {
        if (std::abs(rows[j][0] - static_cast<double>(j) / n) > 1e-9)
            throw ValidationError("density CSV: x must be the uniform grid j/n");
        v.push_back(rows[j][1]);
    }
    return PeriodicDensity(std::move(v));
}

void write_ensemble_csv(std::ostream& out, const PathEnsemble& e) {
    const bool real = e.paths.imag().cwiseAbs().maxCoeff() == 0.0;
    out << (real ? "path_id,t,value\n" : "path_id,t,re,im\n");
    for (Eigen::Index p = 0; p < e.paths.rows(); ++p)
        for (std::size_t i = 0; i < e.n_times(); ++i) {
            const cplx v = e.paths(p, static_cast<Eigen::Index>(i));
            out << p << ',' << format_number(e.time_grid[i]) << ',' << format_number(v.real());
            if (!real) out << ',' << format_number(v.imag());
            out << '\n';
        }
}

Eigen::MatrixXcd read_real_matrix_csv(std::istream& in) {
    const auto rows = read_rows(in, 0, false);
    const auto n = static_cast<Eigen::Index>(rows.size());
    if (n == 0) throw ValidationError("matrix CSV: no rows");
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n)
            throw ValidationError("matrix CSV: matrix must be square");
        for (Eigen::Index c = 0; c < n; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
    return m;
}

}  // namespace transpec
