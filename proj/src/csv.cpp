#include "tec/csv.h"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "tec/errors.h"

namespace tec::csv {

std::string field(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string field(std::optional<double> v) { return v ? field(*v) : "NA"; }

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

void write_exergy_fields(std::ostream& out, const std::optional<ExergyReport>& r) {
    if (r) {
        out << field(r->s_gen) << ',' << field(r->COP_rev) << ','
            << field(r->Q_C_max) << ',' << field(r->Q_C_loss) << ','
            << field(r->eta_II) << ',' << field(r->gamma);
    } else {
        out << "NA,NA,NA,NA,NA,NA";
    }
}

} // namespace

void write_current_sweep(std::ostream& out, const std::vector<CurrentSweepRow>& rows) {
    out << "I,Q_C,Q_H,T_Cj,T_Hj,W,V,COP,s_gen,COP_rev,Q_C_max,Q_C_loss,eta_II,gamma\n";
    for (const auto& row : rows) {
        out << field(row.I) << ',';
        if (row.op) {
            out << field(row.op->Q_C) << ',' << field(row.op->Q_H) << ','
                << field(row.op->T_Cj) << ',' << field(row.op->T_Hj) << ','
                << field(row.op->W) << ',' << field(row.op->V) << ','
                << field(row.op->COP) << ',';
        } else {
            out << "NA,NA,NA,NA,NA,NA,NA,";
        }
        write_exergy_fields(out, row.report);
        out << '\n';
    }
}

void write_env_sweep(std::ostream& out, const std::string& param_name,
                     const std::vector<EnvSweepRow>& rows) {
    out << param_name
        << ",I_star,gamma_star,Q_C,Q_H,W,COP,T_Cj,T_Hj,"
           "feasible_lo,feasible_hi,evaluations,converged,status\n";
    for (const auto& row : rows) {
        out << field(row.value) << ',';
        if (row.result) {
            const auto& r = *row.result;
            const auto& op = r.operating_point;
            out << field(r.I_star) << ',' << field(r.gamma_star) << ','
                << field(op.Q_C) << ',' << field(op.Q_H) << ',' << field(op.W)
                << ',' << field(op.COP) << ',' << field(op.T_Cj) << ','
                << field(op.T_Hj) << ',' << field(r.feasible_interval.lo) << ','
                << field(r.feasible_interval.hi) << ',' << r.evaluations << ','
                << (r.converged ? 1 : 0) << ",ok\n";
        } else {
            out << "NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,NA,infeasible\n";
        }
    }
}

void write_optimization(std::ostream& out, const OptimizationResult& r) {
    out << "I_star,gamma_star,Q_C,Q_H,W,COP,T_Cj,T_Hj,"
           "feasible_lo,feasible_hi,evaluations,converged,grid_fallback\n";
    const auto& op = r.operating_point;
    out << field(r.I_star) << ',' << field(r.gamma_star) << ',' << field(op.Q_C)
        << ',' << field(op.Q_H) << ',' << field(op.W) << ',' << field(op.COP)
        << ',' << field(op.T_Cj) << ',' << field(op.T_Hj) << ','
        << field(r.feasible_interval.lo) << ',' << field(r.feasible_interval.hi)
        << ',' << r.evaluations << ',' << (r.converged ? 1 : 0) << ','
        << (r.grid_fallback ? 1 : 0) << '\n';
}

void write_trace(std::ostream& out, const SimTrace& trace) {
    out << "t,I,T_C,T_H,L_C,L_H,Q_C,Q_H,T_Cj,T_Hj,W,V,COP,"
           "s_gen,COP_rev,Q_C_max,Q_C_loss,eta_II,gamma,tick\n";
    for (const auto& rec : trace.records) {
        out << field(rec.t) << ',' << field(rec.I_applied) << ','
            << field(rec.env.T_C) << ',' << field(rec.env.T_H) << ','
            << field(rec.env.L_C) << ',' << field(rec.env.L_H) << ','
            << field(rec.op.Q_C) << ',' << field(rec.op.Q_H) << ','
            << field(rec.op.T_Cj) << ',' << field(rec.op.T_Hj) << ','
            << field(rec.op.W) << ',' << field(rec.op.V) << ','
            << field(rec.op.COP) << ',';
        write_exergy_fields(out, rec.report);
        out << ',' << (rec.tick ? 1 : 0) << '\n';
    }
}

std::vector<Reading> read_readings(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ValidationError("read_readings: missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split_row(line);
    const auto column = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw ValidationError("read_readings: header lacks column '" + name + "'");
    };
    const std::size_t c_t = column("t");
    const std::size_t c_tc = column("T_C");
    const std::size_t c_th = column("T_H");
    const std::size_t c_lc = column("L_C");
    const std::size_t c_lh = column("L_H");

    std::vector<Reading> readings;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_row(line);
        if (cells.size() != header.size())
            throw ValidationError("read_readings: line " + std::to_string(line_no) +
                                  " has " + std::to_string(cells.size()) +
                                  " cells, expected " + std::to_string(header.size()));
        const auto number = [&](std::size_t c) {
            try {
                std::size_t consumed = 0;
                const double v = std::stod(cells[c], &consumed);
                if (consumed != cells[c].size())
                    throw std::invalid_argument("trailing characters");
                return v;
            } catch (const std::exception&) {
                throw ValidationError("read_readings: line " + std::to_string(line_no) +
                                      ": cannot parse '" + cells[c] + "' in column " +
                                      header[c]);
            }
        };
        readings.push_back(Reading{number(c_t), number(c_tc), number(c_th),
                                   number(c_lc), number(c_lh)});
    }
    return readings;
}

std::vector<double> parse_grid(const std::string& spec) {
    double start = 0.0, stop = 0.0, step = 0.0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &extra) != 3)
        throw ValidationError("parse_grid: expected start:stop:step, got '" + spec + "'");
    if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
        throw ValidationError("parse_grid: values must be finite");
    if (step <= 0.0)
        throw ValidationError("parse_grid: step must be > 0");
    if (stop < start)
        throw ValidationError("parse_grid: stop must be >= start");

    const long long n = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 10'000'000)
        throw ValidationError("parse_grid: grid would exceed 10^7 points");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) grid.push_back(start + step * i);
    return grid;
}

} // namespace tec::csv
