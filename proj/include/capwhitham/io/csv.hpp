#pragma once

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "capwhitham/format.hpp"
#include "capwhitham/symbol.hpp"
#include "capwhitham/symbreak.hpp"
#include "capwhitham/wave_solver.hpp"

namespace capwhitham::io {

// Fixed headers. Column order is part of the output contract.
inline const std::vector<std::string> bifurcation_columns = {"T", "c0", "kappa0", "residual"};
inline const std::vector<std::string> verdict_columns = {"k1", "k2", "status", "limit_low", "limit_high", "n_roots", "T0_first"};
inline const std::vector<std::string> phi_curve_columns = {"T", "phi", "phi_normalized"};
inline const std::vector<std::string> root_columns = {"T0", "lo", "hi", "slope"};
inline const std::vector<std::string> profile_columns = {"x", "u"};

class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) : width_(header.size()) { line(header); }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw std::logic_error("csv row width differs from the header");
        line(cells);
    }
    std::string str() const { return out_.str(); }

    static std::string cell(double x) { return fmt_num(x); }
    static std::string cell(const std::optional<double>& x) { return x ? fmt_num(*x) : std::string(); }
    static std::string cell(int x) { return std::to_string(x); }

private:
    void line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << quote(cells[i]);
        out_ << '\n';
    }
    static std::string quote(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return q + "\"";
    }

    std::size_t width_;
    std::ostringstream out_;
};

inline std::string bifurcation_csv(const std::vector<BifurcationPoint>& pts) {
    CsvWriter w(bifurcation_columns);
    for (const auto& p : pts) w.row({CsvWriter::cell(p.T), CsvWriter::cell(p.c0), CsvWriter::cell(p.kappa0), CsvWriter::cell(p.residual)});
    return w.str();
}

inline std::string verdict_csv(const std::vector<PairVerdict>& vs) {
    CsvWriter w(verdict_columns);
    for (const auto& v : vs) {
        const std::optional<double> first = v.roots.empty() ? std::nullopt : std::optional<double>(v.roots.front().T0);
        w.row({CsvWriter::cell(v.k1), CsvWriter::cell(v.k2), to_string(v.status), CsvWriter::cell(v.limit_low),
               CsvWriter::cell(v.limit_high), CsvWriter::cell(static_cast<int>(v.roots.size())), CsvWriter::cell(first)});
    }
    return w.str();
}

inline std::string roots_csv(const std::vector<PhiRoot>& roots) {
    CsvWriter w(root_columns);
    for (const auto& r : roots) w.row({CsvWriter::cell(r.T0), CsvWriter::cell(r.lo), CsvWriter::cell(r.hi), CsvWriter::cell(r.slope)});
    return w.str();
}

struct PhiCurvePoint {
    double T, phi, normalized;
};

inline std::string phi_curve_csv(const std::vector<PhiCurvePoint>& pts) {
    CsvWriter w(phi_curve_columns);
    for (const auto& p : pts) w.row({CsvWriter::cell(p.T), CsvWriter::cell(p.phi), CsvWriter::cell(p.normalized)});
    return w.str();
}

inline std::string profile_csv(const WaveProfile& prof, int n = 1024) {
    CsvWriter w(profile_columns);
    for (auto [x, u] : prof.samples(n)) w.row({CsvWriter::cell(x), CsvWriter::cell(u)});
    return w.str();
}

} // namespace capwhitham::io
