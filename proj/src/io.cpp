#include "tgs/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tgs/errors.hpp"

namespace tgs {

std::string diagnostics_csv(const DiagnosticsSeries& series) {
    std::ostringstream out;
    out << "t,mass,mass_bound,p_max,second_moment,entropy,entropy_diss_cum,w_minus_L2,"
           "w_minus_L3_cum,lap_L1,energy,energy_diss_cum,clamp_total\n";
    char buf[512];
    for (const DiagnosticsRecord& r : series.records) {
        std::snprintf(buf, sizeof buf,
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                      "%.17g\n",
                      r.t, r.mass, r.mass_bound, r.p_max, r.second_moment, r.entropy,
                      r.entropy_diss_cum, r.w_minus_L2, r.w_minus_L3_cum, r.lap_L1, r.energy,
                      r.energy_diss_cum, r.clamp_total);
        out << buf;
    }
    return out.str();
}

void write_diagnostics_csv(const DiagnosticsSeries& series, const std::string& path) {
    write_text_file(path, diagnostics_csv(series));
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("short write: " + path);
}

}  // namespace tgs
