#ifndef TURAN_PLOT_HPP
#define TURAN_PLOT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "turan/turan_lab.hpp"

namespace turan {

// Deterministic SVG: measured log_n(ex_lower) versus x, the piecewise
// prediction overlay, and the p0/p1 density markers. Identical records
// produce byte-identical output.
void emit_plot(const std::vector<ExperimentRecord>& records, int r, int ell, std::ostream& out);
void emit_plot_file(const std::vector<ExperimentRecord>& records, int r, int ell,
                    const std::string& path);

}  // namespace turan

#endif
