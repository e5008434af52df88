#pragma once

#include <string>

#include "decaylab/radial.hpp"

namespace decaylab {

// Profiles travel as two-column CSV (abscissa,value) plus a JSON sidecar
// (same path with ".json" appended) carrying {d, side, provenance, name}.
void write_profile(const RadialProfile& p, const std::string& csv_path);
RadialProfile read_profile(const std::string& csv_path);

}  // namespace decaylab
