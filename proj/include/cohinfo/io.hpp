#pragma once

// State and observable files.
//
//   state:      {"dims": [d1, d2], "re": [[...]], "im": [[...]]}
//   observable: {"eigenvalues": [...], "projectors": [{"re": [[...]], "im": [[...]]}, ...]}
//           or  {"eigenvalues": [...], "eigenvectors": [{"re": [...], "im": [...]}, ...]}
//
// Numbers are written with 17 significant digits so a write/read round trip
// is exact. Parse errors name the offending field path.

#include <string>
#include <vector>

#include "cohinfo/statecore.hpp"

namespace cohinfo::io {

struct StateFile {
    std::vector<std::size_t> dims;
    DensityMatrix state;
    BipartiteState bipartite() const;  // throws DimensionMismatch unless two dims
};

StateFile parse_state(const std::string& text, double tol = kStateTolerance);
Observable parse_observable(const std::string& text, double tol = kStateTolerance);

std::string format_state(const DensityMatrix& state, const std::vector<std::size_t>& dims);
std::string format_observable(const Observable& a);

std::string read_file(const std::string& path);  // throws ParseError
void write_file(const std::string& path, const std::string& text);

}  // namespace cohinfo::io
