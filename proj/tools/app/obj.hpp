#pragma once

#include "isor/surface.hpp"

#include <iosfwd>

namespace isor::app {

// "v", "vn" and triangulated "f v//vn" records, 17 significant digits.
void write_obj(const Mesh& mesh, std::ostream& os);

}  // namespace isor::app
