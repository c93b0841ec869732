#ifndef AFFINE_IO_HPP
#define AFFINE_IO_HPP

#include <string>

#include "affine/geometry.hpp"

namespace affine {

// %.{digits}g with -0 normalized to 0
std::string fmt_g(double v, int digits = 17);

// "[[a,b],[c,d]]"
std::string format_matrix(const BilinearForm2 &m, int digits = 12);
// "[[[...],[...]],[[...],[...]]]" nested i -> j -> k
std::string format_cubic(const CubicForm2 &t, int digits = 12);
std::string format_christoffels(const ChristoffelValue &g, int digits = 12);

} // namespace affine

#endif
