#pragma once

#include <cstddef>
#include <vector>

namespace spm {

/// Dense real vector. Lengths are validated wherever a vector meets an
/// operator; everything is double precision throughout.
using Vector = std::vector<double>;

double dot(const Vector& x, const Vector& y);
double norm2(const Vector& x);
double norm_inf(const Vector& x);

}  // namespace spm
