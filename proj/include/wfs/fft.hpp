#pragma once

#include <vector>

#include "wfs/common.hpp"

namespace wfs::fft {

// In-place forward DFT, FFTW sign convention (exp(-i 2 pi jk/N)).
// 1D of length n (n power of two not required, FFTW handles all sizes).
void forward(std::vector<cplx>& data);

// 2D row-major (rows x cols), forward.
void forward2d(std::vector<cplx>& data, int rows, int cols);

}  // namespace wfs::fft
