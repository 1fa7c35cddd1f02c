#include "wfs/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace wfs::fft {
namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void forward(std::vector<cplx>& data) {
  fftw_plan plan;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_1d(int(data.size()), p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

void forward2d(std::vector<cplx>& data, int rows, int cols) {
  if (int(data.size()) != rows * cols)
    throw Error(ErrorCode::invalid_argument, "forward2d size mismatch");
  fftw_plan plan;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    plan = fftw_plan_dft_2d(rows, cols, p, p, FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace wfs::fft
