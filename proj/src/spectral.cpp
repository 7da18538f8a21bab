#include "axicyl/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "axicyl/error.hpp"
#include "axicyl/grid.hpp"

namespace axicyl {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

ZFourier::ZFourier(int rows, int n) : rows_(rows), n_(n) {
    const int modes = n / 2 + 1;
    std::vector<double> re(static_cast<std::size_t>(rows) * n);
    std::vector<fftw_complex> co(static_cast<std::size_t>(rows) * modes);
    std::lock_guard<std::mutex> lock(planner_mutex());
    forward_plan_ = fftw_plan_many_dft_r2c(1, &n_, rows, re.data(), nullptr, 1, n, co.data(), nullptr, 1, modes,
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    inverse_plan_ = fftw_plan_many_dft_c2r(1, &n_, rows, co.data(), nullptr, 1, modes, re.data(), nullptr, 1, n,
                                           FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!forward_plan_ || !inverse_plan_) throw Error(ErrorKind::numerical_failure, "FFTW planning failed");
}

ZFourier::~ZFourier() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const ZFourier& ZFourier::for_grid(const Grid& grid) {
    static std::mutex cache_mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<ZFourier>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto& slot = cache[{grid.nr(), grid.nz()}];
    if (!slot) slot = std::make_unique<ZFourier>(grid.nr(), grid.nz());
    return *slot;
}

void ZFourier::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), const_cast<double*>(in.data()),
                         reinterpret_cast<fftw_complex*>(out.data()));
}

void ZFourier::inverse(std::span<std::complex<double>> in, std::span<double> out) const {
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(in.data()),
                         out.data());
    const double scale = 1.0 / n_;
    for (double& v : out) v *= scale;
}

}  // namespace axicyl
