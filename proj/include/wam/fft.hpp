#pragma once

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "wam/common.hpp"

namespace wam {
namespace detail {

// Cache of in-place c2c plans keyed by (dims, sign). Plan creation is
// serialized (the FFTW planner is not thread-safe); execution through
// fftw_execute_dft on caller buffers is.
class fft_plans {
  public:
    static fft_plans& instance() {
        static fft_plans p;
        return p;
    }

    void execute(const std::vector<int>& dims, int sign, cplx* data) {
        fftw_plan plan = get(dims, sign);
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data),
                         reinterpret_cast<fftw_complex*>(data));
    }

  private:
    using key = std::pair<std::vector<int>, int>;
    std::map<key, fftw_plan> cache_;
    std::mutex mu_;

    fftw_plan get(const std::vector<int>& dims, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find({dims, sign});
        if (it != cache_.end()) return it->second;
        std::size_t total = 1;
        for (int n : dims) total *= static_cast<std::size_t>(n);
        fftw_complex* scratch =
            static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * total));
        fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), scratch,
                                       scratch, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(scratch);
        cache_.emplace(key{dims, sign}, plan);
        return plan;
    }

    fft_plans() = default;
    ~fft_plans() {
        for (auto& [k, p] : cache_) fftw_destroy_plan(p);
    }
    fft_plans(const fft_plans&) = delete;
    fft_plans& operator=(const fft_plans&) = delete;
};

inline void dft_inplace(const std::vector<int>& dims, cplx* data, int sign) {
    fft_plans::instance().execute(dims, sign, data);
}

} // namespace detail
} // namespace wam
