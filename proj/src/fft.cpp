#include "notchwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace notchwave {
namespace {

// Plan cache. Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so they
// can be executed on any caller buffer via the new-array interface.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    void execute(const ComplexSequence& in, ComplexSequence& out, int sign) {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto key = std::make_pair(in.size(), sign);
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                ComplexSequence tmp_in(in.size()), tmp_out(in.size());
                plan = fftw_plan_dft_1d(
                    static_cast<int>(in.size()),
                    reinterpret_cast<fftw_complex*>(tmp_in.data()),
                    reinterpret_cast<fftw_complex*>(tmp_out.data()), sign,
                    FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        // new-array execution is thread safe on distinct buffers
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                         reinterpret_cast<fftw_complex*>(out.data()));
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace

ComplexSequence fft_forward(const ComplexSequence& x) {
    validate_sequence(x, "fft_forward");
    ComplexSequence out(x.size());
    PlanCache::instance().execute(x, out, FFTW_FORWARD);
    return out;
}

ComplexSequence fft_backward(const ComplexSequence& x) {
    validate_sequence(x, "fft_backward");
    ComplexSequence out(x.size());
    PlanCache::instance().execute(x, out, FFTW_BACKWARD);
    return out;
}

ComplexSequence spectrum_analysis(const ComplexSequence& x) {
    ComplexSequence coef = fft_backward(x);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (cplx& v : coef) v *= s;
    return coef;
}

ComplexSequence spectrum_synthesis(const ComplexSequence& coef) {
    ComplexSequence x = fft_forward(coef);
    const double s = 1.0 / std::sqrt(static_cast<double>(coef.size()));
    for (cplx& v : x) v *= s;
    return x;
}

}  // namespace notchwave
