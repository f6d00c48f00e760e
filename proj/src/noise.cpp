#include "nonrecip/noise.hpp"

#include <sstream>

#include "nonrecip/error.hpp"
#include "nonrecip/parallel.hpp"
#include "nonrecip/scattering.hpp"

namespace nonrecip {

NoiseResult output_spectrum_cavity2(const DeviceParams& p, double omega) {
    const ScatteringResult sc = smatrix_reduced(p, omega);
    const CMatrix& s = sc.s;
    const CMatrix& l = *sc.l;

    NoiseResult r;
    r.omega = omega;
    r.t21 = std::norm(s(1, 0));
    r.t22 = std::norm(s(1, 1));
    r.t23 = std::norm(s(1, 2));
    r.bath_sq = std::norm(l(1, 0) + l(1, 1));
    r.s_out = 0.5 * (r.t21 + r.t22) + r.t23 * (p.nm1 + 0.5) + r.bath_sq * (p.nm2 + 0.5);
    r.gain = r.t21;
    if (r.gain < kMinGain) {
        std::ostringstream msg;
        msg << "|S'21|^2 = " << r.gain << " at omega = " << omega;
        throw Error(ErrorKind::ZeroGain, msg.str());
    }
    r.added = r.s_out / r.gain - 0.5;
    return r;
}

std::vector<NoiseSample> noise_sweep(const DeviceParams& p, std::span<const double> omegas, int workers) {
    std::vector<NoiseSample> out(omegas.size());
    parallel_for(omegas.size(), workers, [&](std::size_t i) {
        out[i].omega = omegas[i];
        try {
            out[i].result = output_spectrum_cavity2(p, omegas[i]);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ZeroGain && e.kind() != ErrorKind::PoleAtFrequency) throw;
            out[i].flag = std::string(to_string(e.kind()));
        }
    });
    return out;
}

}  // namespace nonrecip
