#include "hyperstab/model.hpp"
#include "hyperstab/errors.hpp"

#include <cmath>

namespace hyperstab {

ModelParams ModelParams::unchecked(int n, double p, double lambda) {
    if (n < 3) throw InputError("ModelParams: dimension must be >= 3");
    if (!(p > 1.0)) throw InputError("ModelParams: exponent must exceed 1");
    ModelParams mp;
    mp.n_ = n;
    mp.p_ = p;
    mp.lambda_ = lambda;
    mp.critical_ = std::abs(p - mp.critical_exponent()) <= 1e-12;
    return mp;
}

ModelParams::ModelParams(int n, double p, double lambda) : n_(n), p_(p), lambda_(lambda) {
    if (n < 3) throw InputError("ModelParams: dimension must be >= 3");
    const double pc = critical_exponent();
    if (!(p > 1.0) || p > pc + 1e-12)
        throw InputError("ModelParams: exponent must lie in (1, (n+2)/(n-2)]");
    critical_ = std::abs(p - pc) <= 1e-12;
    const double top = spectral_bottom();
    if (critical_) {
        if (n < 4) throw InputError("ModelParams: critical exponent requires n >= 4");
        const double bottom = 0.25 * n * (n - 2.0);
        if (!(lambda > bottom && lambda < top))
            throw InputError("ModelParams: critical case requires n(n-2)/4 < lambda < (n-1)^2/4");
    } else {
        if (!(lambda < top))
            throw InputError("ModelParams: lambda must be below (n-1)^2/4");
    }
}

} // namespace hyperstab
