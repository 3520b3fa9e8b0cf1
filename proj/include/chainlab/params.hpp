#pragma once

#include <stdexcept>
#include <string>

namespace chainlab {

enum class MassLaw {
    Uniform,    // uniform on [1/C, C]
    TwoPoint,   // {1/C, C} with equal probability
    LogUniform, // log m uniform on [-log C, log C]
};

inline MassLaw mass_law_from_string(const std::string& s) {
    if (s == "uniform") return MassLaw::Uniform;
    if (s == "two-point" || s == "twopoint") return MassLaw::TwoPoint;
    if (s == "log-uniform" || s == "loguniform") return MassLaw::LogUniform;
    throw std::invalid_argument("unknown mass law: " + s);
}

inline std::string to_string(MassLaw law) {
    switch (law) {
    case MassLaw::Uniform: return "uniform";
    case MassLaw::TwoPoint: return "two-point";
    case MassLaw::LogUniform: return "log-uniform";
    }
    return "?";
}

// Model parameters: flip rate gamma per site, exchange rate lambda per bond,
// inverse temperature beta, mass bound C (masses lie in [1/C, C]), ring size n.
struct ModelParams {
    double gamma = 1.0;
    double lambda = 1.0;
    double beta = 1.0;
    double c_bound = 2.0;
    int n = 64;
    MassLaw mass_law = MassLaw::Uniform;

    void validate() const {
        if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
        if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
        if (!(c_bound >= 1.0)) throw std::invalid_argument("c_bound must be >= 1");
        if (n < 3) throw std::invalid_argument("ring size n must be >= 3");
    }

    double total_noise_rate() const { return gamma + lambda; }
    // variance of one-site energy under the Gibbs measure
    double compressibility() const { return 2.0 / (beta * beta); }
};

} // namespace chainlab
