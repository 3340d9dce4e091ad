#include "bvr/atmosphere.hpp"

#include <algorithm>
#include <cmath>

#include "bvr/angles.hpp"

namespace bvr {

namespace {

constexpr double kTropoExponent = kGravity / (isa::kTroposphereLapse * isa::kGasConstant);

double tropopause_pressure()
{
    constexpr double t = isa::kSeaLevelTemperature - isa::kTroposphereLapse * isa::kTropopause;
    return isa::kSeaLevelPressure * std::pow(t / isa::kSeaLevelTemperature, kTropoExponent);
}

}  // namespace

AtmosphereSample isa_sample(double altitude_m)
{
    AtmosphereSample s;
    double h = altitude_m;
    if (!(h >= 0.0) || h > isa::kMaxAltitude) {
        s.clamped = true;
        h = std::isnan(h) ? 0.0 : std::clamp(h, 0.0, isa::kMaxAltitude);
    }

    constexpr double t11 = isa::kSeaLevelTemperature - isa::kTroposphereLapse * isa::kTropopause;
    if (h <= isa::kTropopause) {
        s.temperature = isa::kSeaLevelTemperature - isa::kTroposphereLapse * h;
        s.pressure = isa::kSeaLevelPressure * std::pow(s.temperature / isa::kSeaLevelTemperature, kTropoExponent);
    } else {
        const double p11 = tropopause_pressure();
        if (h <= isa::kStratosphereBreak) {
            s.temperature = t11;
            s.pressure = p11 * std::exp(-kGravity * (h - isa::kTropopause) / (isa::kGasConstant * t11));
        } else {
            const double p20 =
                p11 * std::exp(-kGravity * (isa::kStratosphereBreak - isa::kTropopause) / (isa::kGasConstant * t11));
            s.temperature = t11 - isa::kUpperStratosphereLapse * (h - isa::kStratosphereBreak);
            s.pressure = p20 * std::pow(s.temperature / t11,
                                        kGravity / (isa::kUpperStratosphereLapse * isa::kGasConstant));
        }
    }
    s.density = s.pressure / (isa::kGasConstant * s.temperature);
    s.speed_of_sound = std::sqrt(isa::kHeatRatio * isa::kGasConstant * s.temperature);
    return s;
}

double isa_density(double altitude_m) { return isa_sample(altitude_m).density; }

double speed_of_sound(double altitude_m) { return isa_sample(altitude_m).speed_of_sound; }

double mach(double speed_mps, double altitude_m) { return speed_mps / speed_of_sound(altitude_m); }

}  // namespace bvr
