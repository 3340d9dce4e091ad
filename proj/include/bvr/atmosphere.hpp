#pragma once

namespace bvr {

/// International Standard Atmosphere, troposphere through the lower stratosphere.
/// Valid over [0, 25 000] m; inputs outside that band are clamped and flagged.
struct AtmosphereSample {
    double temperature = 0.0;     // K
    double pressure = 0.0;        // Pa
    double density = 0.0;         // kg/m^3
    double speed_of_sound = 0.0;  // m/s
    bool clamped = false;
};

namespace isa {
inline constexpr double kSeaLevelTemperature = 288.15;
inline constexpr double kSeaLevelPressure = 101325.0;
inline constexpr double kSeaLevelDensity = 1.225;
inline constexpr double kGasConstant = 287.05287;
inline constexpr double kHeatRatio = 1.4;
inline constexpr double kTroposphereLapse = 0.0065;
inline constexpr double kTropopause = 11000.0;
inline constexpr double kStratosphereBreak = 20000.0;
inline constexpr double kUpperStratosphereLapse = -0.001;
inline constexpr double kMaxAltitude = 25000.0;
}  // namespace isa

AtmosphereSample isa_sample(double altitude_m);

double isa_density(double altitude_m);

double speed_of_sound(double altitude_m);

/// Airspeed divided by the local ISA speed of sound.
double mach(double speed_mps, double altitude_m);

}  // namespace bvr
