#pragma once

// Reference values produced by tests/oracles/generate_goldens.py (mpmath,
// 40 digits) and tests/oracles/analysis_goldens.py (scipy). They are frozen
// here so the C++ suites never compute their own expectations.

#include <array>
#include <utility>

namespace cvqkd::golden {

inline constexpr std::array<std::pair<double, double>, 22> kErfc{{
    {-3, 1.9999779095030014146},
    {-1.5, 1.9661051464753107271},
    {-0.7, 1.677801193837418473},
    {-0.1, 1.1124629160182848922},
    {0, 1.0},
    {1e-8, 0.99999998871620832904},
    {0.1, 0.8875370839817151078},
    {0.25, 0.72367360983176306701},
    {0.5, 0.47950012218695346232},
    {0.7, 0.32219880616258152702},
    {1, 0.15729920705028513066},
    {1.5, 0.033894853524689272933},
    {1.99, 0.0048885868003830027617},
    {2, 0.0046777349810472658379},
    {2.5, 0.00040695201744495893956},
    {3, 0.000022090496998585441373},
    {3.7, 1.6715105790914620237e-7},
    {4, 1.5417257900280018852e-8},
    {5, 1.5374597944280348502e-12},
    {6, 2.1519736712498913117e-17},
    {8, 1.122429717298292708e-29},
    {10, 2.088487583762544757e-45},
}};

inline constexpr double kTransmittance30km = 0.23442288153199221181;
inline constexpr double kPdfX03Amp1PhaseHalfPi = 0.66644920578359927131;
inline constexpr double kPdfX0Amp1Phase0 = 0.1079819330263761039;
inline constexpr double kErfcSqrt2 = 0.045500263896358414401;

// mu_a = 1, l = 30 km, x0 = 1.12, a = 0.21, eta_bob = 0.6636
inline constexpr double kConclusiveMu1L30 = 0.074593720551391810646;
inline constexpr double kBerMu1L30 = 0.016456018842481248009;
// mu_a = 1.5, l = 30 km, x0 = 1.47
inline constexpr double kConclusiveMu15L30 = 0.024244304906160285341;
inline constexpr double kBerMu15L30 = 0.0019343078347569433746;

// spda_mixture(1, perfect) and spda_mixture(0.7, y0 = 1e-3, eps = 0.5)
inline constexpr std::array<double, 5> kSpdaMu1{0.43233235838169365405, 0.0,
                                                0.11627207896741481485, 0.11627207896741481485,
                                                0.33512348368347671625};
inline constexpr std::array<double, 5> kSpdaMu07Noisy{
    0.25170368511543475646, 0.0002480443592438090526, 0.10419538592993211692,
    0.10419538592993211692, 0.53965749866545720065};

// sma_mixture by direct two-dimensional integration
inline constexpr std::array<double, 5> kSmaMu1{0.70786098173714101534, 0.025171489600055118169,
                                               0.13348376433140193325, 0.13348376433140193325,
                                               0.0};
inline constexpr std::array<double, 5> kSmaMu25{0.88939394688579714791,
                                                0.0032402448924551981881,
                                                0.053682904110873826951,
                                                0.053682904110873826951, 0.0};

// Table-1 SPDA mixture, mu_e = 3
inline constexpr double kPresenceConclusiveX10 = 0.42721370850974182925;
inline constexpr double kPresenceBerX10 = 0.030229656842849361692;
inline constexpr double kPresenceConclusiveX112 = 0.39882155291314509955;
inline constexpr double kPresenceBerX112 = 0.01785674566126287913;
inline constexpr double kPresenceCorrectDensityAt0 = 0.45378829573476513649;

// SPDA vs SMA BER curves cross here (mu_a = 1, mu_e = 3)
inline constexpr double kCompareAttacksCrossing = 0.8861158217432653944;

// Optimised-Eve crossover (default mu_e grid, scan step 0.01, bisection 1e-4)
inline constexpr double kCrossoverMu1L30 = 1.1073828125;
inline constexpr double kMinBerMu1L30 = 0.017042587416196235;
inline constexpr double kCrossoverMu15L30 = 1.4541796875;
inline constexpr double kMinBerMu15L30 = 0.002046468924426299;
// mu_a = 1, l = 0 km, threshold range [0, 4]
inline constexpr double kCrossoverMu1L0 = 3.5606640625;
inline constexpr double kMinBerMu1L0 = 5.344868826649749e-11;
// Largest distance at which the attack stays visible, mu_a = 1, defaults
inline constexpr double kMaxDistanceMu1 = 45.5078125;

}  // namespace cvqkd::golden
