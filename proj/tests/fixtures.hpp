#pragma once

// Reference values computed once at 60-digit precision with mpmath
// (tests/gen_fixtures.py) and frozen here.

namespace fixtures {

constexpr double kGamma37 = 4.170651783796603165394;

// (x, Gamma(x)) pairs spanning the double range
constexpr double kGammaGrid[][2] = {
    {0.1, 9.513507698668731836292},
    {0.35, 2.546146977212288027568},
    {1.5, 0.8862269254527580136491},
    {3.7, 4.170651783796603165394},
    {7.3, 1271.423633663909273058},
    {12.9, 372227524.6644958524241},
    {25.4, 2.23766162907712103272e+24},
    {51.7, 4.758620167026190049499e+65},
    {101.3, 3.722616312784273435993e+158},
    {151.9, 5.222077975214736776931e+264},
};

// 2F1(-0.75, 1.25; 0.5; 0.2)
constexpr double kHyp2f1Direct = 0.6091682776155308113336;
// 2F1(0.3, 1.7; 2.4; 0.85)  -- generic (1-x) transformation
constexpr double kHyp2f1Transform = 1.391154297867715606951;
// 2F1(-0.3, 1.3; 1.0; 0.75)  -- c = a + b (logarithmic branch, m = 0)
constexpr double kHyp2f1Log0 = 0.5184062491116942276077;
// 2F1(0.25, 0.75; 3.0; 0.9)  -- c = a + b + 2 (m = 2)
constexpr double kHyp2f1Log2 = 1.080766387022256278373;
// 2F1(1.2, 0.8; 1.0; 0.9)    -- c = a + b - 1 (m = -1)
constexpr double kHyp2f1LogM1 = 9.487602626823875534876;

// Ferrers functions P_degree^order(x)
// P_{-0.25}^{-0.5}(cos(2*pi/3))
constexpr double kFerrersA = 1.714765516209983425711;
// P_{0.3}^{-0.7}(0.6)
constexpr double kFerrersB = 0.6443148948568871965691;
// P_{1.7}^{-1}(-0.4)
constexpr double kFerrersC = -0.09767299298153406176538;
// P_{2.3}^{0.4}(0.2)
constexpr double kFerrersD = -0.6251745554118681169243;
// P_{3.2}^{0.6}(-0.3)
constexpr double kFerrersE = 0.6437375240373730660025;
// P_{0.9}^{-1.5}(-0.75)
constexpr double kFerrersF = 1.192075497709187647991;

}  // namespace fixtures
