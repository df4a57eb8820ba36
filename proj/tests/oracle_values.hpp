#pragma once
// Generated by tests/oracles/generate_oracles.py (mpmath, 50 digits). Do not edit.

namespace oracle {

struct GegenbauerValue {
  double lambda;
  int n;
  double x;
  double value;
};

inline constexpr GegenbauerValue kGegenbauer[] = {
    {0.5, 0, -0.9, 1.0},
    {0.5, 0, -0.3, 1.0},
    {0.5, 0, 0.2, 1.0},
    {0.5, 0, 0.7, 1.0},
    {0.5, 0, 1, 1.0},
    {0.5, 1, -0.9, -0.9},
    {0.5, 1, -0.3, -0.3},
    {0.5, 1, 0.2, 0.2},
    {0.5, 1, 0.7, 0.7},
    {0.5, 1, 1, 1.0},
    {0.5, 2, -0.9, 0.715},
    {0.5, 2, -0.3, -0.365},
    {0.5, 2, 0.2, -0.44},
    {0.5, 2, 0.7, 0.235},
    {0.5, 2, 1, 1.0},
    {0.5, 5, -0.9, 0.04114125},
    {0.5, 5, -0.3, -0.34538625},
    {0.5, 5, 0.2, 0.30752},
    {0.5, 5, 0.7, -0.36519875},
    {0.5, 5, 1, 1.0},
    {0.5, 10, -0.9, -0.263145617855859375},
    {0.5, 10, -0.3, 0.251476349516015625},
    {0.5, 10, 0.2, 0.1290720256},
    {0.5, 10, 0.7, 0.085805795531640625},
    {0.5, 10, 1, 1.0},
    {0.5, 20, -0.9, -0.14930823530984868263},
    {0.5, 20, -0.3, 0.18028715947998046556},
    {0.5, 20, 0.2, -0.0980421943445946368},
    {0.5, 20, 0.7, -0.20457394463834160532},
    {0.5, 20, 1, 1.0},
    {1, 0, -0.9, 1.0},
    {1, 0, -0.3, 1.0},
    {1, 0, 0.2, 1.0},
    {1, 0, 0.7, 1.0},
    {1, 0, 1, 1.0},
    {1, 1, -0.9, -1.8},
    {1, 1, -0.3, -0.6},
    {1, 1, 0.2, 0.4},
    {1, 1, 0.7, 1.4},
    {1, 1, 1, 2.0},
    {1, 2, -0.9, 2.24},
    {1, 2, -0.3, -0.64},
    {1, 2, 0.2, -0.84},
    {1, 2, 0.7, 0.96},
    {1, 2, 1, 3.0},
    {1, 5, -0.9, -0.96768},
    {1, 5, -0.3, -1.01376},
    {1, 5, 0.2, 0.95424},
    {1, 5, 0.7, -1.39776},
    {1, 5, 1, 6.0},
    {1, 10, -0.9, -2.2234571776},
    {1, 10, -0.3, 1.0252491776},
    {1, 10, 0.2, 0.6128946176},
    {1, 10, 0.7, 0.8754584576},
    {1, 10, 1, 11.0},
    {1, 20, -0.9, -0.10729319922321588224},
    {1, 20, -0.3, 1.0413172668589775258},
    {1, 20, 0.2, -0.47480370245611290624},
    {1, 20, 0.7, -1.1748116344605140582},
    {1, 20, 1, 21.0},
    {1.5, 0, -0.9, 1.0},
    {1.5, 0, -0.3, 1.0},
    {1.5, 0, 0.2, 1.0},
    {1.5, 0, 0.7, 1.0},
    {1.5, 0, 1, 1.0},
    {1.5, 1, -0.9, -2.7},
    {1.5, 1, -0.3, -0.9},
    {1.5, 1, 0.2, 0.6},
    {1.5, 1, 0.7, 2.1},
    {1.5, 1, 1, 3.0},
    {1.5, 2, -0.9, 4.575},
    {1.5, 2, -0.3, -0.825},
    {1.5, 2, 0.2, -1.2},
    {1.5, 2, 0.7, 2.175},
    {1.5, 2, 1, 6.0},
    {1.5, 5, -0.9, -5.55494625},
    {1.5, 5, -0.3, -2.02174875},
    {1.5, 5, 0.2, 2.02272},
    {1.5, 5, 0.7, -3.26468625},
    {1.5, 5, 1, 21.0},
    {1.5, 10, -0.9, -9.179416897238671875},
    {1.5, 10, -0.3, 2.727528230070703125},
    {1.5, 10, 0.2, 1.8784229376},
    {1.5, 10, 0.7, 3.853611033898828125},
    {1.5, 10, 1, 66.0},
    {1.5, 20, -0.9, 5.9160104370800789928},
    {1.5, 20, -0.3, 3.8357331041771969291},
    {1.5, 20, 0.2, -1.4390389787381465088},
    {1.5, 20, 0.7, -3.5876173962941677001},
    {1.5, 20, 1, 231.0},
    {2.5, 0, -0.9, 1.0},
    {2.5, 0, -0.3, 1.0},
    {2.5, 0, 0.2, 1.0},
    {2.5, 0, 0.7, 1.0},
    {2.5, 0, 1, 1.0},
    {2.5, 1, -0.9, -4.5},
    {2.5, 1, -0.3, -1.5},
    {2.5, 1, 0.2, 1.0},
    {2.5, 1, 0.7, 3.5},
    {2.5, 1, 1, 5.0},
    {2.5, 2, -0.9, 11.675},
    {2.5, 2, -0.3, -0.925},
    {2.5, 2, 0.2, -1.8},
    {2.5, 2, 0.7, 6.075},
    {2.5, 2, 1, 15.0},
    {2.5, 5, -0.9, -46.59393375},
    {2.5, 5, -0.3, -4.92841125},
    {2.5, 5, 0.2, 5.68512},
    {2.5, 5, 0.7, -8.38947375},
    {2.5, 5, 1, 126.0},
    {2.5, 10, -0.9, -41.645024699012109375},
    {2.5, 10, -0.3, 10.749942922859765625},
    {2.5, 10, 0.2, 9.7899017216},
    {2.5, 10, 0.7, 27.178898356375390625},
    {2.5, 10, 1, 1001.0},
    {2.5, 20, -0.9, 226.57233483904297322},
    {2.5, 20, -0.3, 27.278767360826789233},
    {2.5, 20, 0.2, -5.8979559765917564928},
    {2.5, 20, 0.7, 5.6610968167283585594},
    {2.5, 20, 1, 10626.0},
};

struct BetaValue {
  int d;
  int n;
  int k;
  double value;
};

inline constexpr BetaValue kBeta[] = {
    {2, 1, 0, 1.0},
    {2, 2, 0, 0.66666666666666666667},
    {2, 2, 1, 0.33333333333333333333},
    {2, 3, 0, 0.4},
    {2, 3, 1, 0.6},
    {2, 6, 0, 0.069264069264069264069},
    {2, 6, 1, 0.31168831168831168831},
    {2, 6, 2, 0.47619047619047619048},
    {2, 6, 3, 0.14285714285714285714},
    {2, 9, 0, 0.010530645824763471822},
    {2, 9, 1, 0.078979843685726038667},
    {2, 9, 2, 0.24615384615384615385},
    {2, 9, 3, 0.39160839160839160839},
    {2, 9, 4, 0.27272727272727272727},
    {3, 1, 0, 0.5},
    {3, 2, 0, 0.25},
    {3, 2, 1, 0.25},
    {3, 3, 0, 0.125},
    {3, 3, 1, 0.25},
    {3, 6, 0, 0.015625},
    {3, 6, 1, 0.078125},
    {3, 6, 2, 0.140625},
    {3, 6, 3, 0.078125},
    {3, 9, 0, 0.001953125},
    {3, 9, 1, 0.015625},
    {3, 9, 2, 0.052734375},
    {3, 9, 3, 0.09375},
    {3, 9, 4, 0.08203125},
    {4, 1, 0, 0.33333333333333333333},
    {4, 2, 0, 0.13333333333333333333},
    {4, 2, 1, 0.2},
    {4, 3, 0, 0.057142857142857142857},
    {4, 3, 1, 0.14285714285714285714},
    {4, 6, 0, 0.0053280053280053280053},
    {4, 6, 1, 0.029304029304029304029},
    {4, 6, 2, 0.060606060606060606061},
    {4, 6, 3, 0.047619047619047619048},
    {4, 9, 0, 0.00055424451709281430644},
    {4, 9, 1, 0.0047110783952889216047},
    {4, 9, 2, 0.017112299465240641711},
    {4, 9, 3, 0.033566433566433566434},
    {4, 9, 4, 0.034965034965034965035},
};

struct NormValue {
  double lambda;
  int n;
  double value;
};

inline constexpr NormValue kNormSquared[] = {
    {0.5, 0, 2.0},
    {0.5, 1, 0.66666666666666666667},
    {0.5, 4, 0.22222222222222222222},
    {0.5, 7, 0.13333333333333333333},
    {1, 0, 1.5707963267948966192},
    {1, 1, 1.5707963267948966192},
    {1, 4, 1.5707963267948966192},
    {1, 7, 1.5707963267948966192},
    {1.5, 0, 1.3333333333333333333},
    {1.5, 1, 2.4},
    {1.5, 4, 5.4545454545454545455},
    {1.5, 7, 8.4705882352941176471},
};

inline constexpr double kSurfaceArea[] = {
    6.2831853071795864769,  // d = 1
    12.566370614359172954,  // d = 2
    19.739208802178717238,  // d = 3
    26.318945069571622984,  // d = 4
    31.006276680299820175,  // d = 5
    33.073361792319808187,  // d = 6
};

struct HarmonicDim {
  int d;
  int n;
  unsigned long long value;
};

inline constexpr HarmonicDim kHarmonicDim[] = {
    {1, 0, 1ULL},
    {1, 5, 2ULL},
    {2, 0, 1ULL},
    {2, 3, 7ULL},
    {2, 10, 21ULL},
    {3, 4, 25ULL},
    {4, 6, 140ULL},
    {6, 12, 10556ULL},
};

inline constexpr double kExample1AtHalfPiOver3 = 0.21317750042096437393;
inline constexpr double kExample1SeriesAtHalfPiOver3 = 0.21317750042096437393;
inline constexpr double kExample1AtZero = 0.69314718055994530942;
inline constexpr double kExample2AtPi = 0.84292036732051033808;
inline constexpr double kExample3AtOneHalfPi = 0.043213918263772249774;
inline constexpr double kExample3AtPoint7PiOver6 = 0.23082935331934865831;
// Taylor coefficients of exp(0.7 arcsin x).
inline constexpr double kExpArcsinCoeffs[] = {1.0, 0.7, 0.245, 0.17383333333333333333, 0.091670833333333333333, 0.082483916666666666667, 0.050388401388888888889, 0.050059881805555555556, 0.032833442262152777778};
inline constexpr double kExample4D2 = 1.005454501645597411;
inline constexpr double kExample4D3 = 1.0109387548793966468;
inline constexpr double kExample5 = 1.0457065721110722621;
inline constexpr double kExample5AtOneHalfPi = 0.5403023058681397174;
inline constexpr double kExample5Point8HalfPi = 0.69670670934716542092;

inline constexpr double kGauss5Nodes[] = {-0.9061798459386639928, -0.53846931010568309104, 0.0, 0.53846931010568309104, 0.9061798459386639928};
inline constexpr double kGauss5Weights[] = {0.23692688505618908751, 0.47862867049936646804, 0.56888888888888888889, 0.47862867049936646804, 0.23692688505618908751};

}  // namespace oracle
