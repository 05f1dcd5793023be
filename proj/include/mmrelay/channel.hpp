#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmrelay {

// The d^-alpha pathloss law diverges as d -> 0; all distances are clamped to
// this floor before any rate computation.
inline constexpr double kMinDistanceM = 1.0;

inline double dbm_to_watts(double dbm) {
  return std::pow(10.0, dbm / 10.0) * 1e-3;
}

// Link budget inputs. Defaults are 60 GHz-band measurement values: LOS/NLOS
// pathloss exponents 2.20/3.88 with unit coefficients, 4x antenna gains on
// both ends, 1 W transmit power, -40.87 dBm total noise power, 1 GHz
// bandwidth.
struct ChannelParams {
  double a_los = 1.0;
  double alpha_los = 2.20;
  double a_nlos = 1.0;
  double alpha_nlos = 3.88;
  double m_t = 4.0;
  double m_r = 4.0;
  double p_t = 1.0;                   // W
  double n0 = dbm_to_watts(-40.87);   // W
  double w = 1e9;                     // Hz

  bool operator==(const ChannelParams&) const = default;
};

inline void validate(const ChannelParams& p) {
  const auto require_positive = [](double v, const char* name) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(std::string("channel parameter must be positive: ") + name);
    }
  };
  require_positive(p.a_los, "a_los");
  require_positive(p.alpha_los, "alpha_los");
  require_positive(p.a_nlos, "a_nlos");
  require_positive(p.alpha_nlos, "alpha_nlos");
  require_positive(p.m_t, "m_t");
  require_positive(p.m_r, "m_r");
  require_positive(p.p_t, "p_t");
  require_positive(p.n0, "n0");
  require_positive(p.w, "w");
  if (p.alpha_nlos < p.alpha_los) {
    throw std::invalid_argument("alpha_nlos must be >= alpha_los");
  }
}

// Received power A * M_T * M_R * d^-alpha * P_T with the coefficient and
// exponent selected by the link's LOS state.
inline double received_power(double d, bool los, const ChannelParams& p) {
  if (d < kMinDistanceM) {
    throw std::domain_error("received_power: distance below the 1 m clamp");
  }
  const double a = los ? p.a_los : p.a_nlos;
  const double alpha = los ? p.alpha_los : p.alpha_nlos;
  return a * p.m_t * p.m_r * std::pow(d, -alpha) * p.p_t;
}

inline double snr(double d, bool los, const ChannelParams& p) {
  return received_power(d, los, p) / p.n0;
}

// Shannon rate in bits/s (log base 2; interference-free).
inline double link_rate(double d, bool los, const ChannelParams& p) {
  return p.w * std::log2(1.0 + snr(d, los, p));
}

}  // namespace mmrelay
