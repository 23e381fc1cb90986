#pragma once

#include <stdexcept>
#include <string>

#include "megalink/orbit.hpp"
#include "megalink/tle.hpp"

namespace megalink {

/// Nonzero SGP4 status codes, numbered as in the reference implementation.
enum class Sgp4Status {
    ok = 0,
    mean_eccentricity = 1,
    mean_motion = 2,
    perturbed_eccentricity = 3,
    semi_latus_rectum = 4,
    decayed = 6,
};

char const* to_string(Sgp4Status status);

class PropagationError : public std::runtime_error {
public:
    PropagationError(int catalog_id, std::string const& name, Sgp4Status status,
                     double minutes_since_epoch);
    int catalog_id() const { return catalog_id_; }
    Sgp4Status status() const { return status_; }

private:
    int catalog_id_;
    Sgp4Status status_;
};

/// SGP4/SDP4 with WGS-72 constants and the improved operation mode.
///
/// The deep-space resonance integrator restarts from epoch on each call. Its
/// 720-minute grid makes the restart bit-identical to a cached run, and it
/// lets evaluate() be const and safe to share between threads.
class Sgp4Propagator {
public:
    explicit Sgp4Propagator(TwoLineElementSet const& tle);

    /// TEME position [km] and velocity [km/s] at minutes past the element epoch.
    Sgp4Status evaluate(double minutes, Vec3& position_km, Vec3& velocity_km_s) const noexcept;

    /// Throws PropagationError naming the object on any nonzero status.
    StateVector propagate(UtcInstant const& t) const;

    UtcInstant const& epoch() const { return epoch_; }
    int catalog_id() const { return catalog_id_; }
    std::string const& name() const { return name_; }
    /// Status of the evaluation at epoch performed during construction.
    Sgp4Status init_status() const { return init_status_; }
    bool deep_space() const { return method_ == 'd'; }

private:
    void initialize(double epoch_days_1950);

    UtcInstant epoch_;
    int catalog_id_{0};
    std::string name_;
    Sgp4Status init_status_{Sgp4Status::ok};

    // Mean elements, radians and radians/minute.
    double bstar_{0}, ecco_{0}, argpo_{0}, inclo_{0}, mo_{0}, no_kozai_{0}, nodeo_{0};
    double no_unkozai_{0};

    // Near-earth terms.
    int isimp_{0};
    char method_{'n'};
    double aycof_{0}, con41_{0}, cc1_{0}, cc4_{0}, cc5_{0}, d2_{0}, d3_{0}, d4_{0}, delmo_{0},
        eta_{0}, argpdot_{0}, omgcof_{0}, sinmao_{0}, t2cof_{0}, t3cof_{0}, t4cof_{0}, t5cof_{0},
        x1mth2_{0}, x7thm1_{0}, mdot_{0}, nodedot_{0}, xlcof_{0}, xmcof_{0}, nodecf_{0};

    // Deep-space terms.
    int irez_{0};
    double d2201_{0}, d2211_{0}, d3210_{0}, d3222_{0}, d4410_{0}, d4422_{0}, d5220_{0},
        d5232_{0}, d5421_{0}, d5433_{0}, dedt_{0}, del1_{0}, del2_{0}, del3_{0}, didt_{0},
        dmdt_{0}, dnodt_{0}, domdt_{0}, e3_{0}, ee2_{0}, peo_{0}, pgho_{0}, pho_{0}, pinco_{0},
        plo_{0}, se2_{0}, se3_{0}, sgh2_{0}, sgh3_{0}, sgh4_{0}, sh2_{0}, sh3_{0}, si2_{0},
        si3_{0}, sl2_{0}, sl3_{0}, sl4_{0}, gsto_{0}, xfact_{0}, xgh2_{0}, xgh3_{0}, xgh4_{0},
        xh2_{0}, xh3_{0}, xi2_{0}, xi3_{0}, xl2_{0}, xl3_{0}, xl4_{0}, xlamo_{0}, zmol_{0},
        zmos_{0};

    friend struct Sgp4Access;
};

/// Greenwich mean sidereal time [rad] from a UT1 Julian date (IAU-82).
double gmst_rad(double jd_ut1);

}  // namespace megalink
