#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/kvtext.hpp"

namespace nnc {

class ThreadPool;

// 4D gridded scalar field over (time, pressure, latitude, longitude),
// row-major with longitude fastest. Longitude is periodic with period 360.
// Immutable after load; safe to share across threads for reading.
struct GridField4D {
    std::string name;
    std::string units;
    std::vector<double> times;      // hours, strictly increasing
    std::vector<double> pressures;  // hPa, strictly increasing
    std::vector<double> lats;       // degrees in [-90, 90], strictly increasing
    std::vector<double> lons;       // degrees in [0, 360), strictly increasing
    std::vector<float> values;

    size_t nt() const { return times.size(); }
    size_t np() const { return pressures.size(); }
    size_t nlat() const { return lats.size(); }
    size_t nlon() const { return lons.size(); }
    size_t size() const { return values.size(); }

    size_t index(size_t it, size_t ip, size_t il, size_t io) const {
        return ((it * np() + ip) * nlat() + il) * nlon() + io;
    }
    float at(size_t it, size_t ip, size_t il, size_t io) const { return values[index(it, ip, il, io)]; }
    float& at(size_t it, size_t ip, size_t il, size_t io) { return values[index(it, ip, il, io)]; }

    double dynamic_range() const;  // global max - min

    // Throws if any invariant is violated (shape, ordering, finiteness).
    void validate() const;

    bool same_grid(const GridField4D& other) const;
};

GridField4D load_field(const std::string& path);
void store_field(const GridField4D& field, const std::string& path);

// Trilinear interpolation over (time, lat, lon) at an exact pressure level.
// Longitude wraps across the 360->0 seam; latitude clamps to the outermost
// rows; queries exactly on grid coordinates return the stored value exactly.
// Throws DomainError when t is outside the time range or p_index is invalid.
double sample_value(const GridField4D& field, double t, size_t p_index, double psi_deg, double phi_deg);

// w_i = cos(lat_i) / sum_i cos(lat_i); nonnegative, sums to 1.
std::vector<double> latitude_weights(const std::vector<double>& lats_deg);

struct ErrorReport {
    double weighted_rmse = 0;
    double weighted_mae = 0;
    double max_abs_error = 0;
    double quantile_q = 0;
    double quantile_value = 0;
    std::vector<double> hist_edges;     // hist_counts.size() + 1
    std::vector<uint64_t> hist_counts;  // counts of signed errors, sum = point count
    size_t nlat = 0, nlon = 0;
    std::vector<double> per_location_mean;  // (lat, lon), averaged over time and pressure
    std::vector<double> per_location_std;
};

// Latitude-weighted error statistics between two fields on the same grid.
// RMSE/MAE weight the horizontal mean by normalized cos(lat) and take a plain
// mean over time and pressure; the quantile is unweighted over all points.
// Results are independent of the worker count.
ErrorReport error_report(const GridField4D& original, const GridField4D& reconstructed, double q,
                         ThreadPool* pool = nullptr, int hist_bins = 64);

// One longitude-periodic mode of the synthetic generator.
struct SynthMode {
    double amp = 1.0;
    int zonal = 1;        // integer wavenumber in longitude
    int merid = 0;        // wavenumber in latitude
    double omega = 0.0;   // rad per time unit
    double phase_lon = 0;
    double phase_time = 0;
    double p_slope = 0;   // level profile 1 + p_slope * (p/p_max - 1/2)
};

// Desk-scale stand-in for reanalysis data: a band-limited sum of modes plus an
// optional stratified baseline, deterministic in the seed.
struct SynthSpec {
    std::string name = "synthetic";
    std::string units = "1";
    size_t time_count = 1;
    double time_start = 0.0;
    double time_step = 24.0;
    std::vector<double> pressures{500.0};
    size_t lat_count = 46;
    size_t lon_count = 90;
    int mode_count = 0;  // random modes drawn from the ranges below
    double mode_amp = 1.0;
    int max_zonal = 4;
    int max_merid = 3;
    double max_omega = 0.05;
    std::vector<SynthMode> explicit_modes;  // used verbatim, in addition to random ones
    bool has_baseline = false;
    double base_constant = 0;
    double base_pressure = 0;  // * (p / p_max)
    double base_latitude = 0;  // * sin(lat)

    static SynthSpec from_kv(const KvMap& kv);
};

GridField4D synth_field(const SynthSpec& spec, uint64_t seed);

// Cell-centered equiangular latitude rows and uniform longitudes.
std::vector<double> make_lat_grid(size_t n);
std::vector<double> make_lon_grid(size_t n);

}  // namespace nnc
