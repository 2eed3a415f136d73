#include "core/grid_field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <limits>

#include "core/bytes.hpp"
#include "core/crc32.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"
#include "core/threading.hpp"
#include "core/trig.hpp"

namespace nnc {

namespace {

constexpr char kMagic[4] = {'N', 'N', 'G', 'F'};
constexpr uint32_t kVersion = 1;
constexpr uint64_t kMaxElements = 1ull << 33;  // 32 GiB of f32; reject absurd headers

void check_axis(const std::vector<double>& v, const char* name, double lo, double hi, bool hi_open) {
    if (v.empty()) throw FormatError(std::string(name) + " axis is empty");
    for (size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) throw FormatError(std::string(name) + " coordinate not finite");
        if (v[i] < lo || (hi_open ? v[i] >= hi : v[i] > hi))
            throw FormatError(std::string(name) + " coordinate " + KvMap::format_f64(v[i]) + " out of range");
        if (i > 0 && !(v[i] > v[i - 1]))
            throw FormatError(std::string(name) + " coordinates not strictly increasing");
    }
}

// Bracketing index and fraction for interpolation along a strictly
// increasing axis; x must already be inside [v.front(), v.back()].
void bracket(const std::vector<double>& v, double x, size_t& i, double& f) {
    if (v.size() == 1) {
        i = 0;
        f = 0.0;
        return;
    }
    auto it = std::upper_bound(v.begin(), v.end(), x);
    size_t hi = static_cast<size_t>(it - v.begin());
    i = std::min(std::max<size_t>(hi, 1) - 1, v.size() - 2);
    f = (x - v[i]) / (v[i + 1] - v[i]);
}

// (1-f)*a + f*b: exact at f == 0 and f == 1.
inline double lerp2(double a, double b, double f) { return (1.0 - f) * a + f * b; }

struct Kahan {
    double sum = 0, c = 0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

double GridField4D::dynamic_range() const {
    if (values.empty()) return 0.0;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return static_cast<double>(*hi) - static_cast<double>(*lo);
}

void GridField4D::validate() const {
    check_axis(times, "time", -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false);
    check_axis(pressures, "pressure", -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false);
    check_axis(lats, "latitude", -90.0, 90.0, false);
    check_axis(lons, "longitude", 0.0, 360.0, true);
    const uint64_t n = static_cast<uint64_t>(nt()) * np() * nlat() * nlon();
    if (n != values.size())
        throw FormatError("value count " + std::to_string(values.size()) + " does not match grid shape " +
                          std::to_string(n));
    for (size_t i = 0; i < values.size(); ++i)
        if (!std::isfinite(values[i])) throw FormatError("non-finite value at flat index " + std::to_string(i));
}

bool GridField4D::same_grid(const GridField4D& other) const {
    return times == other.times && pressures == other.pressures && lats == other.lats && lons == other.lons;
}

void store_field(const GridField4D& field, const std::string& path) {
    field.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    put_bytes(out, kMagic, 4);
    put_u32(out, kVersion);
    put_string(out, field.name);
    put_string(out, field.units);
    put_u64(out, field.nt());
    put_u64(out, field.np());
    put_u64(out, field.nlat());
    put_u64(out, field.nlon());
    for (const auto* axis : {&field.times, &field.pressures, &field.lats, &field.lons})
        for (double v : *axis) put_f64(out, v);
    static_assert(std::endian::native == std::endian::little, "payload bulk I/O assumes a little-endian host");
    put_bytes(out, field.values.data(), field.values.size() * 4);
    put_u32(out, crc32(field.values.data(), field.values.size() * 4));
    out.flush();
    if (!out) throw IoError("write to '" + path + "' failed");
}

GridField4D load_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    ByteReader r(in);

    char magic[4];
    r.read_exact(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("bad magic at byte 0: not a field container");
    const uint32_t version = r.u32();
    if (version != kVersion)
        throw FormatError("unsupported container version " + std::to_string(version) + " at byte 4");

    GridField4D f;
    f.name = r.string();
    f.units = r.string();
    uint64_t dims[4];
    const uint64_t dims_at = r.offset();
    for (auto& d : dims) d = r.u64();
    uint64_t n = 1;
    for (uint64_t d : dims) {
        if (d == 0 || d > kMaxElements || n > kMaxElements / std::max<uint64_t>(d, 1))
            throw FormatError("implausible dimensions at byte " + std::to_string(dims_at));
        n *= d;
    }
    auto read_axis = [&](std::vector<double>& v, uint64_t count) {
        v.resize(count);
        for (auto& x : v) x = r.f64();
    };
    read_axis(f.times, dims[0]);
    read_axis(f.pressures, dims[1]);
    read_axis(f.lats, dims[2]);
    read_axis(f.lons, dims[3]);

    const uint64_t payload_at = r.offset();
    f.values.resize(n);
    static_assert(std::endian::native == std::endian::little, "payload bulk I/O assumes a little-endian host");
    r.read_exact(f.values.data(), n * 4);
    const uint32_t stored_crc = r.u32();
    const uint32_t computed_crc = crc32(f.values.data(), n * 4);
    if (stored_crc != computed_crc)
        throw FormatError("payload CRC mismatch at byte " + std::to_string(payload_at + n * 4));
    if (in.peek() != std::char_traits<char>::eof())
        throw FormatError("dimension mismatch: trailing bytes after byte " + std::to_string(r.offset()));

    for (size_t i = 0; i < f.values.size(); ++i)
        if (!std::isfinite(f.values[i]))
            throw FormatError("non-finite payload value at byte " + std::to_string(payload_at + i * 4));
    try {
        f.validate();
    } catch (const FormatError& e) {
        throw FormatError(std::string(e.what()) + " (header at byte " + std::to_string(dims_at) + ")");
    }
    return f;
}

double sample_value(const GridField4D& field, double t, size_t p_index, double psi_deg, double phi_deg) {
    if (p_index >= field.np())
        throw DomainError("pressure index " + std::to_string(p_index) + " out of range");
    if (!(t >= field.times.front() && t <= field.times.back()))
        throw DomainError("time " + KvMap::format_f64(t) + " outside [" + KvMap::format_f64(field.times.front()) +
                          ", " + KvMap::format_f64(field.times.back()) + "]");

    size_t ti;
    double tf;
    bracket(field.times, t, ti, tf);

    const double psi = std::clamp(psi_deg, field.lats.front(), field.lats.back());
    size_t li;
    double lf;
    bracket(field.lats, psi, li, lf);

    double w = std::fmod(phi_deg, 360.0);
    if (w < 0.0) w += 360.0;
    const size_t nlon = field.nlon();
    size_t o0 = 0, o1 = 0;
    double of = 0.0;
    if (nlon > 1) {
        if (w < field.lons.front() || w >= field.lons.back()) {
            // seam interval from the last column around to the first
            o0 = nlon - 1;
            o1 = 0;
            const double span = field.lons.front() + 360.0 - field.lons.back();
            const double rel = (w >= field.lons.back()) ? w - field.lons.back() : w + 360.0 - field.lons.back();
            of = rel / span;
        } else {
            bracket(field.lons, w, o0, of);
            o1 = o0 + 1;
        }
    }

    const size_t t1 = (field.nt() > 1) ? ti + 1 : ti;
    const size_t l1 = (field.nlat() > 1) ? li + 1 : li;
    auto plane = [&](size_t it) {
        const double v00 = field.at(it, p_index, li, o0);
        const double v01 = field.at(it, p_index, li, o1);
        const double v10 = field.at(it, p_index, l1, o0);
        const double v11 = field.at(it, p_index, l1, o1);
        return lerp2(lerp2(v00, v01, of), lerp2(v10, v11, of), lf);
    };
    return lerp2(plane(ti), plane(t1), tf);
}

std::vector<double> latitude_weights(const std::vector<double>& lats_deg) {
    if (lats_deg.empty()) throw DomainError("empty latitude vector");
    std::vector<double> w(lats_deg.size());
    double sum = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
        if (!(lats_deg[i] >= -90.0 && lats_deg[i] <= 90.0))
            throw DomainError("latitude " + KvMap::format_f64(lats_deg[i]) + " outside [-90, 90]");
        w[i] = cos_deg(lats_deg[i]);
        sum += w[i];
    }
    for (auto& x : w) x /= sum;
    return w;
}

ErrorReport error_report(const GridField4D& original, const GridField4D& reconstructed, double q, ThreadPool* pool,
                         int hist_bins) {
    if (!original.same_grid(reconstructed) || original.values.size() != reconstructed.values.size())
        throw DomainError("error_report requires identical grids");
    if (!(q > 0.0 && q < 1.0)) throw UsageError("quantile must be in (0, 1)");
    if (hist_bins < 1) throw UsageError("histogram needs at least one bin");

    const size_t nt = original.nt(), np = original.np(), nlat = original.nlat(), nlon = original.nlon();
    const size_t slices = nt * np;
    const size_t hsize = nlat * nlon;
    const std::vector<double> w = latitude_weights(original.lats);

    ThreadPool local(1);
    ThreadPool& tp = pool ? *pool : local;

    // Pass A: per-(t,p) weighted slice moments; fixed-order reduce afterwards.
    std::vector<double> slice_mse(slices), slice_mae(slices), slice_max(slices);
    tp.for_chunks(slices, 1, [&](size_t begin, size_t end) {
        for (size_t s = begin; s < end; ++s) {
            const float* a = original.values.data() + s * hsize;
            const float* b = reconstructed.values.data() + s * hsize;
            Kahan mse, mae;
            double mx = 0.0;
            for (size_t i = 0; i < nlat; ++i) {
                Kahan row2, row1;
                double rmx = 0.0;
                for (size_t j = 0; j < nlon; ++j) {
                    const double e = static_cast<double>(a[i * nlon + j]) - static_cast<double>(b[i * nlon + j]);
                    row2.add(e * e);
                    row1.add(std::fabs(e));
                    rmx = std::max(rmx, std::fabs(e));
                }
                const double wi = w[i] / static_cast<double>(nlon);
                mse.add(wi * row2.sum);
                mae.add(wi * row1.sum);
                mx = std::max(mx, rmx);
            }
            slice_mse[s] = mse.sum;
            slice_mae[s] = mae.sum;
            slice_max[s] = mx;
        }
    });
    Kahan total_mse, total_mae;
    double max_abs = 0.0;
    for (size_t s = 0; s < slices; ++s) {
        total_mse.add(slice_mse[s]);
        total_mae.add(slice_mae[s]);
        max_abs = std::max(max_abs, slice_max[s]);
    }

    ErrorReport rep;
    rep.weighted_rmse = std::sqrt(total_mse.sum / static_cast<double>(slices));
    rep.weighted_mae = total_mae.sum / static_cast<double>(slices);
    rep.max_abs_error = max_abs;
    rep.quantile_q = q;
    rep.nlat = nlat;
    rep.nlon = nlon;

    // Pass B: per-location mean/std over (t, p), two-pass for stability.
    rep.per_location_mean.assign(hsize, 0.0);
    rep.per_location_std.assign(hsize, 0.0);
    tp.for_chunks(hsize, 4096, [&](size_t begin, size_t end) {
        for (size_t loc = begin; loc < end; ++loc) {
            Kahan m;
            for (size_t s = 0; s < slices; ++s) {
                const size_t idx = s * hsize + loc;
                m.add(static_cast<double>(original.values[idx]) - static_cast<double>(reconstructed.values[idx]));
            }
            const double mean = m.sum / static_cast<double>(slices);
            Kahan v;
            for (size_t s = 0; s < slices; ++s) {
                const size_t idx = s * hsize + loc;
                const double e =
                    static_cast<double>(original.values[idx]) - static_cast<double>(reconstructed.values[idx]);
                v.add((e - mean) * (e - mean));
            }
            rep.per_location_mean[loc] = mean;
            rep.per_location_std[loc] = std::sqrt(v.sum / static_cast<double>(slices));
        }
    });

    // Quantile (unweighted, linear interpolation between order statistics)
    // and signed-error histogram; serial, the sort dominates anyway.
    const size_t n = original.values.size();
    std::vector<double> abs_err(n);
    double emin = std::numeric_limits<double>::infinity();
    double emax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < n; ++i) {
        const double e = static_cast<double>(original.values[i]) - static_cast<double>(reconstructed.values[i]);
        abs_err[i] = std::fabs(e);
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    {
        const double h = q * static_cast<double>(n - 1);
        const size_t lo = static_cast<size_t>(h);
        std::nth_element(abs_err.begin(), abs_err.begin() + lo, abs_err.end());
        const double vlo = abs_err[lo];
        double vhi = vlo;
        if (lo + 1 < n) {
            vhi = *std::min_element(abs_err.begin() + lo + 1, abs_err.end());
        }
        rep.quantile_value = vlo + (h - static_cast<double>(lo)) * (vhi - vlo);
    }
    if (emin == emax) {
        emin -= 0.5;
        emax += 0.5;
    }
    rep.hist_edges.resize(hist_bins + 1);
    for (int b = 0; b <= hist_bins; ++b)
        rep.hist_edges[b] = emin + (emax - emin) * static_cast<double>(b) / hist_bins;
    rep.hist_counts.assign(hist_bins, 0);
    const double scale = hist_bins / (emax - emin);
    for (size_t i = 0; i < n; ++i) {
        const double e = static_cast<double>(original.values[i]) - static_cast<double>(reconstructed.values[i]);
        auto b = static_cast<int64_t>((e - emin) * scale);
        b = std::clamp<int64_t>(b, 0, hist_bins - 1);
        ++rep.hist_counts[static_cast<size_t>(b)];
    }
    return rep;
}

std::vector<double> make_lat_grid(size_t n) {
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = -90.0 + (static_cast<double>(i) + 0.5) * (180.0 / static_cast<double>(n));
    return v;
}

std::vector<double> make_lon_grid(size_t n) {
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i) * (360.0 / static_cast<double>(n));
    return v;
}

SynthSpec SynthSpec::from_kv(const KvMap& kv) {
    for (const auto& [key, value] : kv.entries()) {
        (void)value;
        static const char* known[] = {"name",           "units",          "time.count",    "time.start",
                                      "time.step",      "pressures",      "lat.count",     "lon.count",
                                      "modes.count",    "modes.amp",      "modes.max_zonal",
                                      "modes.max_merid", "modes.max_omega", "baseline.constant",
                                      "baseline.pressure", "baseline.latitude"};
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok && key.rfind("mode.", 0) != 0) throw UsageError("unknown synthetic-spec key '" + key + "'");
    }
    SynthSpec s;
    s.name = kv.get_or("name", s.name);
    s.units = kv.get_or("units", s.units);
    s.time_count = static_cast<size_t>(kv.get_i64("time.count", 1));
    s.time_start = kv.get_f64("time.start", 0.0);
    s.time_step = kv.get_f64("time.step", 24.0);
    if (kv.has("pressures")) s.pressures = kv.get_f64_list("pressures");
    s.lat_count = static_cast<size_t>(kv.get_i64("lat.count", 46));
    s.lon_count = static_cast<size_t>(kv.get_i64("lon.count", 90));
    s.mode_count = static_cast<int>(kv.get_i64("modes.count", 0));
    s.mode_amp = kv.get_f64("modes.amp", 1.0);
    s.max_zonal = static_cast<int>(kv.get_i64("modes.max_zonal", 4));
    s.max_merid = static_cast<int>(kv.get_i64("modes.max_merid", 3));
    s.max_omega = kv.get_f64("modes.max_omega", 0.05);
    s.has_baseline =
        kv.has("baseline.constant") || kv.has("baseline.pressure") || kv.has("baseline.latitude");
    s.base_constant = kv.get_f64("baseline.constant", 0.0);
    s.base_pressure = kv.get_f64("baseline.pressure", 0.0);
    s.base_latitude = kv.get_f64("baseline.latitude", 0.0);
    // explicit modes: mode.<i> = amp,zonal,merid,omega,phase_lon,phase_time,p_slope
    for (int i = 0;; ++i) {
        const std::string key = "mode." + std::to_string(i);
        if (!kv.has(key)) break;
        auto v = kv.get_f64_list(key);
        if (v.size() != 7) throw UsageError(key + " needs 7 comma-separated numbers");
        SynthMode m;
        m.amp = v[0];
        m.zonal = static_cast<int>(v[1]);
        m.merid = static_cast<int>(v[2]);
        m.omega = v[3];
        m.phase_lon = v[4];
        m.phase_time = v[5];
        m.p_slope = v[6];
        s.explicit_modes.push_back(m);
    }
    return s;
}

GridField4D synth_field(const SynthSpec& spec, uint64_t seed) {
    if (spec.time_count < 1 || spec.lat_count < 1 || spec.lon_count < 1 || spec.pressures.empty())
        throw UsageError("synthetic spec needs at least one point along every axis");
    if (spec.time_count > 1 && spec.time_step <= 0.0) throw UsageError("time.step must be positive");
    if (spec.mode_count < 0) throw UsageError("modes.count must be nonnegative");
    if (spec.mode_count == 0 && spec.explicit_modes.empty() && !spec.has_baseline)
        throw UsageError("degenerate spec: no modes and no baseline; request a constant field explicitly "
                         "via baseline.constant");

    std::vector<SynthMode> modes = spec.explicit_modes;
    SplitMix rng(derive_seed(seed, 0x53594E54ull));  // "SYNT"
    for (int k = 0; k < spec.mode_count; ++k) {
        SynthMode m;
        m.amp = spec.mode_amp * (0.3 + 0.7 * rng.next_unit());
        m.zonal = 1 + static_cast<int>(rng.next_below(static_cast<uint64_t>(std::max(1, spec.max_zonal))));
        m.merid = static_cast<int>(rng.next_below(static_cast<uint64_t>(spec.max_merid + 1)));
        m.omega = spec.max_omega * rng.next_unit();
        m.phase_lon = 2.0 * 3.14159265358979323846 * rng.next_unit();
        m.phase_time = 2.0 * 3.14159265358979323846 * rng.next_unit();
        m.p_slope = 2.0 * rng.next_unit() - 1.0;
        modes.push_back(m);
    }

    GridField4D f;
    f.name = spec.name;
    f.units = spec.units;
    f.times.resize(spec.time_count);
    for (size_t i = 0; i < spec.time_count; ++i) f.times[i] = spec.time_start + spec.time_step * static_cast<double>(i);
    f.pressures = spec.pressures;
    f.lats = make_lat_grid(spec.lat_count);
    f.lons = make_lon_grid(spec.lon_count);
    f.values.resize(f.nt() * f.np() * f.nlat() * f.nlon());

    const double p_max = *std::max_element(f.pressures.begin(), f.pressures.end());
    size_t idx = 0;
    for (size_t it = 0; it < f.nt(); ++it) {
        for (size_t ip = 0; ip < f.np(); ++ip) {
            const double p_hat = f.pressures[ip] / p_max;
            for (size_t il = 0; il < f.nlat(); ++il) {
                const double psi = deg2rad(f.lats[il]);
                double base = spec.base_constant + spec.base_pressure * p_hat + spec.base_latitude * sin_deg(f.lats[il]);
                for (size_t io = 0; io < f.nlon(); ++io) {
                    const double phi = deg2rad(f.lons[io]);
                    double v = base;
                    for (const SynthMode& m : modes) {
                        v += m.amp * std::cos(m.zonal * phi + m.phase_lon) * std::cos(m.merid * psi) *
                             std::cos(m.omega * f.times[it] + m.phase_time) * (1.0 + m.p_slope * (p_hat - 0.5));
                    }
                    f.values[idx++] = static_cast<float>(v);
                }
            }
        }
    }
    f.validate();
    return f;
}

}  // namespace nnc
