// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "risemf/linalg.hpp"

namespace risemf {

using Rng = std::mt19937_64;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

double distance(const Vec3& a, const Vec3& b);

/// Horizontal-plane azimuth of the direction from -> to, in radians.
double azimuth(const Vec3& from, const Vec3& to);

/// Cell layout: BS and RIS positions, users in an annulus around the BS.
struct Geometry {
    Vec3 bs_position{0.0, 0.0, 10.0};
    Vec3 ris_position{30.0, 20.0, 10.0};
    double user_height = 1.5;
    double r_min = 10.0;
    double r_max = 150.0;

    void validate() const;
};

enum class UserKind { Data, Voice };

struct UserProfile {
    UserKind kind = UserKind::Data;
    double r_th = 6.0;          // bits/s/Hz
    double bandwidth_hz = 100e6;
    double sar_ref = 41e-4;     // W/kg per W of transmit power

    static UserProfile data();
    static UserProfile voice();
    void validate() const;
};

/// Mix of user kinds drawn per drop.
struct UserMix {
    double data_probability = 0.75;
    UserProfile data = UserProfile::data();
    UserProfile voice = UserProfile::voice();
};

struct User {
    Vec3 position;
    UserProfile profile;
};

enum class LinkKind { LOS, NLOS };

/// Log-distance path loss, PL(d) = intercept + slope * log10(d) in dB.
///
/// The default LOS intercept is the 3GPP UMi loss form (+35.6 dB); negative_intercept()
/// reproduces the negative-intercept variant, which acts as a gain below ~42 m.
struct PathLossModel {
    double los_intercept_db = 35.6;
    double los_slope_db = 22.0;
    double nlos_intercept_db = 32.6;
    double nlos_slope_db = 36.7;

    static PathLossModel negative_intercept();
};

double pathloss_db(LinkKind kind, double distance_m, const PathLossModel& model = {});

/// Linear amplitude factor 10^(-loss_db / 20).
double amplitude_from_db(double loss_db);

/// Uniform linear array response, entry i = exp(j 2 pi spacing i sin(angle)).
CVector steering_vector(int n_elements, double angle_rad, double spacing_wavelengths = 0.5);

struct ChannelParams {
    double rician_kappa = 10.0;   // may be +inf for a pure LOS channel
    std::uint64_t seed = 1;
    double element_spacing = 0.5; // wavelengths
    PathLossModel pathloss{};
};

/// Channel matrices of one realization.
struct ChannelSet {
    CMatrix h_u; // N x K, users -> RIS
    CMatrix h_r; // M x N, RIS -> BS
    CMatrix h_d; // M x K, users -> BS

    int users() const { return static_cast<int>(h_u.cols()); }
    int elements() const { return static_cast<int>(h_u.rows()); }
    int antennas() const { return static_cast<int>(h_r.rows()); }

    /// Sub-channel seen by the first m antennas and first n RIS elements.
    ChannelSet leading_block(int m, int n) const;

    /// Same realization with the RIS link removed.
    ChannelSet without_ris() const;

    void validate() const;
};

/// Area-uniform user positions in the annulus r_min <= r <= r_max around the BS.
std::vector<Vec3> place_users(const Geometry& geometry, int k, Rng& rng);

std::vector<UserProfile> draw_profiles(const UserMix& mix, int k, Rng& rng);

std::vector<User> draw_users(const Geometry& geometry, const UserMix& mix, int k, Rng& rng);

/// Rician RIS links and Rayleigh direct links for the given users. Randomness
/// comes only from params.seed, so equal inputs give bit-identical channels.
ChannelSet synthesize_channels(const Geometry& geometry, std::span<const Vec3> users,
                               const ChannelParams& params, int m, int n);

ChannelSet synthesize_channels(const Geometry& geometry, std::span<const User> users,
                               const ChannelParams& params, int m, int n);

/// Independent stream for (master seed, tags...). Used for per-drop RNGs.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

} // namespace risemf
