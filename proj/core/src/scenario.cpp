// SPDX-License-Identifier: Apache-2.0
#include "risemf/scenario.hpp"

#include <cmath>
#include <numbers>

#include "risemf/errors.hpp"

namespace risemf {

double distance(const Vec3& a, const Vec3& b)
{
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double azimuth(const Vec3& from, const Vec3& to)
{
    return std::atan2(to.y - from.y, to.x - from.x);
}

void Geometry::validate() const
{
    if (!(r_min > 0.0 && r_min < r_max)) {
        throw ConfigError("geometry: need 0 < r_min < r_max");
    }
    if (user_height < 0.0 || bs_position.z < 0.0 || ris_position.z < 0.0) {
        throw ConfigError("geometry: heights must be non-negative");
    }
}

UserProfile UserProfile::data()
{
    // 600 Mb/s over 100 MHz, phone held in front of the torso
    return {UserKind::Data, 600e6 / 100e6, 100e6, 41e-4};
}

UserProfile UserProfile::voice()
{
    // 13.3 kb/s over 7 kHz, phone at the head
    return {UserKind::Voice, 13.3e3 / 7e3, 7e3, 63e-4};
}

void UserProfile::validate() const
{
    if (!(r_th > 0.0)) {
        throw ConfigError("user profile: r_th must be positive");
    }
    if (!(sar_ref > 0.0)) {
        throw ConfigError("user profile: sar_ref must be positive");
    }
}

PathLossModel PathLossModel::negative_intercept()
{
    PathLossModel model;
    model.los_intercept_db = -35.6;
    return model;
}

double pathloss_db(LinkKind kind, double distance_m, const PathLossModel& model)
{
    if (!(distance_m > 0.0)) {
        throw DimensionError("pathloss_db: distance must be positive");
    }
    const double lg = std::log10(distance_m);
    return kind == LinkKind::LOS ? model.los_intercept_db + model.los_slope_db * lg
                                 : model.nlos_intercept_db + model.nlos_slope_db * lg;
}

double amplitude_from_db(double loss_db)
{
    return std::pow(10.0, -loss_db / 20.0);
}

CVector steering_vector(int n_elements, double angle_rad, double spacing_wavelengths)
{
    if (n_elements < 1) {
        throw DimensionError("steering_vector: n_elements must be >= 1");
    }
    const double step = 2.0 * std::numbers::pi * spacing_wavelengths * std::sin(angle_rad);
    CVector a(n_elements);
    for (int i = 0; i < n_elements; ++i) {
        a(i) = std::polar(1.0, step * i);
    }
    return a;
}

ChannelSet ChannelSet::leading_block(int m, int n) const
{
    if (m < 1 || n < 1 || m > antennas() || n > elements()) {
        throw DimensionError("leading_block: requested block exceeds the realization");
    }
    return {h_u.topRows(n), h_r.topLeftCorner(m, n), h_d.topRows(m)};
}

ChannelSet ChannelSet::without_ris() const
{
    return {h_u, CMatrix::Zero(h_r.rows(), h_r.cols()), h_d};
}

void ChannelSet::validate() const
{
    const auto k = h_u.cols();
    const auto n = h_u.rows();
    const auto m = h_r.rows();
    if (k < 1 || n < 1 || m < 1 || h_r.cols() != n || h_d.rows() != m || h_d.cols() != k) {
        throw DimensionError("channel set: inconsistent dimensions");
    }
    if (!h_u.allFinite() || !h_r.allFinite() || !h_d.allFinite()) {
        throw DimensionError("channel set: non-finite entry");
    }
}

std::vector<Vec3> place_users(const Geometry& geometry, int k, Rng& rng)
{
    if (k < 1) {
        throw DimensionError("place_users: K must be >= 1");
    }
    geometry.validate();
    // Area-uniform in the annulus: r^2 uniform on [r_min^2, r_max^2].
    std::uniform_real_distribution<double> r2(geometry.r_min * geometry.r_min,
                                              geometry.r_max * geometry.r_max);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
    std::vector<Vec3> users;
    users.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double r = std::sqrt(r2(rng));
        const double a = phi(rng);
        users.push_back({geometry.bs_position.x + r * std::cos(a),
                         geometry.bs_position.y + r * std::sin(a), geometry.user_height});
    }
    return users;
}

std::vector<UserProfile> draw_profiles(const UserMix& mix, int k, Rng& rng)
{
    std::bernoulli_distribution is_data(mix.data_probability);
    std::vector<UserProfile> profiles;
    profiles.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        profiles.push_back(is_data(rng) ? mix.data : mix.voice);
    }
    return profiles;
}

std::vector<User> draw_users(const Geometry& geometry, const UserMix& mix, int k, Rng& rng)
{
    const auto positions = place_users(geometry, k, rng);
    const auto profiles = draw_profiles(mix, k, rng);
    std::vector<User> users;
    users.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        users.push_back({positions[i], profiles[i]});
    }
    return users;
}

namespace {

struct RicianWeights {
    double los;
    double scatter;
};

RicianWeights rician_weights(double kappa)
{
    if (std::isinf(kappa)) {
        return {1.0, 0.0};
    }
    return {std::sqrt(kappa / (kappa + 1.0)), std::sqrt(1.0 / (kappa + 1.0))};
}

// Circularly-symmetric complex Gaussian with unit variance.
CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix out(rows, cols);
    // Column-major fill keeps the draw order independent of Eigen internals.
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(r, c) = {re, im};
        }
    }
    return out;
}

} // namespace

ChannelSet synthesize_channels(const Geometry& geometry, std::span<const Vec3> users,
                               const ChannelParams& params, int m, int n)
{
    const int k = static_cast<int>(users.size());
    if (k < 1) {
        throw DimensionError("synthesize_channels: need at least one user");
    }
    if (n < k || m < k) {
        throw DimensionError("synthesize_channels: zero-forcing needs N >= K and M >= K");
    }
    if (!(params.rician_kappa >= 0.0)) {
        throw ConfigError("synthesize_channels: kappa must be >= 0");
    }
    geometry.validate();

    Rng rng(params.seed);
    const auto [w_los, w_scatter] = rician_weights(params.rician_kappa);
    const Vec3& bs = geometry.bs_position;
    const Vec3& ris = geometry.ris_position;

    ChannelSet ch;

    const double amp_rb = amplitude_from_db(pathloss_db(LinkKind::LOS, distance(ris, bs), params.pathloss));
    const CVector a_m = steering_vector(m, azimuth(bs, ris), params.element_spacing);
    const CVector a_n = steering_vector(n, azimuth(ris, bs), params.element_spacing);
    ch.h_r = amp_rb * (w_los * (a_m * a_n.transpose()) + w_scatter * complex_gaussian(m, n, rng));

    ch.h_u.resize(n, k);
    ch.h_d.resize(m, k);
    for (int u = 0; u < k; ++u) {
        const Vec3& pos = users[static_cast<std::size_t>(u)];
        const double amp_ur = amplitude_from_db(pathloss_db(LinkKind::LOS, distance(pos, ris), params.pathloss));
        const CVector a_k = steering_vector(n, azimuth(ris, pos), params.element_spacing);
        ch.h_u.col(u) = amp_ur * (w_los * a_k + w_scatter * complex_gaussian(n, 1, rng));
    }
    for (int u = 0; u < k; ++u) {
        const Vec3& pos = users[static_cast<std::size_t>(u)];
        const double amp_ub = amplitude_from_db(pathloss_db(LinkKind::NLOS, distance(pos, bs), params.pathloss));
        ch.h_d.col(u) = amp_ub * complex_gaussian(m, 1, rng);
    }
    return ch;
}

ChannelSet synthesize_channels(const Geometry& geometry, std::span<const User> users,
                               const ChannelParams& params, int m, int n)
{
    std::vector<Vec3> positions;
    positions.reserve(users.size());
    for (const auto& u : users) {
        positions.push_back(u.position);
    }
    return synthesize_channels(geometry, positions, params, m, n);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags)
{
    std::vector<std::uint32_t> words;
    words.reserve(2 * (tags.size() + 1));
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(master);
    for (auto t : tags) {
        push(t);
    }
    std::seed_seq seq(words.begin(), words.end());
    std::uint32_t out[2];
    seq.generate(std::begin(out), std::end(out));
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

} // namespace risemf
