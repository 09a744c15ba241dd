#ifndef SCAT1D_CONFIG_HPP
#define SCAT1D_CONFIG_HPP

#include <string>
#include <string_view>
#include <vector>

#include "scat1d/born.hpp"
#include "scat1d/potential.hpp"

namespace scat1d {

enum class GridSpacing { linear, log };
enum class Acceleration { none, shanks, pade };

struct RunConfig {
    PotentialSpec potential;
    double mass = 1.0;
    struct {
        double e_min = 0.0;
        double e_max = 0.0;
        int n_points = 1;
        GridSpacing spacing = GridSpacing::linear;
        bool allow_evanescent = false;
    } grid;
    struct {
        int max_order = 16;
        Acceleration acceleration = Acceleration::none;
    } series;
    struct {
        bool paper_sign = false;
    } convention;
    std::string output; // empty = standard output
};

/// Parses the flat `key = value` config format (one pair per line, `#`
/// comments). Unknown or duplicate keys raise parse_error with the line
/// number; invariant violations raise validation_error naming the field.
RunConfig parse_config(std::string_view text);

/// Energy grid per the config: linear or log spaced in E, n_points values.
std::vector<double> energy_grid(const RunConfig& cfg);

} // namespace scat1d

#endif
