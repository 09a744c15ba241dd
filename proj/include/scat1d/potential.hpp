#ifndef SCAT1D_POTENTIAL_HPP
#define SCAT1D_POTENTIAL_HPP

#include <stdexcept>
#include <variant>
#include <vector>

namespace scat1d {

/// V(x) = strength * delta(x - position)
struct DeltaPotential {
    double strength = 0.0;
    double position = 0.0;
};

struct DeltaSite {
    double strength = 0.0;
    double position = 0.0;
};

/// Finite set of delta potentials at strictly increasing positions.
struct DeltaComb {
    std::vector<DeltaSite> sites;

    void validate() const {
        if (sites.empty())
            throw std::invalid_argument("DeltaComb: at least one site required");
        for (std::size_t j = 1; j < sites.size(); ++j)
            if (!(sites[j].position > sites[j - 1].position))
                throw std::invalid_argument("DeltaComb: positions must be strictly increasing");
    }
};

/// V(x) = height on [0, width], zero elsewhere. Negative height is a well.
struct SquareBarrier {
    double height = 0.0;
    double width = 1.0;

    void validate() const {
        if (!(width > 0.0))
            throw std::invalid_argument("SquareBarrier: width must be positive");
    }
};

using PotentialSpec = std::variant<DeltaPotential, DeltaComb, SquareBarrier>;

} // namespace scat1d

#endif
