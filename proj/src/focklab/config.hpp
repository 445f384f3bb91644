#pragma once

#include <string>

#include "focklab/potentials.hpp"

namespace focklab::config {

// Potential description, JSON:
//   {"kind": "radial", "c": 0.5, "radial_coeffs": [[1, 1.0], [2, 0.25]],
//    "spectators": [[re, im, c_j], ...]}
//   {"kind": "hermitian", "c": 0, "hermitian_coeffs": [[i, j, re, im], ...]}
// radial_coeffs pairs are (m, q_m) for q_m r^{2m}. Hermitian mirror terms
// may be omitted. Malformed input throws DomainError.
potentials::MacroscopicPotential parse_potential(const std::string& json_text);

// A homogeneous hermitian description read directly as V_0 = Q_0 - 2c log|z|,
// holomorphic part included.
potentials::MicroscopicPotential parse_microscopic(const std::string& json_text);

std::string to_json(const potentials::MacroscopicPotential& q);

}  // namespace focklab::config
