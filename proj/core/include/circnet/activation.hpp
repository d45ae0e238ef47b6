#ifndef CIRCNET_ACTIVATION_HPP
#define CIRCNET_ACTIVATION_HPP

#include <cstdint>

#include "circnet/matrix.hpp"

namespace circnet {

enum class Activation : std::uint8_t { relu = 0, identity = 1 };

/// Elementwise nonlinearity, in place. relu(x) = max(0, x).
void activation_forward(Activation act, Matrix& m);

/// upstream *= phi'(preact), elementwise. relu'(0) is taken as 0.
void activation_backward(Activation act, const Matrix& preact, Matrix& upstream);

const char* activation_name(Activation act);

}  // namespace circnet

#endif  // CIRCNET_ACTIVATION_HPP
