#include "circnet/activation.hpp"

namespace circnet {

void activation_forward(Activation act, Matrix& m) {
  if (act == Activation::identity) return;
  for (auto& v : m.data()) {
    if (v < 0.0) v = 0.0;
  }
}

void activation_backward(Activation act, const Matrix& preact, Matrix& upstream) {
  if (act == Activation::identity) return;
  if (!preact.same_shape(upstream)) {
    raise(ErrorKind::shape, "activation_backward: preact/upstream shape mismatch");
  }
  const auto& p = preact.data();
  auto& u = upstream.data();
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (p[i] <= 0.0) u[i] = 0.0;
  }
}

const char* activation_name(Activation act) {
  return act == Activation::relu ? "relu" : "identity";
}

}  // namespace circnet
