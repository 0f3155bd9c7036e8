#!/usr/bin/env python3
"""How a binary symmetric channel degrades a quantizer's operating point.

Walks one operating point through increasingly noisy channels, showing the
slide toward the uninformative center (1/2, 1/2), the strictly shrinking
divergence, and the convex-hull view of randomized quantizers.
"""

import numpy as np

from secquant import (
    BscChannel,
    OperatingPoint,
    bsc_transform,
    kl_divergence,
    mix_quantizers,
)

point = OperatingPoint(0.2, 0.85)
print(f"sensor operating point: (pfa, pd) = ({point.pfa}, {point.pd})")
print(f"sensor divergence:      {kl_divergence(point):.6f} nats\n")

print("crossover   received point          divergence   share of original")
for rho in (0.0, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49):
    seen = bsc_transform(point, BscChannel(rho))
    d = kl_divergence(seen)
    print(
        f"  {rho:4.2f}     ({seen.pfa:.4f}, {seen.pd:.4f})      "
        f"{d:9.6f}      {d / kl_divergence(point):6.1%}"
    )

print("\nevery transformed point stays on the straight line toward (0.5, 0.5):")
for rho in (0.1, 0.3):
    seen = bsc_transform(point, BscChannel(rho))
    cross = (seen.pfa - point.pfa) * (0.5 - point.pd) - (
        seen.pd - point.pd
    ) * (0.5 - point.pfa)
    print(f"  rho = {rho}: collinearity residual = {cross:.2e}")

print("\ntime-sharing two quantizers reaches hull points between them,")
print("but never beats the better endpoint through any fixed channel:")
a = OperatingPoint(0.05, 0.55)
b = OperatingPoint(0.4, 0.95)
rng = np.random.default_rng(1)
channel = BscChannel(0.1)
for weight in (0.25, 0.5, 0.75):
    mixed = mix_quantizers([a, b], [weight, 1.0 - weight])
    d_mixed = kl_divergence(bsc_transform(mixed, channel))
    d_best = max(
        kl_divergence(bsc_transform(a, channel)),
        kl_divergence(bsc_transform(b, channel)),
    )
    print(
        f"  weight {weight:.2f}: mixed point ({mixed.pfa:.3f}, {mixed.pd:.3f}), "
        f"divergence {d_mixed:.4f} <= best endpoint {d_best:.4f}"
    )
