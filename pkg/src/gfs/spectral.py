"""FFT spectral differentiation on the standard interval [-pi, pi].

Nodes 0..N-1 are used (the node-N value equals node 0 by periodicity);
wavenumbers are the integers -ceil(N/2)+1..floor(N/2). For even N and odd
derivative order the Nyquist mode's contribution is zeroed, the standard
choice for real signals.
"""

from __future__ import annotations

import numpy as np


def spectral_derivative_periodic(values, order=1):
    """Derivative of a periodic signal sampled at nodes 0..N of [-pi, pi].

    ``values`` has length N+1 with values[N] the periodic copy of
    values[0]; the returned array has the same layout.
    """
    values = np.asarray(values, dtype=float)
    N = values.size - 1
    u = values[:N]
    k = np.fft.fftfreq(N, d=1.0 / N)
    mult = (1j * k) ** order
    if N % 2 == 0 and order % 2 == 1:
        mult[N // 2] = 0.0
    du = np.fft.ifft(np.fft.fft(u) * mult).real
    return np.concatenate([du, du[:1]])
