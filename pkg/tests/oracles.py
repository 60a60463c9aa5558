"""Independent oracles and input generators shared by the test modules."""

import numpy as np
from mpmath import mp, mpc, mpf

from thetaring import PeriodMatrix


def theta_direct(period, a1, a2, b1=0.0, b2=0.0, l=1, s=2, box=30, dps=30):
    """Extended-precision direct lattice sum over |m|, |n| <= box.

    Deliberately shares nothing with the package evaluator: no argument
    reduction, no truncation logic, mpmath arithmetic throughout.
    """
    with mp.workdps(dps):
        t1, t2, t3 = mpc(period.tau1), mpc(period.tau2), mpc(period.tau3)
        weight = 2 * s * l
        total = mpc(0)
        for m in range(-box, box + 1):
            u = m + mpf(a1) / (2 * s * l) + mpf(b1) / 2
            for n in range(-box, box + 1):
                v = n + mpf(a2) / (2 * s * l) + mpf(b2) / 2
                q = t1 * u * u + t2 * v * v + 2 * t3 * u * v
                total += mp.exp(1j * mp.pi * weight * q)
        return complex(total)


def theta_line(tau, offset, weight, box=60):
    """One-variable comparison sum: sum_m exp(i*pi*weight*tau*(m+offset)^2)."""
    m = np.arange(-box, box + 1, dtype=float)
    return complex(np.sum(np.exp(1j * np.pi * weight * tau * (m + offset) ** 2)))


def random_period(rng, im_low=0.6, im_high=1.6) -> PeriodMatrix:
    """A period with a healthy positive-definiteness margin."""
    i1, i2 = rng.uniform(im_low, im_high, 2)
    r1, r2, r3 = rng.uniform(-0.3, 0.3, 3)
    i3 = rng.uniform(-0.35, 0.35) * np.sqrt(i1 * i2)
    return PeriodMatrix(complex(r1, i1), complex(r2, i2), complex(r3, i3))
