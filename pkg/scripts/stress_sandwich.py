"""Factor many generated matrices and report the tightest margins of the
residual-block sandwich  max(|F11|, |F12|) <= Delta(L) <= 2 max(|F11|, |F12|).

    python3 scripts/stress_sandwich.py [--trials 2000] [--seed 0]
"""

import argparse
import sys

import numpy as np

from symplt.errors import SympltError
from symplt.factor import factor_w1, factor_w2
from symplt.generators import RngStream, gener_symp2, perturbed_symplectic, random_spectrum_symplectic


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    lower_gap = upper_gap = np.inf
    count = failed = 0
    for k in range(args.trials):
        n = int(rng.integers(1, 30))
        stream = RngStream((args.seed, k))
        kind = k % 3
        if kind == 0:
            a = gener_symp2(n, rng.uniform(0, 3), stream)
        elif kind == 1:
            a = random_spectrum_symplectic(n, stream)
        else:
            a = perturbed_symplectic(n, rng.uniform(0, 3), 10 ** rng.uniform(-8, 0), stream)
        for algo in (factor_w1, factor_w2):
            try:
                r = algo(a).residual
            except SympltError:
                failed += 1
                continue
            count += 1
            m = max(r.f11_norm, r.f12_norm)
            scale = 1.0 + r.delta_l
            lower_gap = min(lower_gap, (r.delta_l - m) / scale)
            upper_gap = min(upper_gap, (2 * m - r.delta_l) / scale)
    print(f"factorizations={count} breakdowns={failed}")
    print(f"min (Delta - max F) / (1 + Delta)   = {lower_gap:.3e}")
    print(f"min (2 max F - Delta) / (1 + Delta) = {upper_gap:.3e}")
    return 0 if min(lower_gap, upper_gap) >= -1e-12 else 1


if __name__ == "__main__":
    sys.exit(main())
